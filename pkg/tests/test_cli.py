import json
import os

import numpy as np
import pytest

import riskboost as rb
from riskboost.cli import main, parse_thresholds_file

from conftest import dataset_path
from oracles import pairwise_c_index


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write(tmp_path, text, name):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


@pytest.fixture
def tiny_binary_csv(tmp_path):
    rows = ["x,extra,y"]
    rng = np.random.default_rng(0)
    for i in range(24):
        x = rng.uniform(-2.0, 2.0)
        rows.append(f"{x!r},{rng.uniform()!r},{1 if x >= 0 else 0}")
    return write(tmp_path, "\n".join(rows) + "\n", "tiny.csv")


class TestTrain:
    def test_toy_train_writes_model_and_prints_table(self, tmp_path, capsys):
        data = write(tmp_path, "x,y\n1,1.0\n2,2.0\n3,4.0\n4,7.0\n", "toy.csv")
        out = str(tmp_path / "model.json")
        code, stdout, _ = run(
            capsys, "train", "--data", data, "--objective", "squared_error",
            "--target", "y", "--n-iter", "1", "--lr", "1.0", "--n-quantiles", "2",
            "--out", out,
        )
        assert code == 0
        assert "Intercept" in stdout
        card = rb.load_scorecard(out)
        assert rb.count_rules(card) <= 1  # at most d rules after one iteration
        assert os.path.exists(str(tmp_path / "model.ensemble.json"))

    def test_same_seed_is_byte_identical(self, tmp_path, capsys):
        out_a = str(tmp_path / "a.json")
        out_b = str(tmp_path / "b.json")
        argv = [
            "train", "--data", dataset_path("event_binary.csv"), "--objective", "logistic",
            "--target", "outcome", "--n-iter", "60", "--subsample", "0.7", "--seed", "5",
        ]
        assert main(argv + ["--out", out_a]) == 0
        assert main(argv + ["--out", out_b]) == 0
        capsys.readouterr()
        assert open(out_a, "rb").read() == open(out_b, "rb").read()
        assert (
            open(str(tmp_path / "a.ensemble.json"), "rb").read()
            == open(str(tmp_path / "b.ensemble.json"), "rb").read()
        )

    def test_survival_schema_requires_event(self, tmp_path, capsys):
        data = write(tmp_path, "x,t\n1,1.0\n2,2.0\n", "s.csv")
        code, _, err = run(
            capsys, "train", "--data", data, "--objective", "survival",
            "--time", "t", "--out", str(tmp_path / "m.json"),
        )
        assert code == 1
        assert err.startswith("error [data]")

    def test_missing_target_column_is_user_error(self, tmp_path, capsys):
        data = write(tmp_path, "x,y\n1,2\n", "d.csv")
        code, _, err = run(
            capsys, "train", "--data", data, "--objective", "squared_error",
            "--target", "zz", "--out", str(tmp_path / "m.json"),
        )
        assert code == 1
        assert "error [data]" in err
        assert "'zz'" in err

    def test_unknown_flag_exits_one(self, capsys):
        code = main(["train", "--nope"])
        capsys.readouterr()
        assert code == 1


class TestPredict:
    def test_intercept_only_model_gives_constant(self, tmp_path, capsys):
        data = write(tmp_path, "x,y\n1,2.0\n2,4.0\n", "toy.csv")
        model = str(tmp_path / "m.json")
        run(capsys, "train", "--data", data, "--objective", "squared_error",
            "--target", "y", "--n-iter", "0", "--out", model)
        code, stdout, _ = run(capsys, "predict", "--model", model, "--data", data)
        assert code == 0
        lines = stdout.strip().splitlines()
        assert lines[0] == "prediction"
        assert lines[1] == lines[2] == repr(3.0)

    def test_predictions_match_library(self, tmp_path, capsys):
        model = str(tmp_path / "m.json")
        data = dataset_path("event_binary.csv")
        run(capsys, "train", "--data", data, "--objective", "logistic",
            "--target", "outcome", "--n-iter", "40", "--out", model)
        out_csv = str(tmp_path / "p.csv")
        code, _, _ = run(capsys, "predict", "--model", model, "--data", data, "--out", out_csv)
        assert code == 0
        header, *rows = open(out_csv, encoding="utf-8").read().strip().splitlines()
        assert header == "score,probability"
        got = np.array([[float(v) for v in line.split(",")] for line in rows])
        ds = rb.load_csv(data, rb.OutcomeSchema("binary", target="outcome"))
        card = rb.load_scorecard(model)
        want = rb.predict_scorecard(card, ds.features, columns=ds.feature_names)
        np.testing.assert_array_equal(got[:, 0], want)
        np.testing.assert_array_equal(got[:, 1], rb.to_probability(card, want))

    def test_missing_column_is_named(self, tmp_path, capsys):
        data = write(tmp_path, "x,y\n1,2.0\n5,4.0\n", "toy.csv")
        model = str(tmp_path / "m.json")
        run(capsys, "train", "--data", data, "--objective", "squared_error",
            "--target", "y", "--n-iter", "2", "--out", model)
        bad = write(tmp_path, "z\n1\n", "bad.csv")
        code, _, err = run(capsys, "predict", "--model", model, "--data", bad)
        assert code == 1
        assert "'x'" in err


class TestPrint:
    def test_print_matches_train_output(self, tmp_path, capsys):
        model = str(tmp_path / "m.json")
        code, train_out, _ = run(
            capsys, "train", "--data", dataset_path("severity_regression.csv"),
            "--objective", "squared_error", "--target", "severity",
            "--n-iter", "50", "--out", model,
        )
        assert code == 0
        code, print_out, _ = run(capsys, "print", "--model", model)
        assert code == 0
        assert print_out == train_out

    def test_decimals_and_labels_flags(self, tmp_path, capsys):
        data = write(tmp_path, "smoking,y\n0,0\n0,0\n1,1\n1,1\n0,0\n1,1\n", "b.csv")
        model = str(tmp_path / "m.json")
        run(capsys, "train", "--data", data, "--objective", "logistic",
            "--target", "y", "--n-iter", "20", "--lr", "0.5", "--out", model)
        code, out, _ = run(capsys, "print", "--model", model, "--decimals", "3",
                           "--labels", "smoking=FALSE/TRUE")
        assert code == 0
        label_line = next(l for l in out.splitlines() if "smoking" in l)
        assert "| FALSE" in label_line and "| TRUE" in label_line
        assert any(".000" in l for l in out.splitlines())  # three decimals applied


class TestEval:
    def test_perfect_separation_auc(self, tmp_path, capsys, tiny_binary_csv):
        model = str(tmp_path / "m.json")
        cuts = write(tmp_path, "x: 0\n", "cuts.txt")  # split exactly at the class boundary
        run(capsys, "train", "--data", tiny_binary_csv, "--objective", "logistic",
            "--target", "y", "--n-iter", "60", "--lr", "0.5",
            "--thresholds", cuts, "--thresholds-only", "--out", model)
        code, out, _ = run(capsys, "eval", "--model", model, "--data", tiny_binary_csv,
                           "--target", "y")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "metric,value,n_samples,rule_count"
        metric, value, n, rules = lines[1].split(",")
        assert metric == "auc"
        assert float(value) == 1.0
        assert int(n) == 24

    def test_training_mse_beats_intercept_only(self, tmp_path, capsys):
        data = dataset_path("severity_regression.csv")
        ds = rb.load_csv(data, rb.OutcomeSchema("continuous", target="severity"))
        baseline = rb.mse(ds.outcome.values, np.full(ds.n_samples, ds.outcome.values.mean()))
        model = str(tmp_path / "m.json")
        run(capsys, "train", "--data", data, "--objective", "squared_error",
            "--target", "severity", "--n-iter", "150", "--out", model)
        code, out, _ = run(capsys, "eval", "--model", model, "--data", data,
                           "--target", "severity")
        value = float(out.strip().splitlines()[1].split(",")[1])
        assert code == 0
        assert value < baseline

    def test_survival_c_index_matches_oracle(self, tmp_path, capsys):
        data = dataset_path("followup_survival.csv")
        model = str(tmp_path / "m.json")
        run(capsys, "train", "--data", data, "--objective", "survival",
            "--time", "time", "--event", "event", "--n-iter", "80", "--out", model)
        code, out, _ = run(capsys, "eval", "--model", model, "--data", data,
                           "--time", "time", "--event", "event")
        value = float(out.strip().splitlines()[1].split(",")[1])
        ds = rb.load_csv(data, rb.OutcomeSchema("survival", time="time", event="event"))
        card = rb.load_scorecard(model)
        scores = rb.predict_scorecard(card, ds.features, columns=ds.feature_names)
        assert value == pairwise_c_index(ds.outcome.times, ds.outcome.events, scores)


class TestBench:
    def test_repeats_one_composes_train_and_eval(self, capsys, tmp_path):
        data = dataset_path("event_binary.csv")
        code, out, _ = run(
            capsys, "bench", "--data", data, "--objective", "logistic",
            "--target", "outcome", "--n-iter", "30", "--repeats", "1", "--seed", "3",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "repeat,seed,metric,value,n_test,rule_count"
        _, seed, metric, value, n_test, rules = lines[1].split(",")

        # reproduce by hand: split, train on the train part, eval on the test part
        ds = rb.load_csv(data, rb.OutcomeSchema("binary", target="outcome"))
        train_set, test_set = rb.split(ds, (0.7, 0.3), seed=3)
        plan = rb.quantile_thresholds(train_set, 4)
        ens = rb.fit(train_set, plan, rb.FitConfig(n_iter=30, seed=3))
        card = rb.aggregate(ens)
        scores = rb.predict_scorecard(card, test_set.features, columns=test_set.feature_names)
        assert float(value) == rb.auc(test_set.outcome.labels, scores)
        assert int(n_test) == test_set.n_samples
        assert int(rules) == rb.count_rules(card)

    def test_fixed_seed_reproduces_summary(self, capsys):
        argv = [
            "bench", "--data", dataset_path("severity_regression.csv"),
            "--objective", "squared_error", "--target", "severity",
            "--n-iter", "20", "--repeats", "5", "--seed", "11",
        ]
        code_a, out_a, _ = run(capsys, *argv)
        code_b, out_b, _ = run(capsys, *argv)
        assert code_a == code_b == 0
        assert out_a == out_b
        assert out_a.strip().splitlines()[-1].startswith("# summary:")

    def test_mean_rules_bounded_by_plan(self, capsys):
        data = dataset_path("event_binary.csv")
        code, out, _ = run(
            capsys, "bench", "--data", data, "--objective", "logistic",
            "--target", "outcome", "--n-iter", "25", "--repeats", "3",
        )
        assert code == 0
        ds = rb.load_csv(data, rb.OutcomeSchema("binary", target="outcome"))
        max_candidates = rb.quantile_thresholds(ds, 4).n_candidates
        rule_counts = [int(line.split(",")[5]) for line in out.strip().splitlines()[1:4]]
        assert all(r <= max_candidates for r in rule_counts)


class TestThresholdsFile:
    def test_parse_with_comments_and_blanks(self, tmp_path):
        path = write(
            tmp_path,
            "# clinically meaningful bands\n\nbmi: 25, 30\nage: 70, 50 , 60\n",
            "cuts.txt",
        )
        spec = parse_thresholds_file(path)
        assert spec == {"bmi": [25.0, 30.0], "age": [70.0, 50.0, 60.0]}

    def test_bad_line_is_rejected(self, tmp_path, capsys):
        path = write(tmp_path, "bmi 25 30\n", "cuts.txt")
        data = write(tmp_path, "bmi,y\n20,1.0\n30,2.0\n", "d.csv")
        code, _, err = run(
            capsys, "train", "--data", data, "--objective", "squared_error",
            "--target", "y", "--thresholds", path, "--out", str(tmp_path / "m.json"),
        )
        assert code == 1
        assert "expected" in err

    def test_thresholds_used_in_model(self, tmp_path, capsys):
        data = dataset_path("event_binary.csv")
        cuts = write(tmp_path, "bmi: 25, 30\n", "cuts.txt")
        model = str(tmp_path / "m.json")
        code, _, _ = run(
            capsys, "train", "--data", data, "--objective", "logistic",
            "--target", "outcome", "--n-iter", "80", "--thresholds", cuts,
            "--thresholds-only", "--out", model,
        )
        assert code == 0
        card = rb.load_scorecard(model)
        assert len(card.tables) == 1  # only bmi can be split on
        assert card.tables[0].feature_name == "bmi"
        assert set(card.tables[0].cutoffs.tolist()) <= {25.0, 30.0}

    def test_merge_by_default(self, tmp_path, capsys):
        data = dataset_path("event_binary.csv")
        cuts = write(tmp_path, "bmi: 25, 30\n", "cuts.txt")
        model = str(tmp_path / "m.json")
        run(capsys, "train", "--data", data, "--objective", "logistic",
            "--target", "outcome", "--n-iter", "80", "--thresholds", cuts,
            "--out", model)
        doc = json.load(open(model, encoding="utf-8"))
        features = {t["feature"] for t in doc["tables"]}
        assert "bmi" in features
        assert len(features) > 1  # quantile cutoffs filled the other features
