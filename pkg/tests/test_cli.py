"""End-to-end command-line behavior, exit codes, and report files."""

import csv
import json
import math
import textwrap

import numpy as np
import pytest

from singlearm.analysis import TrialDataset
from singlearm.cli import (
    EXIT_DATA,
    EXIT_INFEASIBLE,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_USAGE,
    cmd_simulate,
    main,
    read_subject_csv,
    write_subject_csv,
)

LOG_TWO = math.log(2.0)

DESIGN_YAML = textwrap.dedent(
    """\
    null_family: weibull
    null_shape: 1.22
    null_median: 9.0
    hazard_ratio: 1.75
    follow_up: 3.0
    accrual_length: 5.0
    weight_policy: uncorrelated_null
    """
)

ANALYZE_YAML = textwrap.dedent(
    """\
    null_family: exponential
    null_median: 9.0
    analysis_time: 8.0
    weight_policy: fixed
    fixed_weight: 0.1923
    """
)

SUBJECT_CSV = textwrap.dedent(
    """\
    entry_time,time_on_study,event
    0.5,7.5,1
    3.5,4.5,1
    1.0,6.0,0
    """
)

SIMULATE_YAML = textwrap.dedent(
    """\
    null_family: exponential
    null_median: 2.0
    n: 40
    policies: wu,compensator
    follow_up: 1.0
    accrual_length: 3.0
    replications: 400
    seed: 7
    """
)


def put(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


class TestDesignCommand:
    def test_case_study(self, tmp_path, capsys):
        cfg = put(tmp_path, "design.yaml", DESIGN_YAML)
        out = str(tmp_path / "report.json")
        assert main(["design", "--config", cfg, "--out", out]) == EXIT_OK
        report = read_json(out)
        assert report["command"] == "design"
        assert report["results"]["n"] == 106
        assert report["results"]["weight"] == pytest.approx(0.1923, abs=1e-3)
        assert report["results"]["analysis_time"] == 8.0
        assert "advisory" in report["results"]
        # defaults are materialized in the config echo
        assert report["config"]["alpha"] == 0.05
        assert report["config"]["power"] == 0.8
        assert "n: 106" in capsys.readouterr().out

    def test_policy_changes_size(self, tmp_path):
        text = DESIGN_YAML.replace("uncorrelated_null", "compensator")
        cfg = put(tmp_path, "design.yaml", text)
        out = str(tmp_path / "report.json")
        assert main(["design", "--config", cfg, "--out", out]) == EXIT_OK
        assert read_json(out)["results"]["n"] == 113

    def test_accrual_rate_solves_length(self, tmp_path):
        text = DESIGN_YAML.replace("accrual_length: 5.0", "accrual_rate: 21.2")
        cfg = put(tmp_path, "design.yaml", text)
        out = str(tmp_path / "report.json")
        assert main(["design", "--config", cfg, "--out", out]) == EXIT_OK
        report = read_json(out)
        assert report["results"]["n"] == 106
        assert 4.9 < report["results"]["accrual_length"] < 5.01

    def test_unknown_key_rejected(self, tmp_path, capsys):
        cfg = put(tmp_path, "design.yaml", DESIGN_YAML + "weight_polcy: wu\n")
        assert main(["design", "--config", cfg]) == EXIT_USAGE
        assert "weight_polcy" in capsys.readouterr().err

    def test_missing_required_key(self, tmp_path, capsys):
        cfg = put(tmp_path, "design.yaml", DESIGN_YAML.replace("follow_up: 3.0\n", ""))
        assert main(["design", "--config", cfg]) == EXIT_USAGE
        assert "follow_up" in capsys.readouterr().err

    def test_conflicting_accrual_keys(self, tmp_path):
        cfg = put(tmp_path, "design.yaml", DESIGN_YAML + "accrual_rate: 10.0\n")
        assert main(["design", "--config", cfg]) == EXIT_USAGE

    def test_identity_hazard_ratio_is_infeasible(self, tmp_path):
        cfg = put(
            tmp_path, "design.yaml", DESIGN_YAML.replace("hazard_ratio: 1.75", "hazard_ratio: 1.0")
        )
        assert main(["design", "--config", cfg]) == EXIT_INFEASIBLE

    def test_missing_config_file(self, tmp_path):
        assert main(["design", "--config", str(tmp_path / "nope.yaml")]) == EXIT_USAGE


class TestAnalyzeCommand:
    def test_three_subject_run(self, tmp_path):
        cfg = put(tmp_path, "analyze.yaml", ANALYZE_YAML)
        data = put(tmp_path, "trial.csv", SUBJECT_CSV)
        out = str(tmp_path / "report.json")
        assert main(["analyze", "--config", cfg, "--data", data, "--out", out]) == EXIT_OK
        report = read_json(out)
        results = report["results"]
        assert results["n"] == 3
        assert results["events"] == 2
        a0 = (7.5 + 4.5 + 6.0) * LOG_TWO / 9.0
        assert results["expected"] == pytest.approx(a0, rel=1e-12)
        z = (2.0 - a0) / math.sqrt(0.1923 * 2.0 + (1.0 - 0.1923) * a0)
        assert results["statistic"] == pytest.approx(z, rel=1e-12)
        assert results["reject_two_sided"] is False
        assert report["data_path"] == data

    def test_row_beyond_horizon_names_the_line(self, tmp_path, capsys):
        bad = SUBJECT_CSV.replace("3.5,4.5,1", "3.5,6.5,1")
        cfg = put(tmp_path, "analyze.yaml", ANALYZE_YAML)
        data = put(tmp_path, "trial.csv", bad)
        assert main(["analyze", "--config", cfg, "--data", data]) == EXIT_DATA
        assert "line 3" in capsys.readouterr().err

    def test_bad_header(self, tmp_path, capsys):
        cfg = put(tmp_path, "analyze.yaml", ANALYZE_YAML)
        data = put(tmp_path, "trial.csv", "entry,time,event\n0,1,1\n")
        assert main(["analyze", "--config", cfg, "--data", data]) == EXIT_DATA
        assert "header" in capsys.readouterr().err

    def test_no_information_is_a_numerical_failure(self, tmp_path):
        cfg = put(tmp_path, "analyze.yaml", ANALYZE_YAML)
        data = put(
            tmp_path, "trial.csv", "entry_time,time_on_study,event\n1.0,0.0,0\n2.0,0.0,0\n"
        )
        assert main(["analyze", "--config", cfg, "--data", data]) == EXIT_NUMERICAL

    def test_random_km_needs_dropout_column(self, tmp_path):
        cfg_text = ANALYZE_YAML.replace("weight_policy: fixed\nfixed_weight: 0.1923\n",
                                        "weight_policy: random_km\n")
        cfg = put(tmp_path, "analyze.yaml", cfg_text)
        data = put(tmp_path, "trial.csv", SUBJECT_CSV)
        assert main(["analyze", "--config", cfg, "--data", data]) == EXIT_USAGE

    def test_random_km_fallback_warns(self, tmp_path, capsys):
        cfg_text = ANALYZE_YAML.replace("weight_policy: fixed\nfixed_weight: 0.1923\n",
                                        "weight_policy: random_km\n")
        cfg = put(tmp_path, "analyze.yaml", cfg_text)
        data = put(
            tmp_path,
            "trial.csv",
            "entry_time,time_on_study,event,dropout\n0.0,2.0,1,0\n0.0,3.0,1,0\n",
        )
        out = str(tmp_path / "report.json")
        assert main(["analyze", "--config", cfg, "--data", data, "--out", out]) == EXIT_OK
        assert "fallback" in capsys.readouterr().err
        report = read_json(out)
        assert report["results"]["weight"] == 0.5
        assert report["results"]["weight_fallback"] is True
        assert report["warnings"]


class TestSimulateCommand:
    def test_scenario_runs_and_prints_policies(self, tmp_path, capsys):
        cfg = put(tmp_path, "sim.yaml", SIMULATE_YAML)
        out = str(tmp_path / "report.json")
        assert main(["simulate", "--config", cfg, "--out", out, "--workers", "1"]) == EXIT_OK
        report = read_json(out)
        labels = [pol["label"] for pol in report["results"]["policies"]]
        assert labels == ["wu", "compensator"]
        assert report["results"]["replications"] == 400
        assert "rate_left" in capsys.readouterr().out

    def test_config_echo_reproduces_results(self, tmp_path):
        cfg = put(tmp_path, "sim.yaml", SIMULATE_YAML)
        out = str(tmp_path / "report.json")
        assert main(["simulate", "--config", cfg, "--out", out, "--workers", "1"]) == EXIT_OK
        report = read_json(out)
        rerun = cmd_simulate(dict(report["config"]))
        assert rerun.results == report["results"]

    def test_flag_overrides(self, tmp_path):
        cfg = put(tmp_path, "sim.yaml", SIMULATE_YAML)
        out = str(tmp_path / "report.json")
        code = main(
            ["simulate", "--config", cfg, "--out", out, "--seed", "99",
             "--replications", "150", "--workers", "1"]
        )
        assert code == EXIT_OK
        report = read_json(out)
        assert report["config"]["seed"] == 99
        assert report["config"]["replications"] == 150
        assert report["results"]["replications"] == 150

    def test_missing_seed_rejected(self, tmp_path):
        cfg = put(tmp_path, "sim.yaml", SIMULATE_YAML.replace("seed: 7\n", ""))
        assert main(["simulate", "--config", cfg, "--workers", "1"]) == EXIT_USAGE

    def test_bad_policy_token(self, tmp_path):
        cfg = put(tmp_path, "sim.yaml", SIMULATE_YAML.replace("wu,compensator", "wu,bogus"))
        assert main(["simulate", "--config", cfg, "--workers", "1"]) == EXIT_USAGE

    def test_fixed_policy_token(self, tmp_path):
        cfg = put(
            tmp_path, "sim.yaml", SIMULATE_YAML.replace("wu,compensator", "fixed:0.3")
        )
        out = str(tmp_path / "report.json")
        assert main(["simulate", "--config", cfg, "--out", out, "--workers", "1"]) == EXIT_OK
        pol = read_json(out)["results"]["policies"][0]
        assert pol["label"] == "fixed(0.3)"
        assert pol["weight"] == 0.3

    def test_preset_rows_to_csv(self, tmp_path):
        cfg = put(
            tmp_path,
            "sim.yaml",
            "preset: pbc\nreplications: 200\nseed: 5\ninclude_power: false\n",
        )
        out = str(tmp_path / "rows.csv")
        assert main(["simulate", "--config", cfg, "--out", out, "--workers", "1"]) == EXIT_OK
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        assert [int(r["n"]) for r in rows] == [113, 76, 95, 106]
        assert [r["policy_label"] for r in rows] == [
            "compensator", "counting", "wu", "uncorrelated_null"
        ]

    def test_csv_output_requires_rows(self, tmp_path):
        cfg = put(tmp_path, "sim.yaml", SIMULATE_YAML)
        out = str(tmp_path / "rows.csv")
        assert main(["simulate", "--config", cfg, "--out", out, "--workers", "1"]) == EXIT_USAGE


class TestSubjectCsvHelpers:
    def test_round_trip_without_dropout(self, tmp_path):
        path = str(tmp_path / "subjects.csv")
        data = TrialDataset.from_arrays(
            np.array([0.5, 3.5, 1.0]),
            np.array([7.5, 4.5, 6.0]),
            np.array([True, True, False]),
            8.0,
        )
        write_subject_csv(path, data)
        again = read_subject_csv(path, 8.0)
        assert again.subjects == data.subjects
        write_subject_csv(str(tmp_path / "b.csv"), again)
        assert (tmp_path / "b.csv").read_text() == (tmp_path / "subjects.csv").read_text()

    def test_round_trip_with_dropout(self, tmp_path):
        path = str(tmp_path / "subjects.csv")
        data = TrialDataset.from_arrays(
            np.array([0.0, 0.25]),
            np.array([1.0 / 3.0, 0.7]),
            np.array([False, True]),
            2.0,
            np.array([True, False]),
        )
        write_subject_csv(path, data)
        again = read_subject_csv(path, 2.0)
        assert again.subjects == data.subjects
        assert again.has_dropout_flags

    def test_line_numbers_survive_helper(self, tmp_path):
        path = put(tmp_path, "bad.csv", SUBJECT_CSV.replace("3.5,4.5,1", "3.5,9.0,1"))
        with pytest.raises(Exception) as excinfo:
            read_subject_csv(path, 8.0)
        assert "line 3" in str(excinfo.value)


class TestArgumentParsing:
    def test_no_arguments(self):
        with pytest.raises(SystemExit) as excinfo:
            main([])
        assert excinfo.value.code == 2

    def test_seed_flag_only_on_simulate(self, tmp_path):
        cfg = put(tmp_path, "design.yaml", DESIGN_YAML)
        with pytest.raises(SystemExit) as excinfo:
            main(["design", "--config", cfg, "--seed", "1"])
        assert excinfo.value.code == 2
