"""Command-line front end.

Three subcommands cover the toolkit: ``design`` sizes a trial from
planning assumptions, ``analyze`` runs the weighted one-sample log-rank
test on a subject CSV, and ``simulate`` estimates operating
characteristics (single scenarios or the bundled presets).

Configs are flat key-value YAML files; unknown keys are rejected before
any computation. Every run emits a report envelope that echoes the fully
resolved config, so rerunning from the echo reproduces the payload
exactly.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys
from datetime import datetime, timezone
from typing import Any

import numpy as np
import yaml

from . import __version__
from .analysis import TrialDataset, run_test
from .design import (
    DesignSpec,
    WeightPolicy,
    sample_size,
    solve_accrual_length,
    suggest_policy,
)
from .errors import (
    ConfigError,
    DataValidationError,
    InfeasibleDesignError,
    NumericalError,
    SingleArmError,
)
from .models import (
    CensoringModel,
    DropoutModel,
    Exponential,
    ExponentialDropout,
    NoDropout,
    PowerAccrual,
    SurvivalModel,
    UniformAccrual,
    Weibull,
    dropout_from_yearly_rate,
    hazard_ratio_alternative,
)
from .presets import (
    BENCHMARK_HAZARD_RATIOS,
    BENCHMARK_MEDIANS,
    BENCHMARK_POLICIES,
    BENCHMARK_SHAPES,
    PBC_POLICIES,
    SWEEP_SAMPLE_SIZES,
    SWEEP_TARGET_RATES,
    SWEEP_WEIGHTS,
    sweep_censoring,
    sweep_truth,
)
from .simulate import ScenarioSpec, run_scenario, scenario_table, weight_sweep

__all__ = [
    "ReportEnvelope",
    "cmd_design",
    "cmd_analyze",
    "cmd_simulate",
    "main",
    "read_subject_csv",
    "write_subject_csv",
]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4
EXIT_INFEASIBLE = 5

_CSV_HEADER = ("entry_time", "time_on_study", "event")
_CSV_HEADER_DROPOUT = _CSV_HEADER + ("dropout",)


@dataclasses.dataclass
class ReportEnvelope:
    """Structured result of one command invocation."""

    tool: str
    version: str
    command: str
    timestamp: str
    config: dict
    results: dict
    warnings: list[str]
    data_path: str | None = None

    def to_dict(self) -> dict:
        return {
            "tool": self.tool,
            "version": self.version,
            "command": self.command,
            "timestamp": self.timestamp,
            "config": self.config,
            "data_path": self.data_path,
            "results": self.results,
            "warnings": list(self.warnings),
        }


def _envelope(command: str, config: dict, results: dict, warnings: list[str], data_path=None) -> ReportEnvelope:
    return ReportEnvelope(
        tool="singlearm",
        version=__version__,
        command=command,
        timestamp=datetime.now(timezone.utc).isoformat(),
        config=config,
        results=results,
        warnings=warnings,
        data_path=data_path,
    )


def _jsonify(obj: Any) -> Any:
    """Convert payload objects to plain JSON-serializable structures."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _jsonify(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if hasattr(obj, "_asdict"):
        return {k: _jsonify(v) for k, v in obj._asdict().items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    return obj


# ---------------------------------------------------------------------------
# config schema


@dataclasses.dataclass(frozen=True)
class _Key:
    type: type
    required: bool = False
    default: Any = None
    choices: tuple | None = None


_MODEL_KEYS = {
    "null_family": _Key(str, required=True, choices=("weibull", "exponential")),
    "null_shape": _Key(float),
    "null_median": _Key(float),
    "null_rate": _Key(float),
}

_DROPOUT_KEYS = {
    "dropout_rate_yearly": _Key(float),
    "dropout_hazard": _Key(float),
}

_DESIGN_SCHEMA = {
    **_MODEL_KEYS,
    "hazard_ratio": _Key(float),
    "alt_family": _Key(str, choices=("weibull", "exponential")),
    "alt_shape": _Key(float),
    "alt_median": _Key(float),
    "alt_rate": _Key(float),
    "follow_up": _Key(float, required=True),
    "accrual_length": _Key(float),
    "accrual_rate": _Key(float),
    "accrual_exponent": _Key(float, default=1.0),
    **_DROPOUT_KEYS,
    "alpha": _Key(float, default=0.05),
    "power": _Key(float, default=0.8),
    "weight_policy": _Key(str, required=True),
    "fixed_weight": _Key(float),
    "sample_size_cap": _Key(int, default=10_000_000),
    "max_accrual_length": _Key(float, default=100.0),
}

_ANALYZE_SCHEMA = {
    **_MODEL_KEYS,
    "analysis_time": _Key(float, required=True),
    "alpha": _Key(float, default=0.05),
    "weight_policy": _Key(str, required=True),
    "fixed_weight": _Key(float),
    "accrual_length": _Key(float),
    "accrual_exponent": _Key(float, default=1.0),
    **_DROPOUT_KEYS,
}

_SIMULATE_SCHEMA = {
    "preset": _Key(str, choices=("figure1", "table2", "pbc")),
    **{k: dataclasses.replace(v, required=False) for k, v in _MODEL_KEYS.items()},
    "truth_family": _Key(str, choices=("weibull", "exponential")),
    "truth_shape": _Key(float),
    "truth_median": _Key(float),
    "truth_rate": _Key(float),
    "hazard_ratio_truth": _Key(float),
    "hazard_ratio": _Key(float),
    "n": _Key(int),
    "policies": _Key(str),
    "follow_up": _Key(float),
    "accrual_length": _Key(float),
    "accrual_exponent": _Key(float, default=1.0),
    **_DROPOUT_KEYS,
    "alpha": _Key(float, default=0.05),
    "power": _Key(float, default=0.8),
    "replications": _Key(int, default=100_000),
    "seed": _Key(int, required=True),
    "include_power": _Key(bool, default=True),
}


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"config file {path} is not valid YAML: {exc}") from None
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError("config must be a flat mapping of keys to scalar values")
    return raw


def _validate_config(raw: dict, schema: dict[str, _Key], command: str) -> dict:
    unknown = sorted(set(raw) - set(schema))
    if unknown:
        raise ConfigError(f"unknown config key for {command}: {unknown[0]!r}")
    out: dict[str, Any] = {}
    for name, key in schema.items():
        if name in raw and raw[name] is not None:
            value = raw[name]
            if isinstance(value, (dict, list)):
                raise ConfigError(f"config key {name!r} must be a scalar")
            if key.type is float:
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    raise ConfigError(f"config key {name!r} must be a number")
                value = float(value)
            elif key.type is int:
                if isinstance(value, bool) or not isinstance(value, int):
                    raise ConfigError(f"config key {name!r} must be an integer")
            elif key.type is bool:
                if not isinstance(value, bool):
                    raise ConfigError(f"config key {name!r} must be a boolean")
            elif key.type is str:
                if not isinstance(value, str):
                    raise ConfigError(f"config key {name!r} must be a string")
                if key.choices and value not in key.choices:
                    raise ConfigError(
                        f"config key {name!r} must be one of {', '.join(key.choices)}"
                    )
            out[name] = value
        elif key.required:
            raise ConfigError(f"missing required config key for {command}: {name!r}")
        elif key.default is not None:
            out[name] = key.default
    return out


# ---------------------------------------------------------------------------
# model builders


def _survival_from(config: dict, prefix: str) -> SurvivalModel:
    family = config.get(f"{prefix}_family")
    if family is None:
        raise ConfigError(f"missing required config key: {prefix}_family")
    shape = config.get(f"{prefix}_shape")
    median = config.get(f"{prefix}_median")
    rate = config.get(f"{prefix}_rate")
    if family == "weibull":
        if shape is None or median is None:
            raise ConfigError(f"{prefix}_family weibull needs {prefix}_shape and {prefix}_median")
        if rate is not None:
            raise ConfigError(f"{prefix}_rate does not apply to the weibull family")
        return Weibull(shape, median)
    if family == "exponential":
        if shape is not None:
            raise ConfigError(f"{prefix}_shape does not apply to the exponential family")
        if (rate is None) == (median is None):
            raise ConfigError(
                f"{prefix}_family exponential needs exactly one of {prefix}_rate and {prefix}_median"
            )
        return Exponential(rate) if rate is not None else Exponential.from_median(median)
    raise ConfigError(f"unknown survival family: {family!r}")


def _dropout_from(config: dict) -> DropoutModel:
    rate = config.get("dropout_rate_yearly")
    hazard = config.get("dropout_hazard")
    if rate is not None and hazard is not None:
        raise ConfigError("give at most one of dropout_rate_yearly and dropout_hazard")
    if hazard is not None:
        return ExponentialDropout(hazard)
    if rate is not None:
        if not 0.0 <= rate < 1.0:
            raise ConfigError("dropout_rate_yearly must lie in [0, 1)")
        return dropout_from_yearly_rate(rate)
    return NoDropout()


def _policy_from(config: dict) -> WeightPolicy:
    kind = config["weight_policy"]
    if kind not in WeightPolicy.KINDS:
        raise ConfigError(
            f"unknown weight_policy {kind!r}; choose from "
            + ", ".join(sorted(WeightPolicy.KINDS))
        )
    fixed = config.get("fixed_weight")
    if kind == "fixed":
        if fixed is None:
            raise ConfigError("weight_policy fixed needs fixed_weight")
        return WeightPolicy.fixed(fixed)
    if fixed is not None:
        raise ConfigError("fixed_weight only applies to weight_policy fixed")
    return WeightPolicy(kind)


def _parse_policy_token(token: str) -> WeightPolicy:
    token = token.strip()
    if token.startswith("fixed:"):
        try:
            return WeightPolicy.fixed(float(token.split(":", 1)[1]))
        except ValueError:
            raise ConfigError(f"bad fixed policy token: {token!r}") from None
    if token in WeightPolicy.KINDS - {"fixed"}:
        return WeightPolicy(token)
    raise ConfigError(f"unknown policy token {token!r}; use e.g. wu or fixed:0.3")


def _accrual_from(length: float, exponent: float):
    if exponent == 1.0:
        return UniformAccrual(length)
    return PowerAccrual(length, exponent)


# ---------------------------------------------------------------------------
# subject CSV


def write_subject_csv(path: str, data: TrialDataset) -> None:
    """Serialize a dataset in the subject CSV schema read by ``analyze``.

    Floats are written with full precision so parse -> write -> parse is
    the identity.
    """
    has_dropout = data.has_dropout_flags
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_CSV_HEADER_DROPOUT if has_dropout else _CSV_HEADER)
        for rec in data.subjects:
            row = [repr(rec.entry_time), repr(rec.time_on_study), int(rec.event)]
            if has_dropout:
                row.append(int(rec.dropout))
            writer.writerow(row)


def read_subject_csv(path: str, analysis_time: float) -> TrialDataset:
    """Parse a subject CSV into a validated dataset."""
    entry, time_on_study, event, dropout = _read_subject_csv(path)
    try:
        return TrialDataset.from_arrays(entry, time_on_study, event, analysis_time, dropout)
    except DataValidationError as exc:
        if exc.record_index is not None:
            raise DataValidationError(f"{path} line {exc.record_index + 2}: {exc}") from None
        raise


def _read_subject_csv(path: str):
    try:
        fh = open(path, "r", encoding="utf-8", newline="")
    except FileNotFoundError:
        raise DataValidationError(f"data file not found: {path}") from None
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataValidationError(f"{path}: file is empty") from None
        header = tuple(h.strip() for h in header)
        if header == _CSV_HEADER:
            has_dropout = False
        elif header == _CSV_HEADER_DROPOUT:
            has_dropout = True
        else:
            raise DataValidationError(
                f"{path}: header must be {','.join(_CSV_HEADER)} optionally followed by dropout"
            )
        entry, time_on_study, event, dropout = [], [], [], []
        expected_cols = 4 if has_dropout else 3
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != expected_cols:
                raise DataValidationError(
                    f"{path} line {line_no}: expected {expected_cols} columns, got {len(row)}"
                )
            try:
                entry.append(float(row[0]))
                time_on_study.append(float(row[1]))
            except ValueError:
                raise DataValidationError(
                    f"{path} line {line_no}: entry_time and time_on_study must be numbers"
                ) from None
            flag = row[2].strip()
            if flag not in ("0", "1"):
                raise DataValidationError(f"{path} line {line_no}: event must be 0 or 1")
            event.append(flag == "1")
            if has_dropout:
                dflag = row[3].strip()
                if dflag not in ("0", "1"):
                    raise DataValidationError(f"{path} line {line_no}: dropout must be 0 or 1")
                dropout.append(dflag == "1")
    if not entry:
        raise DataValidationError(f"{path}: no subject rows")
    return (
        np.array(entry),
        np.array(time_on_study),
        np.array(event, dtype=bool),
        np.array(dropout, dtype=bool) if has_dropout else None,
    )


# ---------------------------------------------------------------------------
# commands


def cmd_design(config: dict) -> ReportEnvelope:
    """Size a trial from planning assumptions."""
    cfg = _validate_config(config, _DESIGN_SCHEMA, "design")
    null = _survival_from(cfg, "null")
    alternative = None
    if cfg.get("alt_family") is not None:
        alternative = _survival_from(cfg, "alt")
    power_target = cfg["power"]
    if not 0.0 < power_target < 1.0:
        raise ConfigError("power must lie in (0, 1)")
    spec = DesignSpec(
        null_model=null,
        follow_up=cfg["follow_up"],
        weight_policy=_policy_from(cfg),
        hazard_ratio=cfg.get("hazard_ratio"),
        alternative=alternative,
        accrual_length=cfg.get("accrual_length"),
        accrual_rate=cfg.get("accrual_rate"),
        accrual_exponent=cfg["accrual_exponent"],
        dropout=_dropout_from(cfg),
        alpha=cfg["alpha"],
        beta=1.0 - power_target,
        sample_size_cap=cfg["sample_size_cap"],
        max_accrual_length=cfg["max_accrual_length"],
    )
    if spec.accrual_length is not None:
        result = sample_size(spec)
    else:
        result = solve_accrual_length(spec)
    advice = suggest_policy(result.expected_event_rate_null)
    payload = {
        "n": result.n,
        "weight": result.weight_used,
        "policy": result.policy.label,
        "accrual_length": result.accrual_length,
        "analysis_time": result.analysis_time,
        "expected_event_rate_null": result.expected_event_rate_null,
        "expected_event_rate_alt": result.expected_event_rate_alt,
        "achieved_power": result.achieved_power,
        "moments": _jsonify(result.moments),
        "advisory": (
            f"expected event rate under the reference law is "
            f"{result.expected_event_rate_null:.1%}; the {advice} policy is "
            "typically closest to nominal in this regime"
        ),
    }
    return _envelope("design", cfg, payload, [])


def cmd_analyze(config: dict, data_path: str) -> ReportEnvelope:
    """Run the weighted one-sample log-rank test on a subject CSV."""
    cfg = _validate_config(config, _ANALYZE_SCHEMA, "analyze")
    null = _survival_from(cfg, "null")
    data = read_subject_csv(data_path, cfg["analysis_time"])
    design_context = None
    if cfg.get("accrual_length") is not None:
        design_context = CensoringModel(
            _accrual_from(cfg["accrual_length"], cfg["accrual_exponent"]),
            _dropout_from(cfg),
            cfg["analysis_time"],
        )
    outcome = run_test(data, null, _policy_from(cfg), cfg["alpha"], design_context)
    warnings = []
    if outcome.weight_fallback:
        warnings.append(
            "random_km found no censoring information; the fallback weight was used"
        )
    return _envelope("analyze", cfg, _jsonify(outcome), warnings, data_path=data_path)


def _simulate_scenario(cfg: dict, workers: int) -> dict:
    null = _survival_from(cfg, "null")
    if cfg.get("truth_family") is not None:
        truth = _survival_from(cfg, "truth")
        if cfg.get("hazard_ratio_truth") is not None:
            raise ConfigError("give either truth_* keys or hazard_ratio_truth, not both")
    elif cfg.get("hazard_ratio_truth") is not None:
        truth = hazard_ratio_alternative(null, cfg["hazard_ratio_truth"])
    else:
        truth = null
    for key in ("n", "policies", "follow_up", "accrual_length"):
        if cfg.get(key) is None:
            raise ConfigError(f"missing required config key for a simulate scenario: {key!r}")
    policies = tuple(_parse_policy_token(tok) for tok in cfg["policies"].split(","))
    censoring = CensoringModel(
        _accrual_from(cfg["accrual_length"], cfg["accrual_exponent"]),
        _dropout_from(cfg),
        cfg["accrual_length"] + cfg["follow_up"],
    )
    planning_alt = None
    if cfg.get("hazard_ratio") is not None:
        planning_alt = hazard_ratio_alternative(null, cfg["hazard_ratio"])
    report = run_scenario(
        ScenarioSpec(
            truth_model=truth,
            null_model=null,
            censoring=censoring,
            n=cfg["n"],
            policies=policies,
            replications=cfg["replications"],
            master_seed=cfg["seed"],
            alpha=cfg["alpha"],
            planning_alternative=planning_alt,
        ),
        workers=workers,
    )
    return _jsonify(report)


def cmd_simulate(config: dict, workers: int = 1) -> ReportEnvelope:
    """Estimate operating characteristics by Monte Carlo."""
    cfg = _validate_config(config, _SIMULATE_SCHEMA, "simulate")
    warnings: list[str] = []
    if cfg["replications"] < 2:
        warnings.append("standard errors are degenerate with fewer than two replications")
    preset = cfg.get("preset")
    if preset == "figure1":
        rows = []
        for idx, target in enumerate(SWEEP_TARGET_RATES):
            truth = sweep_truth(target)
            base = ScenarioSpec(
                truth_model=truth,
                null_model=truth,
                censoring=sweep_censoring(),
                n=SWEEP_SAMPLE_SIZES[0],
                policies=(WeightPolicy.wu(),),
                replications=cfg["replications"],
                master_seed=cfg["seed"] + idx,
                alpha=cfg["alpha"],
            )
            for cell in weight_sweep(base, SWEEP_WEIGHTS, SWEEP_SAMPLE_SIZES, workers=workers):
                rows.append({"target_event_rate": target, **_jsonify(cell)})
        payload = {"rows": rows}
    elif preset == "table2":
        cells = scenario_table(
            BENCHMARK_SHAPES,
            BENCHMARK_MEDIANS,
            BENCHMARK_HAZARD_RATIOS,
            BENCHMARK_POLICIES,
            alpha=cfg["alpha"],
            beta=1.0 - cfg["power"],
            replications=cfg["replications"],
            master_seed=cfg["seed"],
            include_power=cfg["include_power"],
            workers=workers,
        )
        payload = {"rows": [_jsonify(cell) for cell in cells]}
    elif preset == "pbc":
        cells = scenario_table(
            (1.22,),
            (9.0,),
            (1.75,),
            PBC_POLICIES,
            accrual_length=5.0,
            follow_up=3.0,
            alpha=cfg["alpha"],
            beta=1.0 - cfg["power"],
            replications=cfg["replications"],
            master_seed=cfg["seed"],
            include_power=cfg["include_power"],
            workers=workers,
        )
        payload = {"rows": [_jsonify(cell) for cell in cells]}
    else:
        payload = _simulate_scenario(cfg, workers)
    return _envelope("simulate", cfg, payload, warnings)


# ---------------------------------------------------------------------------
# output


def _print_flat(results: dict) -> None:
    for key, value in results.items():
        if isinstance(value, dict):
            for sub, val in value.items():
                print(f"  {key}.{sub}: {val}")
        else:
            print(f"  {key}: {value}")


def _print_envelope(env: ReportEnvelope) -> None:
    print(f"singlearm {env.version} :: {env.command}")
    results = env.results
    rows = results.get("rows") if isinstance(results, dict) else None
    if rows is not None:
        print(f"  {len(rows)} result rows")
        for row in rows[:8]:
            print("  " + ", ".join(f"{k}={v}" for k, v in row.items()))
        if len(rows) > 8:
            print(f"  ... ({len(rows) - 8} more rows; use --out to capture everything)")
    elif isinstance(results, dict) and "policies" in results:
        print(
            f"  n={results.get('n')}, replications={results.get('replications')}, "
            f"seed={results.get('master_seed')}"
        )
        for pol in results["policies"]:
            parts = [f"policy={pol['label']}"]
            if pol.get("weight") is not None:
                parts.append(f"weight={pol['weight']:.4f}")
            parts.append(f"rate_two={pol['rate_two']:.4f}")
            parts.append(f"rate_left={pol['rate_left']:.4f}")
            parts.append(f"rate_right={pol['rate_right']:.4f}")
            if pol["indeterminate"]:
                parts.append(f"indeterminate={pol['indeterminate']}")
            print("  " + ", ".join(parts))
    else:
        _print_flat(results)
    for warning in env.warnings:
        print(f"  warning: {warning}", file=sys.stderr)


def _write_output(env: ReportEnvelope, out_path: str) -> None:
    rows = env.results.get("rows") if isinstance(env.results, dict) else None
    if out_path.endswith(".csv"):
        if rows is None:
            raise ConfigError("CSV output is only available for row-shaped results")
        fieldnames = list(rows[0].keys())
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=fieldnames)
            writer.writeheader()
            writer.writerows(rows)
        return
    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump(env.to_dict(), fh, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singlearm",
        description="Design, analyze, and simulate single-arm survival trials "
        "with weighted one-sample log-rank tests.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="flat YAML config file")
    common.add_argument("--out", help="write the report (JSON, or CSV for row output)")

    sub.add_parser("design", parents=[common], help="compute sample size and weight")

    analyze = sub.add_parser("analyze", parents=[common], help="test a subject-level CSV")
    analyze.add_argument("--data", required=True, help="subject CSV file")

    simulate = sub.add_parser("simulate", parents=[common], help="Monte Carlo operating characteristics")
    simulate.add_argument("--seed", type=int, help="override the config seed")
    simulate.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    simulate.add_argument("--replications", type=int, help="override the config replication count")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        if args.command == "design":
            env = cmd_design(config)
        elif args.command == "analyze":
            env = cmd_analyze(config, args.data)
        else:
            if args.seed is not None:
                config["seed"] = args.seed
            if args.replications is not None:
                config["replications"] = args.replications
            env = cmd_simulate(config, workers=max(1, args.workers))
        _print_envelope(env)
        if args.out:
            _write_output(env, args.out)
            print(f"  report written to {args.out}")
        return EXIT_OK
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except InfeasibleDesignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except SingleArmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
