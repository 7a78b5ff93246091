"""Declarative scenario runner.

A JSON config names a list of scenarios, each pairing a domain mesh, a
sphere map, and a weight profile with one command:

    Conditions  coefficient inequality table (no mesh needed)
    Solve       projected gradient descent to a critical map
    Index       conformal index bound, optional full Hessian
    Stress      stress tensor classification and pointwise margins
    Identity    canonical-field battery on the round 2-sphere
    Verify      stress positivity vs. index bound consistency

Reports are written as <name>.report.json (floats fixed at 12 significant
digits, keys sorted, no timing fields) plus a summary.csv index with wall
times.  Identical configs therefore produce byte-identical JSON.  Exit
status: 0 when every scenario passes or reports an unmet hypothesis, 1 on
any failure, 2 on config errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .identity_maps import (canonical_fields, q_identity_conformal_closed,
                            q_identity_discrete, stability_bound_check,
                            yano_check)
from .meshes import build_domain, cauchy_schwarz_check, tangent_noise
from .profiles import Condition, FProfile, check_condition
from .spheremaps import identity_map, make_map
from .stress import (diagonalization_check, pointwise_inequality6,
                     stress_tensor, verify_theorem1)
from .variation import (NoConvergenceError, conformal_index_bound,
                        energy_gradient, full_hessian_index, solve_f_harmonic)

__all__ = ["ConfigError", "RunReport", "Scenario", "main", "parse_config",
           "run", "write_reports"]

COMMANDS = ("Conditions", "Solve", "Index", "Stress", "Identity", "Verify")
DOMAIN_KINDS = ("RoundSphere2", "FlatTorus2")
MAP_KINDS = ("IdentityS2", "Equatorial", "CliffordTorus", "Custom")
PROFILE_KINDS = ("Linear", "PNorm", "ExpAffine", "SqrtShift")
CONDITION_KINDS = ("StabilityIdentity", "IndexIdentity", "Homothetic")
NAME_PATTERN = re.compile(r"^[A-Za-z0-9._-]+$")
DEFAULT_MAX_ITER = 500
DEFAULT_SIZE_CAP = 2000
FLOAT_DIGITS = 12


class ConfigError(ValueError):
    """Invalid scenario configuration; message names the offending field."""


@dataclass(frozen=True)
class Tolerances:
    tol_residual: float = 1e-3
    tol_eig: float | None = None
    tol_rel: float = 0.05


@dataclass(frozen=True)
class Scenario:
    name: str
    command: str
    tolerances: Tolerances
    config: dict = field(repr=False)

    @property
    def domain_spec(self):
        return self.config.get("domain")

    @property
    def map_spec(self):
        return self.config.get("map")

    @property
    def profile_spec(self):
        return self.config.get("profile")

    @property
    def params(self) -> dict:
        return self.config.get("params", {})

    @property
    def expect(self) -> dict:
        return self.config.get("expect", {})


@dataclass
class RunReport:
    scenario: Scenario
    status: str
    payload: dict
    metrics: dict
    key_metric: object
    wall_time_ms: float


# ---------------------------------------------------------------------------
# config parsing / validation
# ---------------------------------------------------------------------------

def _check_keys(obj: dict, path: str, required: set, optional: set) -> None:
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected an object")
    unknown = sorted(set(obj) - required - optional)
    if unknown:
        raise ConfigError(f"{path}: unknown key(s) {', '.join(unknown)}")
    missing = sorted(required - set(obj))
    if missing:
        raise ConfigError(f"{path}: missing required key(s) {', '.join(missing)}")


def _check_number(value, path: str, positive: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number")
    if positive and value <= 0:
        raise ConfigError(f"{path}: must be positive")
    return float(value)


def _check_int(value, path: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}: expected an integer")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{path}: must be >= {minimum}")
    return value


def _validate_domain(spec, path: str) -> None:
    _check_keys(spec, path, {"kind", "resolution"}, set())
    if spec["kind"] not in DOMAIN_KINDS:
        raise ConfigError(f"{path}.kind: unknown domain kind {spec['kind']!r}")
    _check_int(spec["resolution"], f"{path}.resolution", minimum=0)


def _validate_map(spec, path: str) -> None:
    _check_keys(spec, path, {"kind"}, {"parameters", "perturbation"})
    if spec["kind"] not in MAP_KINDS:
        raise ConfigError(f"{path}.kind: unknown map kind {spec['kind']!r}")
    if "parameters" in spec and not isinstance(spec["parameters"], dict):
        raise ConfigError(f"{path}.parameters: expected an object")
    if "perturbation" in spec:
        pert = spec["perturbation"]
        _check_keys(pert, f"{path}.perturbation", {"seed", "amplitude"}, set())
        _check_int(pert["seed"], f"{path}.perturbation.seed")
        _check_number(pert["amplitude"], f"{path}.perturbation.amplitude",
                      positive=True)


def _validate_profile(spec, path: str) -> FProfile:
    _check_keys(spec, path, {"kind"}, {"parameters"})
    if spec["kind"] not in PROFILE_KINDS:
        raise ConfigError(f"{path}.kind: unknown profile kind {spec['kind']!r}")
    try:
        return FProfile.from_config(spec["kind"], spec.get("parameters", {}))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _build_condition(cfg, path: str) -> Condition:
    kind = cfg["kind"]
    try:
        if kind == "StabilityIdentity":
            return Condition.stability_identity(cfg["m"])
        if kind == "IndexIdentity":
            return Condition.index_identity(cfg["m"])
        return Condition.homothetic(cfg["m"], cfg["t"])
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _validate_checks(scenario_cfg, path: str) -> None:
    params = scenario_cfg.get("params")
    if not isinstance(params, dict) or "checks" not in params:
        raise ConfigError(f"{path}.params.checks: required for Conditions")
    checks = params["checks"]
    if not isinstance(checks, list) or not checks:
        raise ConfigError(f"{path}.params.checks: expected a nonempty array")
    for i, cfg in enumerate(checks):
        cpath = f"{path}.params.checks[{i}]"
        _check_keys(cfg, cpath, {"kind", "m"}, {"t", "profile"})
        if cfg["kind"] not in CONDITION_KINDS:
            raise ConfigError(f"{cpath}.kind: unknown condition kind {cfg['kind']!r}")
        _check_int(cfg["m"], f"{cpath}.m", minimum=2)
        if cfg["kind"] == "Homothetic":
            if "t" not in cfg:
                raise ConfigError(f"{cpath}.t: required for Homothetic")
            _check_number(cfg["t"], f"{cpath}.t", positive=True)
        elif "t" in cfg:
            raise ConfigError(f"{cpath}.t: only valid for Homothetic")
        if "profile" in cfg:
            _validate_profile(cfg["profile"], f"{cpath}.profile")
        elif "profile" not in scenario_cfg:
            raise ConfigError(
                f"{cpath}: no profile given and the scenario declares none")
        _build_condition(cfg, cpath)


_PARAM_KEYS = {
    "Conditions": {"checks"},
    "Solve": {"max_iter"},
    "Index": {"full_hessian", "size_cap"},
    "Stress": set(),
    "Identity": {"random_fields", "seed"},
    "Verify": set(),
}


def _validate_scenario(cfg, path: str) -> Scenario:
    _check_keys(cfg, path, {"name", "command"},
                {"domain", "map", "profile", "tolerances", "params", "expect"})
    name = cfg["name"]
    if not isinstance(name, str) or not NAME_PATTERN.match(name):
        raise ConfigError(
            f"{path}.name: must match {NAME_PATTERN.pattern} (used as a filename)")
    command = cfg["command"]
    if command not in COMMANDS:
        raise ConfigError(f"{path}.command: unknown command {command!r}")

    tol_cfg = cfg.get("tolerances", {})
    _check_keys(tol_cfg, f"{path}.tolerances", set(),
                {"tol_residual", "tol_eig", "tol_rel"})
    tol_kwargs = {}
    for key in ("tol_residual", "tol_rel"):
        if key in tol_cfg:
            tol_kwargs[key] = _check_number(tol_cfg[key],
                                            f"{path}.tolerances.{key}",
                                            positive=True)
    if "tol_eig" in tol_cfg and tol_cfg["tol_eig"] is not None:
        tol_kwargs["tol_eig"] = _check_number(tol_cfg["tol_eig"],
                                              f"{path}.tolerances.tol_eig",
                                              positive=True)
    tolerances = Tolerances(**tol_kwargs)

    if "domain" in cfg:
        _validate_domain(cfg["domain"], f"{path}.domain")
    if "map" in cfg:
        _validate_map(cfg["map"], f"{path}.map")
    if "profile" in cfg:
        _validate_profile(cfg["profile"], f"{path}.profile")

    needs_geometry = command in ("Solve", "Index", "Stress", "Verify")
    if needs_geometry:
        for key in ("domain", "map", "profile"):
            if key not in cfg:
                raise ConfigError(f"{path}.{key}: required for {command}")
    if command == "Identity":
        if "domain" not in cfg or "profile" not in cfg:
            raise ConfigError(f"{path}: Identity needs domain and profile")
        if cfg["domain"]["kind"] != "RoundSphere2":
            raise ConfigError(f"{path}.domain.kind: Identity runs on RoundSphere2")
        if "map" in cfg and cfg["map"]["kind"] != "IdentityS2":
            raise ConfigError(f"{path}.map.kind: Identity uses the identity map")
    if command == "Conditions":
        _validate_checks(cfg, path)

    params = cfg.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError(f"{path}.params: expected an object")
    unknown = sorted(set(params) - _PARAM_KEYS[command])
    if unknown:
        raise ConfigError(
            f"{path}.params: key(s) {', '.join(unknown)} not valid for {command}")
    if "max_iter" in params:
        _check_int(params["max_iter"], f"{path}.params.max_iter", minimum=0)
    if "size_cap" in params:
        _check_int(params["size_cap"], f"{path}.params.size_cap", minimum=1)
    if "full_hessian" in params and not isinstance(params["full_hessian"], bool):
        raise ConfigError(f"{path}.params.full_hessian: expected a boolean")
    if "random_fields" in params:
        _check_int(params["random_fields"], f"{path}.params.random_fields",
                   minimum=0)
    if "seed" in params:
        _check_int(params["seed"], f"{path}.params.seed")

    expect = cfg.get("expect", {})
    if not isinstance(expect, dict):
        raise ConfigError(f"{path}.expect: expected an object")

    return Scenario(name=name, command=command, tolerances=tolerances,
                    config=cfg)


def parse_config(text: str) -> list[Scenario]:
    """Parse and validate a scenario config; unknown keys are rejected."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    _check_keys(data, "top level", {"scenarios"}, set())
    if not isinstance(data["scenarios"], list):
        raise ConfigError("scenarios: expected an array")
    scenarios = [_validate_scenario(cfg, f"scenarios[{i}]")
                 for i, cfg in enumerate(data["scenarios"])]
    seen: set[str] = set()
    for i, scn in enumerate(scenarios):
        if scn.name in seen:
            raise ConfigError(f"scenarios[{i}].name: duplicate name {scn.name!r}")
        seen.add(scn.name)
    return scenarios


# ---------------------------------------------------------------------------
# command execution
# ---------------------------------------------------------------------------

def _build_geometry(scenario: Scenario):
    dom = scenario.domain_spec
    mesh = build_domain(dom["kind"], dom["resolution"])
    mp = scenario.map_spec
    sphere_map = make_map(mesh, mp["kind"], mp.get("parameters"),
                          mp.get("perturbation"))
    profile = FProfile.from_config(scenario.profile_spec["kind"],
                                   scenario.profile_spec.get("parameters", {}))
    return mesh, sphere_map, profile


def _scenario_profile(scenario: Scenario) -> FProfile:
    spec = scenario.profile_spec
    return FProfile.from_config(spec["kind"], spec.get("parameters", {}))


def _cmd_conditions(scenario: Scenario):
    rows = []
    for i, cfg in enumerate(scenario.params["checks"]):
        spec = cfg.get("profile", scenario.profile_spec)
        profile = FProfile.from_config(spec["kind"], spec.get("parameters", {}))
        cond = _build_condition(cfg, f"checks[{i}]")
        result = check_condition(profile, cond)
        row = {"kind": cfg["kind"], "m": cond.m, "value": result.value,
               "holds": result.holds, "profile": spec}
        if cond.t is not None:
            row["t"] = cond.t
        rows.append(row)
    holds = [row["holds"] for row in rows]
    payload = {"checks": rows}
    metrics = {"holds": holds, "values": [row["value"] for row in rows]}
    key_metric = f"{sum(holds)}/{len(holds)} hold"
    return payload, metrics, key_metric, "Pass"


def _cmd_solve(scenario: Scenario):
    mesh, start, profile = _build_geometry(scenario)
    max_iter = scenario.params.get("max_iter", DEFAULT_MAX_ITER)
    result = solve_f_harmonic(mesh, start, profile,
                              tol=scenario.tolerances.tol_residual,
                              max_iter=max_iter)
    history = result.energy_history
    monotone = bool(np.all(np.diff(history) <= 0.0)) if len(history) > 1 else True
    payload = {
        "iterations": result.iterations,
        "final_residual": result.final_residual,
        "energy_start": history[0],
        "energy_final": history[-1],
        "energy_monotone": monotone,
        "energy_history": history,
    }
    metrics = {"converged": True, "iterations": result.iterations,
               "final_residual": result.final_residual,
               "energy_monotone": monotone}
    return payload, metrics, result.final_residual, "Pass"


def _cmd_index(scenario: Scenario):
    mesh, sphere_map, profile = _build_geometry(scenario)
    report = conformal_index_bound(mesh, sphere_map, profile,
                                   scenario.tolerances.tol_eig)
    payload = {"conformal": report.to_dict()}
    metrics = {"negative_count": report.negative_count}
    if scenario.params.get("full_hessian", False):
        full = full_hessian_index(
            mesh, sphere_map, profile, scenario.tolerances.tol_eig,
            size_cap=scenario.params.get("size_cap", DEFAULT_SIZE_CAP))
        payload["full"] = {
            "basis_size": len(full.basis),
            "eigenvalues": [float(x) for x in full.eigenvalues],
            "negative_count": full.negative_count,
            "tol_eig": full.tol_eig,
            "residual_sup": full.residual_sup,
        }
        metrics["full_negative_count"] = full.negative_count
    return payload, metrics, report.negative_count, "Pass"


def _cmd_stress(scenario: Scenario):
    mesh, sphere_map, profile = _build_geometry(scenario)
    report = stress_tensor(mesh, sphere_map, profile)
    dim = sphere_map.ambient_dim
    margins = {}
    for a in range(dim):
        vec = np.zeros(dim)
        vec[a] = 1.0
        margins[f"e{a}"] = float(np.min(
            pointwise_inequality6(mesh, sphere_map, profile, vec)))
    global_margin = min(margins.values())
    payload = {
        "stress": report.to_dict(),
        "inequality_margin_min": margins,
        "inequality_margin_global": global_margin,
        "diagonalization_max_dev": diagonalization_check(mesh, sphere_map,
                                                         profile),
    }
    metrics = {"classification": report.classification,
               "global_min": report.global_min,
               "inequality_margin_global": global_margin}
    return payload, metrics, report.global_min, "Pass"


def _cmd_identity(scenario: Scenario):
    dom = scenario.domain_spec
    mesh = build_domain(dom["kind"], dom["resolution"])
    profile = _scenario_profile(scenario)
    sphere_map = identity_map(mesh)
    fields = canonical_fields(2).sample(mesh.vertices)
    count = scenario.params.get("random_fields", 0)
    seed = scenario.params.get("seed", 0)
    for i in range(count):
        fields[f"random_{i}"] = tangent_noise(mesh, seed=seed + i, amplitude=1.0)

    per_field = {}
    for label, x in fields.items():
        lhs, rhs, rel = yano_check(mesh, x)
        per_field[label] = {
            "q": q_identity_discrete(mesh, profile, x),
            "yano_lhs": lhs,
            "yano_rhs": rhs,
            "yano_rel_err": rel,
            "stability_margin": stability_bound_check(mesh, profile, x),
            "cauchy_schwarz_min": float(np.min(cauchy_schwarz_check(mesh, x))),
        }
    max_rel = max(row["yano_rel_err"] for row in per_field.values())
    min_margin = min(row["stability_margin"] for row in per_field.values())
    payload = {
        "fields": per_field,
        "closed_form_value": q_identity_conformal_closed(2, profile),
        "closed_form_coefficient": q_identity_conformal_closed(
            2, profile, normalize=True),
        "residual_sup": energy_gradient(mesh, sphere_map, profile).sup_norm,
    }
    metrics = {"max_yano_rel_err": max_rel, "min_stability_margin": min_margin}
    return payload, metrics, max_rel, "Pass"


def _cmd_verify(scenario: Scenario):
    mesh, sphere_map, profile = _build_geometry(scenario)
    out = verify_theorem1(mesh, sphere_map, profile,
                          tol_eig=scenario.tolerances.tol_eig,
                          tol_residual=scenario.tolerances.tol_residual)
    payload = {
        "stress": out["stress"].to_dict(),
        "index": out["index"].to_dict(),
        "residual_sup": out["residual_sup"],
        "critical": out["critical"],
        "hypothesis_met": out["hypothesis_met"],
        "required_count": out["required_count"],
        "theorem_consistent": out["theorem_consistent"],
    }
    metrics = {
        "theorem_consistent": out["theorem_consistent"],
        "hypothesis_met": out["hypothesis_met"],
        "critical": out["critical"],
        "classification": out["stress"].classification,
        "negative_count": out["index"].negative_count,
    }
    if not out["theorem_consistent"]:
        status = "Fail"
    elif not out["hypothesis_met"]:
        status = "HypothesisNotMet"
    else:
        status = "Pass"
    return payload, metrics, out["index"].negative_count, status


_RUNNERS = {
    "Conditions": _cmd_conditions,
    "Solve": _cmd_solve,
    "Index": _cmd_index,
    "Stress": _cmd_stress,
    "Identity": _cmd_identity,
    "Verify": _cmd_verify,
}


def _check_expect(expect: dict, metrics: dict, tol_rel: float) -> list[str]:
    failures = []
    for key, want in expect.items():
        if key.endswith("_min") and key[:-4] in metrics and key not in metrics:
            actual = metrics[key[:-4]]
            if not actual >= want:
                failures.append(f"{key}: wanted >= {want!r}, got {actual!r}")
            continue
        if key not in metrics:
            failures.append(f"{key}: not produced by this command "
                            f"(have {sorted(metrics)})")
            continue
        actual = metrics[key]
        if isinstance(want, float) and isinstance(actual, (int, float)) \
                and not isinstance(actual, bool):
            if abs(actual - want) > tol_rel * max(1.0, abs(want)):
                failures.append(f"{key}: wanted {want!r} +- {tol_rel:g} rel, "
                                f"got {actual!r}")
        elif actual != want:
            failures.append(f"{key}: wanted {want!r}, got {actual!r}")
    return failures


def run(scenarios: list[Scenario]) -> list[RunReport]:
    """Execute scenarios in config order; module errors become Fail reports."""
    reports = []
    for scenario in scenarios:
        start = time.perf_counter()
        try:
            payload, metrics, key_metric, status = _RUNNERS[scenario.command](
                scenario)
        except NoConvergenceError as exc:
            payload = {"error": str(exc), "error_type": "NoConvergence",
                       "residual_sup": exc.residual_sup,
                       "iterations": exc.iterations}
            metrics, key_metric, status = {"converged": False}, "error", "Fail"
        except Exception as exc:  # noqa: BLE001 - reported, not swallowed
            payload = {"error": str(exc), "error_type": type(exc).__name__}
            metrics, key_metric, status = {}, "error", "Fail"
        failures = _check_expect(scenario.expect, metrics,
                                 scenario.tolerances.tol_rel)
        if failures:
            payload = dict(payload)
            payload["expect_failures"] = failures
            status = "Fail"
        wall_ms = (time.perf_counter() - start) * 1e3
        reports.append(RunReport(scenario=scenario, status=status,
                                 payload=payload, metrics=metrics,
                                 key_metric=key_metric, wall_time_ms=wall_ms))
    return reports


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def round_floats(obj):
    """Copy a JSON-ready structure with floats fixed at 12 significant digits."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return float(f"{obj:.{FLOAT_DIGITS}g}")
    if isinstance(obj, np.generic):
        return round_floats(obj.item())
    if isinstance(obj, np.ndarray):
        return round_floats(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def report_json(report: RunReport) -> str:
    doc = {
        "name": report.scenario.name,
        "command": report.scenario.command,
        "scenario": report.scenario.config,
        "status": report.status,
        "payload": report.payload,
    }
    return json.dumps(round_floats(doc), sort_keys=True, indent=2) + "\n"


def _format_metric(value) -> str:
    if isinstance(value, float):
        return f"{value:.{FLOAT_DIGITS}g}"
    return str(value)


def summary_csv(reports: list[RunReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["name", "command", "status", "key_metric", "wall_time_ms"])
    for report in reports:
        writer.writerow([report.scenario.name, report.scenario.command,
                         report.status, _format_metric(report.key_metric),
                         f"{report.wall_time_ms:.3f}"])
    return buf.getvalue()


def write_reports(reports: list[RunReport], out_dir: str) -> None:
    os.makedirs(out_dir, exist_ok=True)
    for report in reports:
        path = os.path.join(out_dir, f"{report.scenario.name}.report.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(report_json(report))
    with open(os.path.join(out_dir, "summary.csv"), "w", encoding="utf-8",
              newline="") as fh:
        fh.write(summary_csv(reports))


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="fharmonic",
        description="Run weighted-energy verification scenarios from a JSON config.")
    parser.add_argument("--config", required=True, help="path to the JSON config")
    parser.add_argument("--out", help="directory for report files")
    parser.add_argument("--format", choices=("json", "csv"), default="json",
                        help="stdout summary format")
    parser.add_argument("--list", action="store_true",
                        help="print scenario names and exit")
    parser.add_argument("--only", help="run a single scenario by name")
    args = parser.parse_args(argv)

    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            scenarios = parse_config(fh.read())
        if args.only is not None:
            matches = [s for s in scenarios if s.name == args.only]
            if not matches:
                raise ConfigError(f"--only: no scenario named {args.only!r}")
            scenarios = matches
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    if args.list:
        for scenario in scenarios:
            print(scenario.name)
        return 0

    reports = run(scenarios)
    if args.out:
        write_reports(reports, args.out)

    if args.format == "csv":
        sys.stdout.write(summary_csv(reports))
    else:
        summary = [{"name": r.scenario.name, "command": r.scenario.command,
                    "status": r.status,
                    "key_metric": round_floats(r.key_metric)}
                   for r in reports]
        print(json.dumps(summary, indent=2, sort_keys=True))

    ok = all(r.status in ("Pass", "HypothesisNotMet") for r in reports)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
