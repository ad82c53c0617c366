"""Command-line front end.

Every command prints (or writes with ``--output``) one JSON report and exits
with 0 on pass, 1 on a failed check or exhausted budget, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import analytic, hecke, inner_products, jacobi, kernels
from .arith import is_prime
from .exact import cusp_eigenform, hecke_eigenvalue
from .report import NumericReport, combine, outcome, timer, write_atomic


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = 0


# ---------------------------------------------------------------- commands


def run_verify_hecke(cfg: RunConfig) -> NumericReport:
    subs = {name: hecke.verify_identity(name) for name in hecke.IDENTITIES}
    return combine("verify hecke", {"seed": cfg.seed}, subs)


def run_verify_mp(cfg: RunConfig) -> NumericReport:
    n = int(cfg.params.get("points", 100))
    subs = inner_products.mp_suite(n, cfg.seed)
    return combine("verify mp", {"points": n, "seed": cfg.seed}, subs)


def _build_lift(k: int, dmax: int):
    phi = jacobi.jacobi_cusp_basis(k, dmax)
    return phi, jacobi.sk_lift(phi, dmax)


def run_construct_sk(cfg: RunConfig) -> NumericReport:
    k = int(cfg.params["k"])
    dmax = int(cfg.params["dmax"])
    if k not in (10, 12):
        raise UsageError("--k must be 10 or 12")
    if not 1 <= dmax <= 400:
        raise UsageError("--dmax must lie in [1, 400]")
    with timer() as t:
        phi, table = _build_lift(k, dmax)
        maass = jacobi.maass_check(table)
    table_path = cfg.params.get("table")
    details: dict[str, Any] = {
        "jacobi_coefficients": {str(D): phi.c(D) for D in range(0, min(dmax, 40) + 1) if D % 4 in (0, 3)},
        "entries": len(table),
        "maass": maass.details,
    }
    if table_path:
        write_atomic(table_path, json.dumps(table.to_json(), sort_keys=True))
        details["table_path"] = table_path
    else:
        details["table"] = table.to_json()
    return NumericReport(
        command="construct sk",
        inputs={"k": k, "dmax": dmax, "seed": cfg.seed},
        outcome=maass.outcome,
        details=details,
        max_deviation=0.0 if maass.passed else None,
        runtime_ms=t["ms"],
    )


def _load_table(path: str) -> jacobi.SiegelCoeffTable:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read table {path}: {exc}") from exc
    if "entries" not in data and "details" in data:
        data = data["details"].get("table", data)
    try:
        return jacobi.SiegelCoeffTable.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed table {path}: {exc}") from exc


def run_check_maass(cfg: RunConfig) -> NumericReport:
    table = _load_table(cfg.params["input"])
    rep = jacobi.maass_check(table)
    rep.inputs = {**rep.inputs, "input": cfg.params["input"], "seed": cfg.seed}
    return rep


def run_check_characterization(cfg: RunConfig) -> NumericReport:
    p = int(cfg.params["p"])
    k = int(cfg.params["k"])
    if not is_prime(p):
        raise UsageError("--p must be prime")
    if k < 2:
        raise UsageError("--k must be at least 2")
    subs = {
        "symbolic": jacobi.characterization_check(jacobi.spinor_coeffs(None, p, k)),
        "degenerate_lam_f_zero": jacobi.characterization_check(jacobi.spinor_coeffs(0, p, k)),
    }
    if k in (10, 12):
        subs["eigenvalue_chain"] = _eigenvalue_chain(p, k)
    rep = combine("check characterization", {"p": p, "k": k, "seed": cfg.seed}, subs)
    return rep


def _eigenvalue_chain(p: int, k: int) -> NumericReport:
    """lambda_F(p) from the elliptic eigenvalue against T(p) applied to the lift."""
    with timer() as t:
        f = cusp_eigenform(2 * k - 2, max(32, p + 1))
        lam_f = hecke_eigenvalue(f, p)
        spinor = jacobi.spinor_coeffs(int(lam_f), p, k).lam_F[1].evaluate({})
        phi = jacobi.jacobi_cusp_basis(k, max(40, 4 * p * p + 8))
        lifted = jacobi.lift_hecke_eigenvalue(phi, p)
        jac = jacobi.jacobi_hecke_eigenvalue(phi, p)
    ok = spinor == lifted and jac == lam_f
    return NumericReport(
        command="check characterization eigenvalue_chain",
        inputs={"p": p, "k": k},
        outcome=outcome(ok),
        details={
            "elliptic_eigenvalue": lam_f,
            "jacobi_eigenvalue": jac,
            "lambda_F_from_spinor": spinor,
            "lambda_F_from_lift": lifted,
        },
        max_deviation=float(abs(Fraction(spinor) - Fraction(lifted))),
        runtime_ms=t["ms"],
    )


def _load_grid(path: str) -> dict:
    try:
        with open(path) as fh:
            grid = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read grid {path}: {exc}") from exc
    if not isinstance(grid, dict):
        raise UsageError("grid must be a JSON object")
    return grid


def _need(grid: dict, *keys: str) -> None:
    missing = [k for k in keys if k not in grid]
    if missing:
        raise UsageError(f"grid lacks {', '.join(missing)}")


def run_scan(cfg: RunConfig) -> NumericReport:
    kind = cfg.params["kind"]
    grid = _load_grid(cfg.params["grid"])
    with timer() as t:
        if kind == "theta":
            _need(grid, "u_range", "v_range", "steps")
            res = analytic.varth_scan(grid)
            ok = res["max_value"] < float("inf")
        elif kind == "bergman":
            _need(grid, "u_range", "v_range", "steps")
            k, N = int(grid.get("k", 12)), int(grid.get("N", 1))
            res = kernels.bergman_scan(k, N, grid)
            doubled = kernels.bergman_scan(k, N, grid, cutoff_scale=2.0)
            drift = abs(doubled["max_value"] - res["max_value"]) / abs(res["max_value"])
            res["doubled_cutoff_max_value"] = doubled["max_value"]
            res["relative_drift"] = drift
            ok = drift <= 0.01
        elif kind == "poincare":
            res = kernels.poincare_scan(grid)
            res["envelope_decays"] = kernels.envelope_decays(res["levels"], res["envelope"])
            ok = res["envelope_decays"]
        else:
            raise UsageError(f"unknown scan {kind!r}")
    payload = {"op": f"scan {kind}", "grid": grid, **res, "runtime_ms": t["ms"]}
    return NumericReport(
        command=f"scan {kind}",
        inputs={"grid": grid, "seed": cfg.seed},
        outcome=outcome(ok),
        details=payload,
        max_deviation=res.get("relative_drift"),
        runtime_ms=t["ms"],
    )


def run_count(cfg: RunConfig) -> NumericReport:
    u, v = cfg.params["tau"]
    m, N, delta = int(cfg.params["m"]), int(cfg.params["N"]), float(cfg.params["delta"])
    try:
        q = analytic.CountQuery(analytic.UpperHalfPoint(u, v), m, N, delta)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    inputs = {"tau": [u, v], "m": m, "N": N, "delta": delta, "seed": cfg.seed}
    with timer() as t:
        try:
            count = analytic.count_C(q, budget=int(cfg.params.get("budget", analytic.BUDGET)))
        except analytic.BudgetError as exc:
            return NumericReport("count", inputs, "fail", {"reason": str(exc)}, None, 0)
    shape = analytic.count_bound_shape(m, N, delta)
    checks = {"vanishes_below_two": count == 0 if delta < 2 else True}
    return NumericReport(
        command="count",
        inputs=inputs,
        outcome=outcome(all(checks.values())),
        details={"count": count, "bound_shape": shape, "ratio": count / shape, "checks": checks},
        max_deviation=None,
        runtime_ms=t["ms"],
    )


# ---------------------------------------------------------------- argument parsing


def _tau(text: str) -> tuple[float, float]:
    try:
        u, v = (float(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected u,v") from exc
    if v <= 0:
        raise argparse.ArgumentTypeError("v must be positive")
    return u, v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--no-timing", action="store_true", help="zero runtime fields for byte-stable reports")

    ap = argparse.ArgumentParser(prog="sklab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[common])
    verify.add_argument("suite", choices=["hecke", "mp"])
    verify.add_argument("--points", type=int, default=100)

    construct = sub.add_parser("construct", parents=[common])
    construct.add_argument("what", choices=["sk"])
    construct.add_argument("--k", type=int, required=True)
    construct.add_argument("--dmax", type=int, default=200)
    construct.add_argument("--table", help="write the coefficient table here")

    check = sub.add_parser("check", parents=[common])
    check.add_argument("what", choices=["maass", "characterization"])
    check.add_argument("--input")
    check.add_argument("--p", type=int)
    check.add_argument("--k", type=int)

    scan = sub.add_parser("scan", parents=[common])
    scan.add_argument("kind", choices=["theta", "bergman", "poincare"])
    scan.add_argument("--grid", required=True)

    count = sub.add_parser("count", parents=[common])
    count.add_argument("--tau", type=_tau, required=True)
    count.add_argument("--m", type=int, required=True)
    count.add_argument("--N", type=int, required=True)
    count.add_argument("--delta", type=float, required=True)
    count.add_argument("--budget", type=int, default=analytic.BUDGET)
    return ap


def config_from_args(ns: argparse.Namespace) -> tuple[RunConfig, Callable[[RunConfig], NumericReport]]:
    skip = {"command", "output", "seed", "no_timing"}
    params = {k: v for k, v in vars(ns).items() if k not in skip and v is not None}
    if ns.command == "verify":
        handler = run_verify_hecke if ns.suite == "hecke" else run_verify_mp
        return RunConfig(f"verify {ns.suite}", params, ns.seed), handler
    if ns.command == "construct":
        return RunConfig("construct sk", params, ns.seed), run_construct_sk
    if ns.command == "check":
        if ns.what == "maass":
            if not ns.input:
                raise UsageError("check maass needs --input")
            return RunConfig("check maass", params, ns.seed), run_check_maass
        if ns.p is None or ns.k is None:
            raise UsageError("check characterization needs --p and --k")
        return RunConfig("check characterization", params, ns.seed), run_check_characterization
    if ns.command == "scan":
        return RunConfig(f"scan {ns.kind}", params, ns.seed), run_scan
    return RunConfig("count", params, ns.seed), run_count


def run(cfg: RunConfig, handler: Callable[[RunConfig], NumericReport]) -> NumericReport:
    return handler(cfg)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg, handler = config_from_args(ns)
        report = run(cfg, handler)
    except UsageError as exc:
        print(f"sklab: error: {exc}", file=sys.stderr)
        return 2
    text = report.to_json(timing=not ns.no_timing)
    if ns.no_timing and isinstance(report.details, dict) and "runtime_ms" in report.details:
        data = json.loads(text)
        data["details"]["runtime_ms"] = 0
        text = json.dumps(data, sort_keys=True, indent=2)
    if ns.output:
        write_atomic(ns.output, text)
    else:
        print(text)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
