"""Command line front end.

Configuration is flat ``key = value`` text; command-line flags override
config entries.  Reports are JSON with sorted keys, so a fixed plan and seed
reproduce byte-identical output.  Exit codes: 0 success / all properties
pass, 1 a verified property failed, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .eigen import (OptimizerSettings, default_mu_grid, faber_krahn_compare,
                    scan_mu)
from .fields import (DomainMask, Field, Grid, HalfSpace, read_field_csv,
                     superlevel_measure, write_field_csv)
from .kernels import DivergenceError, KernelPair
from .modular import (PairTable, luxemburg, phi_G, phi_MNG,
                      poincare_smallest_constant)
from .rearrange import iterate_polarizations, polarize, schwarz
from .suite import run_acceptance
from .young import YoungFunction

__all__ = ["RunPlan", "RunPlanError", "parse", "execute", "main"]

COMMANDS = ("verify", "modular", "rearrange", "polarize", "eigen",
            "faber-krahn", "kernels")

_CONFIG_KEYS = {
    "young", "p", "q", "kernel", "s", "beta", "grid", "seed", "tol",
    "max-iter", "restarts", "mu", "mu-grid", "quad-tol", "input", "output",
    "omega",
}


class RunPlanError(ValueError):
    """Carries every validation problem found while building a plan."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass
class RunPlan:
    command: str
    young: YoungFunction
    kernel: KernelPair
    grid: Grid
    seed: int = 0
    tol: float = 1e-6
    max_iter: int = 10000
    restarts: int = 8
    mu: float | None = None
    mu_grid: np.ndarray | None = None
    quad_tol: float = 1e-4
    input_path: str | None = None
    out_path: str | None = None
    json_stdout: bool = False
    omega: str | None = None
    halfspace: HalfSpace | None = None
    inject_bad_young: bool = False
    trace_csv: str | None = None


def _parse_config_text(text: str):
    values = {}
    errors = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            errors.append(f"line {lineno}: expected 'key = value', got {raw!r}")
            continue
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            errors.append(f"line {lineno}: unknown key {key!r}")
            continue
        values[key] = val.strip()
    return values, errors


def parse(command: str, config_text: str = "", overrides: dict | None = None) -> RunPlan:
    """Build a validated RunPlan or raise RunPlanError listing every problem."""
    values, errors = _parse_config_text(config_text)
    for k, v in (overrides or {}).items():
        if v is not None:
            values[k] = v
    if command not in COMMANDS:
        errors.append(f"unknown command {command!r}")

    def take(key, conv, default):
        if key not in values:
            return default
        try:
            return conv(values[key])
        except (TypeError, ValueError) as exc:
            errors.append(f"{key}: {exc}")
            return default

    grid_spec = take("grid", str, "1,0.25,16")
    grid = None
    try:
        n_s, h_s, K_s = [p.strip() for p in grid_spec.split(",")]
        grid = Grid(int(n_s), float(h_s), int(K_s))
    except Exception as exc:
        errors.append(f"grid: expected 'n,h,K', got {grid_spec!r} ({exc})")

    young = None
    yname = take("young", str, "power-sum")
    yparams = {}
    if "p" in values:
        yparams["p"] = take("p", float, None)
    if "q" in values:
        yparams["q"] = take("q", float, None)
    try:
        young = YoungFunction.from_name(yname, **{k: v for k, v in yparams.items()
                                                  if v is not None})
    except (TypeError, ValueError) as exc:
        errors.append(f"young: {exc}")

    kernel = None
    kname = take("kernel", str, "fractional")
    s = take("s", float, None)
    beta = take("beta", float, None)
    if grid is not None:
        try:
            # a stand-in Young function keeps kernel validation alive when
            # the configured one failed, so every error is reported at once
            ky = young if young is not None else YoungFunction.power(2.0)
            kernel = KernelPair.from_name(kname, s=s, beta=beta, n=grid.n,
                                          young=ky)
        except (TypeError, ValueError) as exc:
            errors.append(f"kernel: {exc}")

    mu_grid = None
    if "mu-grid" in values:
        try:
            lo_s, hi_s, num_s = values["mu-grid"].split(",")
            mu_grid = np.geomspace(float(lo_s), float(hi_s), int(num_s))
        except Exception as exc:
            errors.append(f"mu-grid: expected 'lo,hi,count' ({exc})")

    if command in ("modular", "rearrange", "polarize") and not values.get("input"):
        errors.append(f"{command}: an input field CSV is required "
                      "(config 'input' or --input)")
    if errors:
        raise RunPlanError(errors)
    return RunPlan(
        command=command, young=young, kernel=kernel, grid=grid,
        seed=take("seed", int, 0),
        tol=take("tol", float, 1e-6),
        max_iter=take("max-iter", int, 10000),
        restarts=take("restarts", int, 8),
        mu=take("mu", float, None),
        mu_grid=mu_grid,
        quad_tol=take("quad-tol", float, 1e-4),
        input_path=values.get("input"),
        out_path=values.get("output"),
        omega=values.get("omega"),
    )


def _parse_omega(spec: str | None, grid: Grid) -> DomainMask:
    """1D: 'a..b' index ranges joined by ';'.  2D: 'a..b,c..d' rectangles.
    Defaults to the centered half of the cells."""
    flat = np.zeros(grid.ncells, dtype=bool)
    signed = grid.signed_indices()
    if spec is None:
        half = grid.half_extent // 2
        inner = np.all((signed >= -half) & (signed <= half - 1), axis=1)
        flat[inner] = True
        return DomainMask(grid, flat.reshape(grid.shape))

    def parse_range(txt):
        lo_s, _, hi_s = txt.partition("..")
        return int(lo_s), int(hi_s if hi_s else lo_s)

    for part in spec.split(";"):
        ranges = [parse_range(p) for p in part.strip().split(",")]
        if len(ranges) != grid.n:
            raise RunPlanError([f"omega: {part!r} has {len(ranges)} ranges, "
                                f"grid is {grid.n}-dimensional"])
        sel = np.ones(grid.ncells, dtype=bool)
        for ax, (lo, hi) in enumerate(ranges):
            sel &= (signed[:, ax] >= lo) & (signed[:, ax] <= hi)
        flat |= sel
    if not flat.any():
        raise RunPlanError([f"omega: {spec!r} selects no cells"])
    return DomainMask(grid, flat.reshape(grid.shape))


def _dump(plan: RunPlan, payload: dict) -> None:
    from .suite import _plain
    text = json.dumps(_plain(payload), sort_keys=True, indent=2)
    if plan.out_path and plan.command not in ("rearrange", "polarize"):
        with open(plan.out_path, "w") as fh:
            fh.write(text + "\n")
    if plan.json_stdout or not plan.out_path:
        print(text)


def _load_input(plan: RunPlan) -> Field:
    u = read_field_csv(plan.input_path)
    if u.grid.n != plan.kernel.n:
        raise RunPlanError([f"input grid is {u.grid.n}-dimensional but the "
                            f"kernel was built for n={plan.kernel.n}"])
    return u


def _poincare_constant(plan: RunPlan, omega: DomainMask) -> float:
    """Smallest geometric-search constant over a seeded random family
    supported in the domain."""
    rng = np.random.default_rng(plan.seed)
    fields = []
    for _ in range(5):
        vals = np.zeros(plan.grid.ncells)
        vals[omega.flat] = rng.uniform(0.2, 1.0, omega.count)
        fields.append(Field(plan.grid, vals.reshape(plan.grid.shape)))
    return poincare_smallest_constant(fields, plan.young, plan.kernel,
                                      start=1e-3, factor=1.1)


def execute(plan: RunPlan) -> int:
    """Run the plan; returns the process exit code."""
    try:
        return _execute(plan)
    except RunPlanError:
        raise
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _execute(plan: RunPlan) -> int:
    if plan.command == "verify":
        extra = None
        if plan.inject_bad_young:
            base = plan.young
            extra = YoungFunction.custom(
                lambda t: 1.1 * base.G(t), lambda t: 1.1 * base.g(t),
                p_minus=base.p_minus, p_plus=base.p_plus, validate=False)
        report = run_acceptance(plan.seed, extra_young=extra)
        for item in report["criteria"]:
            print(f"[{'PASS' if item['passed'] else 'FAIL'}] "
                  f"{item['key']}: {item['title']}")
        if plan.out_path:
            with open(plan.out_path, "w") as fh:
                fh.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
        if plan.json_stdout:
            print(json.dumps(report, sort_keys=True, indent=2))
        return 0 if report["passed"] else 1

    if plan.command == "kernels":
        payload = {"family": plan.kernel.family, "n": plan.kernel.n}
        rep12 = plan.kernel.verify_P1_P2()
        payload["P1_P2"] = rep12.summary()
        try:
            p3 = plan.kernel.check_P3(plan.young.p_minus, plan.quad_tol)
            payload["P3"] = {"inner": p3.inner, "outer": p3.outer}
        except DivergenceError as exc:
            payload["P3"] = {"divergent": True, "reason": str(exc)}
        p4 = plan.kernel.check_P4(plan.young.p_minus)
        payload["P4"] = p4.summary()
        _dump(plan, payload)
        ok = (rep12.passed and "divergent" not in payload["P3"] and p4.decays)
        return 0 if ok else 1

    if plan.command == "modular":
        u = _load_input(plan)
        table = PairTable.for_pair(u.grid, plan.kernel)
        norms = luxemburg(u, plan.young, plan.kernel, table)
        _dump(plan, {
            "phi_G": phi_G(u, plan.young),
            "phi_MNG": phi_MNG(u, plan.young, plan.kernel, table),
            "lg_norm": norms.lg_norm,
            "seminorm": norms.seminorm,
            "full_norm": norms.full_norm,
        })
        return 0

    if plan.command == "rearrange":
        u = _load_input(plan)
        if u.grid.n == 1:
            final, trace = iterate_polarizations(
                u, plan.young, plan.kernel, seed=plan.seed, tol=plan.tol,
                max_iter=plan.max_iter)
            payload = {"mode": "iterated-polarization", **trace.summary(),
                       "steps": [{"halfspace": s.halfspace, "phi": s.phi,
                                  "distance": s.distance}
                                 for s in trace.steps]}
            out_field = final
            ok = trace.converged
        else:
            out_field = schwarz(u)
            table = PairTable.for_pair(u.grid, plan.kernel)
            payload = {"mode": "direct", "converged": True,
                       "phi_before": phi_MNG(u, plan.young, plan.kernel, table),
                       "phi_after": phi_MNG(out_field, plan.young, plan.kernel,
                                            table),
                       "note": "2D modular comparison reported, not asserted"}
            ok = True
        if plan.out_path:
            write_field_csv(out_field, plan.out_path)
        print(json.dumps(payload, sort_keys=True, indent=2))
        return 0 if ok else 1

    if plan.command == "polarize":
        u = _load_input(plan)
        H = plan.halfspace or HalfSpace("axis", 0, 0, 1)
        uh = polarize(u, H)
        table = PairTable.for_pair(u.grid, plan.kernel)
        lams = np.linspace(0.0, float(u.flat.max()) + 1.0, 17)
        payload = {
            "halfspace": H.describe(),
            "phi_before": phi_MNG(u, plan.young, plan.kernel, table),
            "phi_after": phi_MNG(uh, plan.young, plan.kernel, table),
            "equimeasurable": all(
                superlevel_measure(uh, t) == superlevel_measure(u, t)
                for t in lams),
        }
        if plan.out_path:
            write_field_csv(uh, plan.out_path)
        print(json.dumps(payload, sort_keys=True, indent=2))
        return 0

    if plan.command == "eigen":
        omega = _parse_omega(plan.omega, plan.grid)
        mus = (np.array([plan.mu]) if plan.mu is not None
               else plan.mu_grid if plan.mu_grid is not None
               else default_mu_grid())
        settings = OptimizerSettings(max_iter=min(plan.max_iter, 2000),
                                     restarts=plan.restarts, seed=plan.seed)
        result = scan_mu(omega, plan.young, plan.kernel, mus, settings)
        payload = result.summary()
        payload["poincare_constant"] = _poincare_constant(plan, omega)
        _dump(plan, payload)
        return 0

    if plan.command == "faber-krahn":
        omega = _parse_omega(plan.omega, plan.grid)
        mus = plan.mu_grid if plan.mu_grid is not None else default_mu_grid(5)
        settings = OptimizerSettings(max_iter=min(plan.max_iter, 2000),
                                     restarts=plan.restarts, seed=plan.seed)
        report = faber_krahn_compare(omega, plan.young, plan.kernel, mus,
                                     settings)
        _dump(plan, report.summary())
        ok = report.alpha_ok and (report.lambda_ok is not False)
        return 0 if ok else 1

    raise RunPlanError([f"unknown command {plan.command!r}"])


def _build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fracorlicz",
        description="Nonlocal Orlicz modulars, rearrangements and eigenvalues "
                    "on symmetric grids")
    sub = ap.add_subparsers(dest="command", required=True)
    for cmd in COMMANDS:
        p = sub.add_parser(cmd)
        p.add_argument("--config", help="key = value configuration file")
        p.add_argument("--seed", type=int)
        p.add_argument("--out", help="report / output field path")
        p.add_argument("--json", action="store_true",
                       help="print the JSON report to stdout")
        p.add_argument("--grid", help="n,h,K")
        p.add_argument("--young", help="power | power-sum | power-log")
        p.add_argument("--kernel",
                       help="fractional | slobodetskii | besov-log | abs")
        p.add_argument("--s", type=float)
        p.add_argument("--beta", type=float)
        p.add_argument("--p", type=float)
        p.add_argument("--q", type=float)
        p.add_argument("--tol", type=float)
        p.add_argument("--max-iter", type=int)
        p.add_argument("--restarts", type=int)
        p.add_argument("--mu", type=float)
        p.add_argument("--mu-grid", help="lo,hi,count")
        p.add_argument("--quad-tol", type=float)
        p.add_argument("--input", help="input field CSV")
        p.add_argument("--omega", help="cell index ranges, e.g. '-4..3' or "
                                       "'-8..-5;4..7'")
        if cmd == "polarize":
            p.add_argument("--hs-kind", choices=("axis", "diag", "anti"),
                           default="axis")
            p.add_argument("--hs-axis", type=int, default=0)
            p.add_argument("--hs-offset", type=float, default=0.0,
                           help="boundary in units of h (multiple of 1/2)")
            p.add_argument("--hs-side", type=int, choices=(1, -1), default=1)
        if cmd == "verify":
            p.add_argument("--inject-bad-young", action="store_true",
                           help=argparse.SUPPRESS)
    return ap


def main(argv=None) -> int:
    args = _build_argparser().parse_args(argv)
    config_text = ""
    if args.config:
        try:
            with open(args.config) as fh:
                config_text = fh.read()
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    overrides = {
        "seed": None if args.seed is None else str(args.seed),
        "grid": args.grid, "young": args.young, "kernel": args.kernel,
        "tol": None if args.tol is None else repr(args.tol),
        "max-iter": None if args.max_iter is None else str(args.max_iter),
        "restarts": None if args.restarts is None else str(args.restarts),
        "mu": None if args.mu is None else repr(args.mu),
        "mu-grid": args.mu_grid,
        "quad-tol": None if args.quad_tol is None else repr(args.quad_tol),
        "input": args.input, "output": args.out, "omega": args.omega,
        "s": None if args.s is None else repr(args.s),
        "beta": None if args.beta is None else repr(args.beta),
        "p": None if args.p is None else repr(args.p),
        "q": None if args.q is None else repr(args.q),
    }
    try:
        plan = parse(args.command, config_text, overrides)
    except RunPlanError as exc:
        for e in exc.errors:
            print(f"error: {e}", file=sys.stderr)
        return 2
    plan.json_stdout = bool(args.json)
    if args.command == "polarize":
        try:
            plan.halfspace = HalfSpace.axis_aligned(
                args.hs_axis, args.hs_offset, args.hs_side) \
                if args.hs_kind == "axis" else \
                HalfSpace(args.hs_kind, 0, 0, args.hs_side)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    if args.command == "verify":
        plan.inject_bad_young = bool(args.inject_bad_young)
    try:
        return execute(plan)
    except RunPlanError as exc:
        for e in exc.errors:
            print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
