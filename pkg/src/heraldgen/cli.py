"""Command-line front end: sweeps, reference curves, verification and single optimizations.

Settings come from command-line flags, then an optional ``--config`` file of
``key = value`` lines (``#`` starts a comment, keys are the long flag names
with dashes or underscores), then built-in defaults. Angles are radians.

Exit codes: 0 success, 1 failed verification or runtime error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .fock import evolve, permanent, permanent_naive, transition_amplitudes
from .heralding import ALPHA_MAX, HeraldSpec, project_herald
from .interferometer import (
    MeshParameterSet,
    PhaseShift,
    Scheme,
    beam_splitter,
    mesh_unitary,
    transmissivity_angle,
)
from .optimize import (
    ARCHITECTURES,
    CostConfig,
    alternating_optimize_restricted,
    optimize_universal,
    sweep_alpha,
)
from .schemes import (
    COMPACT_HERALD,
    COMPACT_INPUT,
    analytic_p_one_mode,
    best_gate_based_p,
    compact_scheme,
    compact_scheme_outcome,
    cphase_p,
    tau_of_alpha,
)

THREADS_ENV = "HERALDGEN_THREADS"
HERALDS = {"one_mode": HeraldSpec.one_mode, "two_mode": HeraldSpec.two_mode}
SWEEP_HEADER = ("alpha", "probability", "infidelity", "herald", "architecture", "restarts", "seed")
REFERENCE_HEADER = ("alpha", "p_cphase", "p_cz", "p_best", "p_one_mode_analytic")
# values typed as 0.7854 etc. are accepted as pi/4
ALPHA_ROUNDING = 5e-5

DEFAULTS = {
    "arch": "universal",
    "herald": "one_mode",
    "grid": "0:0.7853981633974483:41",
    "alpha": ALPHA_MAX,
    "restarts": 10,
    "seed": 0,
    "mu": None,
    "epsilon": 0.01,
    "layers": None,
    "output": "-",
    "threads": None,
}


class UsageError(Exception):
    pass


# --- value parsing ----------------------------------------------------------


def parse_alpha(text) -> float:
    try:
        a = float(text)
    except (TypeError, ValueError):
        raise UsageError(f"alpha must be a number in radians, got {text!r}")
    if not math.isfinite(a) or a < 0 or a > ALPHA_MAX + ALPHA_ROUNDING:
        raise UsageError(f"alpha {a!r} outside [0, pi/4]")
    return min(a, ALPHA_MAX)


def parse_grid(text: str) -> np.ndarray:
    """``start:stop:count`` -> ``count`` evenly spaced points, both ends included."""
    parts = str(text).split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must look like start:stop:count, got {text!r}")
    start, stop = parse_alpha(parts[0]), parse_alpha(parts[1])
    try:
        count = int(parts[2])
    except ValueError:
        raise UsageError(f"grid count must be an integer, got {parts[2]!r}")
    if count < 1:
        raise UsageError(f"grid needs at least one point, got {count}")
    if count > 1 and stop < start:
        raise UsageError(f"grid stop {stop} is below start {start}")
    if count == 1:
        return np.array([start])
    return np.linspace(start, stop, count)


def _positive_int(name):
    def conv(v):
        try:
            n = int(v)
        except (TypeError, ValueError):
            raise UsageError(f"{name} must be an integer, got {v!r}")
        if n < 1:
            raise UsageError(f"{name} must be at least 1, got {n}")
        return n

    return conv


def _non_negative_float(name):
    def conv(v):
        try:
            x = float(v)
        except (TypeError, ValueError):
            raise UsageError(f"{name} must be a number, got {v!r}")
        if not math.isfinite(x) or x < 0:
            raise UsageError(f"{name} must be finite and non-negative, got {v!r}")
        return x

    return conv


def _choice(name, options):
    def conv(v):
        if v not in options:
            raise UsageError(f"{name} must be one of {', '.join(options)}, got {v!r}")
        return v

    return conv


def _int(name):
    def conv(v):
        try:
            return int(v)
        except (TypeError, ValueError):
            raise UsageError(f"{name} must be an integer, got {v!r}")

    return conv


CONVERTERS: dict[str, Callable] = {
    "arch": _choice("arch", ARCHITECTURES),
    "herald": _choice("herald", tuple(HERALDS)),
    "grid": str,
    "alpha": parse_alpha,
    "restarts": _positive_int("restarts"),
    "seed": _int("seed"),
    "mu": _non_negative_float("mu"),
    "epsilon": _non_negative_float("epsilon"),
    "layers": _positive_int("layers"),
    "output": str,
    "threads": _positive_int("threads"),
}


def read_config(path: str) -> dict:
    """``key = value`` per line; blank lines and ``#`` comments are skipped."""
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise UsageError(f"cannot read config file {path}: {err.strerror}")
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value, got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "architecture":
            key = "arch"
        if key not in CONVERTERS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def resolve(args: argparse.Namespace, keys: Sequence[str]) -> dict:
    """Merge flags over the config file over the defaults and convert every value."""
    file_values = read_config(args.config) if args.config else {}
    out = {}
    for key in keys:
        cli = getattr(args, key, None)
        if cli is not None:
            value = cli
        elif key in file_values:
            value = file_values[key]
        else:
            value = DEFAULTS[key]
        out[key] = None if value is None else CONVERTERS[key](value)
    if "threads" in out and out["threads"] is None:
        env = os.environ.get(THREADS_ENV)
        out["threads"] = _positive_int(THREADS_ENV)(env) if env else (os.cpu_count() or 1)
    return out


# --- output helpers ---------------------------------------------------------


def fmt(x) -> str:
    """Locale-independent, 12 significant digits."""
    return format(float(x), ".12g")


def _open_output(path: str):
    if path == "-":
        return sys.stdout, False
    try:
        return open(path, "w", newline=""), True
    except OSError as err:
        raise OSError(f"cannot write {path}: {err.strerror}") from err


def write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    fh, close = _open_output(path)
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    finally:
        if close:
            fh.close()


def _mu_schedule(mu):
    return None if mu is None else (mu,)


# --- commands ---------------------------------------------------------------


def cmd_sweep(args) -> int:
    cfg = resolve(args, ("arch", "herald", "grid", "restarts", "seed", "mu", "epsilon",
                         "layers", "output", "threads"))
    grid = parse_grid(cfg["grid"])
    herald = HERALDS[cfg["herald"]]()
    points = sweep_alpha(
        grid,
        cfg["arch"],
        herald,
        n_restarts=cfg["restarts"],
        seed=cfg["seed"],
        cfg=CostConfig(herald=herald, epsilon=cfg["epsilon"]),
        workers=cfg["threads"],
        layers=cfg["layers"],
        mu_schedule=_mu_schedule(cfg["mu"]),
    )
    herald_name = "one_mode" if cfg["arch"] == "compact_fig7" else cfg["herald"]
    restarts = 0 if cfg["arch"] == "compact_fig7" else cfg["restarts"]
    rows = [
        (fmt(pt.alpha), fmt(pt.probability), fmt(pt.infidelity), herald_name, cfg["arch"],
         restarts, cfg["seed"])
        for pt in points
    ]
    write_csv(cfg["output"], SWEEP_HEADER, rows)
    return 0


def reference_rows(grid) -> list[tuple]:
    rows = []
    for a in grid:
        a = float(a)
        rows.append((fmt(a), fmt(cphase_p(4 * a)), fmt(1.0 / 9.0), fmt(best_gate_based_p(a)),
                     fmt(analytic_p_one_mode(a))))
    return rows


def cmd_reference(args) -> int:
    cfg = resolve(args, ("grid", "output"))
    write_csv(cfg["output"], REFERENCE_HEADER, reference_rows(parse_grid(cfg["grid"])))
    return 0


def _restricted_scheme(x: np.ndarray, n_modes: int, layers) -> Scheme:
    half = MeshParameterSet.size(n_modes, layers)
    v1 = MeshParameterSet.from_vector(n_modes, x[:half], layers).elements()
    v2 = MeshParameterSet.from_vector(n_modes, x[half : 2 * half], layers).elements()
    theta = float(x[2 * half])
    elements = tuple(v1) + (PhaseShift(0, theta),) + tuple(v2)
    return Scheme(n_modes, elements, {"element_index": len(v1), "law": "optimized phase"})


def cmd_optimize(args) -> int:
    cfg = resolve(args, ("arch", "herald", "alpha", "restarts", "seed", "mu", "epsilon",
                         "layers", "output", "threads"))
    alpha, arch = cfg["alpha"], cfg["arch"]
    herald = HERALDS[cfg["herald"]]()
    cost_cfg = CostConfig(herald=herald, epsilon=cfg["epsilon"])
    t0 = time.perf_counter()
    if arch == "universal":
        res = optimize_universal(alpha, herald, cfg["restarts"], cfg["seed"], cost_cfg,
                                 cfg["threads"], mu_schedule=_mu_schedule(cfg["mu"]))
        scheme = Scheme(herald.total_modes,
                        tuple(MeshParameterSet.from_vector(herald.total_modes, res.best_params)
                              .elements()))
        p, infid, restarts, ideal = res.p, res.infidelity, res.restarts_used, res.ideal
        inp = cost_cfg.input
    elif arch == "restricted":
        rcfg = CostConfig(herald=herald, epsilon=cfg["epsilon"], alphas=(alpha,))
        res = alternating_optimize_restricted(rcfg, cfg["layers"], cfg["restarts"], cfg["seed"],
                                              workers=cfg["threads"],
                                              mu_schedule=_mu_schedule(cfg["mu"]))
        scheme = _restricted_scheme(res.best_params, herald.total_modes, cfg["layers"])
        p, infid, restarts, ideal = res.p, res.infidelity, res.restarts_used, res.ideal
        inp = rcfg.input
    else:
        out = compact_scheme_outcome(alpha)
        scheme = compact_scheme(alpha)
        p, infid, restarts = out.p_tilde, out.infidelity, 0
        ideal = infid is not None and infid <= 1e-8
        herald, inp = COMPACT_HERALD, COMPACT_INPUT
    summary = {
        "alpha": alpha,
        "architecture": arch,
        "herald": "one_mode" if arch == "compact_fig7" else cfg["herald"],
        "herald_pattern": list(herald.pattern),
        "signal_modes": list(herald.signal_modes),
        "aux_modes": list(herald.aux_modes),
        "input": list(inp),
        "probability": p,
        "infidelity": infid,
        "ideal": bool(ideal),
        "restarts": restarts,
        "seed": cfg["seed"],
        "seconds": round(time.perf_counter() - t0, 3),
    }
    if cfg["output"] == "-":
        print(json.dumps({"scheme": scheme.to_dict(), "summary": summary}, indent=2))
    else:
        base = Path(cfg["output"])
        summary_path = base.with_name(base.stem + ".summary.json")
        for path, text in ((base, scheme.to_json(indent=2)), (summary_path, json.dumps(summary, indent=2))):
            try:
                path.write_text(text + "\n")
            except OSError as err:
                raise OSError(f"cannot write {path}: {err.strerror}") from err
        print(f"p = {fmt(p)}  1-F = {fmt(infid if infid is not None else float('nan'))}")
        print(f"wrote {base} and {summary_path}")
    if not ideal:
        print(f"warning: best infidelity {infid} is above the ideal threshold 1e-8",
              file=sys.stderr)
    return 0


# --- verification -----------------------------------------------------------


def _check_permanents(rng):
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 7))
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        ref = permanent_naive(a)
        worst = max(worst, abs(permanent(a) - ref) / max(abs(ref), 1e-300))
    return worst <= 1e-10, f"max relative error {worst:.2e} over 200 matrices (n <= 6)"


def _check_unitarity(rng):
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 7))
        u = mesh_unitary(n, MeshParameterSet.random(n, rng).to_vector())
        worst = max(worst, float(np.abs(u.conj().T @ u - np.eye(n)).max()))
    return worst <= 1e-10, f"max |U^H U - I| {worst:.2e} over 100 meshes"


def _check_hom(rng):
    u = beam_splitter(transmissivity_angle(0.5))
    c = abs(transition_amplitudes(u, (1, 1), [(1, 1)])[0])
    return c <= 1e-12, f"|<1,1|U|1,1>| = {c:.2e}"


def _check_norm(rng):
    n = 5
    u = mesh_unitary(n, MeshParameterSet.random(n, rng).to_vector())
    psi = evolve((1, 1, 1, 1, 0), u)
    spec = HeraldSpec.one_mode()
    total = sum(project_herald(psi, spec.with_pattern(d)).norm_squared() for d in spec.all_patterns(4))
    ok = abs(psi.norm_squared() - 1) <= 1e-10 and abs(total - 1) <= 1e-9
    return ok, f"norm {psi.norm_squared():.12f}, herald outcomes sum {total:.12f}"


def _compact_check(tau_law):
    def check(rng):
        worst_p, worst_f = 0.0, 0.0
        for a in np.linspace(0, ALPHA_MAX, 101):
            out = compact_scheme_outcome(a, tau_law)
            worst_p = max(worst_p, abs(out.p_tilde - analytic_p_one_mode(a)))
            worst_f = max(worst_f, 1.0 if out.fidelity is None else out.infidelity)
        ok = worst_p <= 1e-9 and worst_f <= 1e-8
        return ok, f"max |p - analytic| {worst_p:.2e}, max 1-F {worst_f:.2e} on 101 points"

    return check


def _check_cphase(rng):
    vals = (cphase_p(0.0), cphase_p(math.pi), cphase_p(math.pi / 3))
    ok = vals[0] == 1.0 and abs(vals[1] - 1 / 9) <= 1e-12 and abs(vals[2] - 1 / 9) <= 1e-12
    return ok, "p(0), p(pi), p(pi/3) = " + ", ".join(f"{v:.15f}" for v in vals)


def verification_checks(tau_law=tau_of_alpha):
    return [
        ("permanent_ryser_vs_naive", _check_permanents),
        ("mesh_unitarity", _check_unitarity),
        ("hong_ou_mandel", _check_hom),
        ("norm_and_herald_completeness", _check_norm),
        ("compact_scheme_vs_analytic", _compact_check(tau_law)),
        ("cphase_endpoints", _check_cphase),
    ]


def run_verification(tau_law=tau_of_alpha, seed: int = 0) -> list[dict]:
    rng = np.random.default_rng(seed)
    report = []
    for name, check in verification_checks(tau_law):
        t0 = time.perf_counter()
        try:
            ok, detail = check(rng)
        except Exception as err:  # a crashing check is a failing check
            ok, detail = False, f"{type(err).__name__}: {err}"
        report.append({"check": name, "passed": bool(ok), "detail": detail,
                       "seconds": round(time.perf_counter() - t0, 3)})
    return report


def cmd_verify(args) -> int:
    tau_law = tau_of_alpha
    if args.perturb_tau:
        delta = args.perturb_tau
        tau_law = lambda a: min(1.0, max(0.0, tau_of_alpha(a) + delta))  # noqa: E731
    cfg = resolve(args, ("seed",))
    report = run_verification(tau_law, cfg["seed"])
    passed = all(r["passed"] for r in report)
    if args.json:
        print(json.dumps({"passed": passed, "checks": report}, indent=2))
    else:
        width = max(len(r["check"]) for r in report)
        for r in report:
            print(f"{'PASS' if r['passed'] else 'FAIL'}  {r['check']:<{width}}  {r['detail']}")
        print("all checks passed" if passed else "verification FAILED")
    return 0 if passed else 1


# --- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value settings file (flags take precedence)")
    common.add_argument("--seed", type=int, help="master seed (default 0)")

    run = argparse.ArgumentParser(add_help=False)
    run.add_argument("--arch", choices=ARCHITECTURES, help="interferometer architecture")
    run.add_argument("--herald", choices=tuple(HERALDS), help="heralding scheme")
    run.add_argument("--restarts", type=int, help="random restarts per optimization (default 10)")
    run.add_argument("--mu", type=float, help="fixed probability exponent instead of the annealed schedule")
    run.add_argument("--epsilon", type=float, help="static-element penalty weight (default 0.01)")
    run.add_argument("--layers", type=int, help="mesh depth for the restricted architecture")
    run.add_argument("--threads", type=int,
                     help=f"worker processes (default ${THREADS_ENV} or all cores)")

    p = argparse.ArgumentParser(prog="heraldgen", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sweep", parents=[common, run], help="optimized p(alpha) curve as CSV")
    s.add_argument("--grid", help="start:stop:count in radians")
    s.add_argument("--output", "-o", help="CSV path ('-' for stdout)")
    s.set_defaults(func=cmd_sweep)

    r = sub.add_parser("reference", parents=[common], help="gate-based reference curves as CSV")
    r.add_argument("--grid", help="start:stop:count in radians")
    r.add_argument("--output", "-o", help="CSV path ('-' for stdout)")
    r.set_defaults(func=cmd_reference)

    o = sub.add_parser("optimize", parents=[common, run], help="best scheme for one target")
    o.add_argument("--alpha", help="target parameter in radians (default pi/4)")
    o.add_argument("--output", "-o", help="scheme JSON path; the summary goes next to it")
    o.set_defaults(func=cmd_optimize)

    v = sub.add_parser("verify", parents=[common], help="run the oracle checks")
    v.add_argument("--json", action="store_true", help="machine-readable report")
    v.add_argument("--perturb-tau", type=float, default=0.0, help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"{parser.prog}: error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
