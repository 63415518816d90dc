"""Cost functions and quasi-Newton search for heralded generation schemes.

``cf1`` scores one interferometer setting against one target,
``-p**mu * F``. ``cf2`` averages ``cf1`` over several targets that share the
static part of a restricted (one variable phase) interferometer, and ``cf3``
adds a penalty that pushes the static splitters and phases towards trivial
values.

``-p**mu * F`` only rewards fidelity strongly when ``mu`` is small: at
``mu = 1`` it collapses to ``-|<chi|target>|**2`` and the optimum carries
leakage into wrong signal states. The optimization drivers therefore anneal
``mu`` along :data:`MU_SCHEDULE`, warm-starting every stage from the last.
Near ``alpha = 0`` the separable-state solutions (``F = cos(alpha)**2``) beat
every exact one unless ``mu`` is below roughly ``alpha**2``, so cold starts
skip the stages above that (:func:`cold_schedule`). Starts taken from a
neighbouring optimum only run the final stages (:data:`WARM_SCHEDULE`).
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np
from scipy import optimize as sciopt

from .heralding import (
    ALPHA_MAX,
    P_UNDEFINED,
    HeraldSpec,
    check_alpha,
    heralded_amplitudes,
    probability_and_fidelity,
    target_vector,
)
from .interferometer import (
    MeshParameterSet,
    mesh_unitary,
    restricted_unitary,
    split_mesh_vector,
    wrap_phase,
)

log = logging.getLogger(__name__)

MU_SCHEDULE = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
WARM_SCHEDULE = (1e-5, 1e-6)
HOMOTOPY_SCHEDULE = (1e-3, 1e-4)
IDEAL_INFIDELITY = 1e-8
FD_STEP = 1e-7


@dataclass(frozen=True)
class CostConfig:
    herald: HeraldSpec = field(default_factory=HeraldSpec.one_mode)
    input: tuple[int, ...] | None = None
    mu: float = 1.0
    epsilon: float = 0.01
    alphas: tuple[float, ...] = ()

    def __post_init__(self):
        inp = self.herald.default_input() if self.input is None else tuple(self.input)
        if len(inp) != self.herald.total_modes:
            raise ValueError(f"input {inp} does not match {self.herald.total_modes} modes")
        if sum(inp) < self.herald.heralded_photons:
            raise ValueError(f"input {inp} carries fewer photons than the herald pattern")
        object.__setattr__(self, "input", inp)
        object.__setattr__(self, "alphas", tuple(check_alpha(a) for a in self.alphas))
        if self.mu < 0 or self.epsilon < 0:
            raise ValueError("mu and epsilon must be non-negative")

    @property
    def n_modes(self) -> int:
        return self.herald.total_modes


@dataclass
class OptimizationResult:
    best_params: np.ndarray
    cost: float
    p: float | None = None
    infidelity: float | None = None
    restarts_used: int = 1
    converged: bool = False
    n_iters: int = 0
    cost_history: list[float] | None = None
    extra: dict = field(default_factory=dict)

    @property
    def ideal(self) -> bool:
        return self.infidelity is not None and self.infidelity <= IDEAL_INFIDELITY


# --- cost functions ---------------------------------------------------------


def cost_from_unitaries(u: np.ndarray, alpha: float, cfg: CostConfig, mu: float | None = None):
    """``-p**mu * F`` for a (batched) transfer matrix; 0 where ``p`` vanishes."""
    mu = cfg.mu if mu is None else mu
    chi = heralded_amplitudes(u, cfg.herald, cfg.input)
    p, f = probability_and_fidelity(chi, target_vector(alpha))
    undefined = p < P_UNDEFINED
    val = -np.power(np.where(undefined, 1.0, p), mu) * np.where(undefined, 0.0, f)
    return np.where(undefined, 0.0, val)


def cf1(alpha: float, params, cfg: CostConfig, mu: float | None = None) -> float:
    """Single-target cost of a universal mesh with flat parameters ``params``."""
    alpha = check_alpha(alpha)
    return float(cost_from_unitaries(mesh_unitary(cfg.n_modes, params), alpha, cfg, mu))


def restricted_cost_terms(
    thetas, psi, cfg: CostConfig, layers: int | None = None, mu: float | None = None
) -> np.ndarray:
    """Per-target ``cf1`` values of the restricted scheme, shape ``(..., S)``.

    ``psi`` holds the flat parameters of ``V1`` then ``V2`` (both depth-``layers``
    meshes) and may be batched; ``thetas`` has length ``S == len(cfg.alphas)``.
    """
    thetas = np.asarray(thetas, dtype=float)
    if thetas.shape[-1] != len(cfg.alphas) or not cfg.alphas:
        raise ValueError(f"need one variable phase per target, got {thetas.shape[-1]} for "
                         f"{len(cfg.alphas)} targets")
    psi = np.asarray(psi, dtype=float)
    half = MeshParameterSet.size(cfg.n_modes, layers)
    if psi.shape[-1] != 2 * half:
        raise ValueError(f"expected {2 * half} static parameters, got {psi.shape[-1]}")
    v1 = mesh_unitary(cfg.n_modes, psi[..., :half], layers)
    v2 = mesh_unitary(cfg.n_modes, psi[..., half:], layers)
    u = restricted_unitary(v1[..., None, :, :], v2[..., None, :, :], thetas)
    terms = [cost_from_unitaries(u[..., m, :, :], a, cfg, mu) for m, a in enumerate(cfg.alphas)]
    return np.stack(terms, axis=-1)


def cf2(thetas, psi, cfg: CostConfig, layers: int | None = None, mu: float | None = None):
    return restricted_cost_terms(thetas, psi, cfg, layers, mu).mean(axis=-1)


def static_penalty(psi, n_modes: int, layers: int | None = None) -> np.ndarray:
    """``sum(sin(2 psi')**2 + sin(2 psi'')**2)`` over the splitters of ``V1`` and ``V2``."""
    psi = np.asarray(psi, dtype=float)
    half = MeshParameterSet.size(n_modes, layers)
    total = 0.0
    for block in (psi[..., :half], psi[..., half:]):
        tp, tpp, _ = split_mesh_vector(n_modes, block, layers)
        total = total + (np.sin(2 * tp) ** 2).sum(-1) + (np.sin(2 * tpp) ** 2).sum(-1)
    return total


def cf3(thetas, psi, cfg: CostConfig, layers: int | None = None, mu: float | None = None):
    return cf2(thetas, psi, cfg, layers, mu) + cfg.epsilon * static_penalty(psi, cfg.n_modes, layers)


# --- minimizer --------------------------------------------------------------


def fd_gradient(fun: Callable, x: np.ndarray, step: float = FD_STEP, batch: Callable | None = None):
    """Central differences; ``batch`` evaluates a stack of points in one call."""
    x = np.asarray(x, dtype=float)
    n = x.size
    shifts = step * np.eye(n)
    if batch is not None:
        vals = np.asarray(batch(np.concatenate([x + shifts, x - shifts])), dtype=float)
        return (vals[:n] - vals[n:]) / (2 * step)
    return np.array([(fun(x + d) - fun(x - d)) / (2 * step) for d in shifts])


class _Tracker:
    """Wraps a cost for scipy: value plus gradient, best point seen, non-finite guard."""

    max_bad = 30

    def __init__(self, fun, batch, step, record):
        self.fun, self.batch, self.step = fun, batch, step
        self.best_x, self.best_f = None, math.inf
        self.bad = 0
        self.history = [] if record else None

    def __call__(self, x):
        if self.batch is not None:
            n = x.size
            shifts = self.step * np.eye(n)
            vals = np.asarray(self.batch(np.vstack([x[None], x + shifts, x - shifts])), float)
            f = float(vals[0])
            g = (vals[1 : n + 1] - vals[n + 1 :]) / (2 * self.step)
        else:
            f = float(self.fun(x))
            g = fd_gradient(self.fun, x, self.step)
        if not (math.isfinite(f) and np.all(np.isfinite(g))):
            self.bad += 1
            if self.bad > self.max_bad:
                raise FloatingPointError("cost stayed non-finite during line search")
            # an overshoot as far as the line search can tell: it backtracks
            return (self.best_f + 1e3 if math.isfinite(self.best_f) else 1e300), np.zeros_like(x)
        if f < self.best_f:
            self.best_f, self.best_x = f, x.copy()
        if self.history is not None:
            self.history.append(f)
        return f, g


def minimize(
    cost: Callable[[np.ndarray], float],
    x0,
    tol: float = 1e-9,
    max_iters: int = 10_000,
    step: float = FD_STEP,
    batch: Callable | None = None,
    record_history: bool = False,
) -> OptimizationResult:
    """L-BFGS with central finite-difference gradients; returns the best point seen.

    Stops when the largest gradient component drops below ``tol`` or after
    ``max_iters`` iterations.
    """
    x0 = np.asarray(x0, dtype=float).copy()
    f0 = float(cost(x0))
    if not math.isfinite(f0):
        raise ValueError(f"cost is not finite at the starting point ({f0})")
    track = _Tracker(cost, batch, step, record_history)
    track.best_x, track.best_f = x0.copy(), f0
    converged, nit = False, 0
    try:
        res = sciopt.minimize(
            track,
            x0,
            jac=True,
            method="L-BFGS-B",
            options={"maxiter": max_iters, "gtol": tol, "ftol": 1e-15, "maxcor": 20, "maxls": 40},
        )
        nit = int(res.nit)
        converged = bool(res.success)
    except FloatingPointError as err:
        log.warning("minimize aborted: %s", err)
    return OptimizationResult(
        best_params=track.best_x,
        cost=track.best_f,
        converged=converged,
        n_iters=nit,
        cost_history=track.history,
    )


# --- universal architecture -------------------------------------------------


def cold_schedule(alpha: float, schedule: Sequence[float] = MU_SCHEDULE) -> tuple[float, ...]:
    """Stages of ``schedule`` not exceeding ``alpha**2 / 4`` (always keeps the last)."""
    kept = tuple(mu for mu in schedule if mu <= 0.25 * alpha**2)
    return kept or tuple(schedule[-1:])


def sample_mesh_vector(n_modes: int, rng: np.random.Generator, layers: int | None = None):
    return MeshParameterSet.random(n_modes, rng, layers).to_vector()


@dataclass(frozen=True)
class UniversalTask:
    """Best setting of a full-depth mesh for one target state."""

    alpha: float
    cfg: CostConfig = field(default_factory=CostConfig)
    mu_schedule: tuple[float, ...] | None = None
    tol: float = 1e-9
    max_iters: int = 10_000

    def cost(self, x, mu=None):
        return float(self.batch(np.asarray(x)[None], mu)[0])

    def batch(self, xs, mu=None):
        u = mesh_unitary(self.cfg.n_modes, xs)
        return cost_from_unitaries(u, self.alpha, self.cfg, mu)

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        return sample_mesh_vector(self.cfg.n_modes, rng)

    def evaluate(self, x) -> tuple[float, float]:
        chi = heralded_amplitudes(mesh_unitary(self.cfg.n_modes, x), self.cfg.herald, self.cfg.input)
        p, f = probability_and_fidelity(chi, target_vector(self.alpha))
        return float(p), float(f)

    def schedule(self, warm: bool) -> tuple[float, ...]:
        if self.mu_schedule is not None:
            return self.mu_schedule[-len(WARM_SCHEDULE) :] if warm else self.mu_schedule
        return WARM_SCHEDULE if warm else cold_schedule(self.alpha)

    def solve(self, x0, warm: bool = False) -> OptimizationResult:
        x = np.asarray(x0, dtype=float)
        res = None
        total = 0
        for mu in self.schedule(warm):
            res = minimize(
                lambda y, mu=mu: self.cost(y, mu),
                x,
                tol=self.tol,
                max_iters=self.max_iters,
                batch=lambda ys, mu=mu: self.batch(ys, mu),
            )
            x = res.best_params
            total += res.n_iters
        p, f = self.evaluate(x)
        return replace(res, p=p, infidelity=1.0 - f if math.isfinite(f) else 1.0, n_iters=total)


def select_best(results: Sequence[OptimizationResult]) -> OptimizationResult:
    """Highest ``p`` among ideal results; lowest infidelity if none is ideal."""
    ideal = [r for r in results if r.ideal]
    if ideal:
        return max(ideal, key=lambda r: r.p)
    return min(results, key=lambda r: (r.infidelity if r.infidelity is not None else math.inf, r.cost))


def _solve(task, x0, warm=False):
    return task.solve(x0, warm)


def default_workers() -> int:
    env = os.environ.get("HERALDGEN_THREADS")
    return max(1, int(env)) if env else 1


def _run_all(task, starts, warm_flags, workers):
    if workers > 1 and len(starts) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_solve, [task] * len(starts), starts, warm_flags))
    return [task.solve(x0, w) for x0, w in zip(starts, warm_flags)]


def multi_start(
    task,
    n_restarts: int = 10,
    seed: int = 0,
    workers: int | None = None,
    warm_starts: Sequence[np.ndarray] = (),
) -> OptimizationResult:
    """Best of independent runs from seeded random starts.

    ``warm_starts`` (e.g. the optimum for a neighbouring target) are polished
    in addition to the random starts. The outcome does not depend on ``workers``.
    """
    if n_restarts < 1:
        raise ValueError(f"need at least one restart, got {n_restarts}")
    children = np.random.SeedSequence(seed).spawn(n_restarts)
    starts = [task.sample(np.random.default_rng(c)) for c in children]
    starts += [np.asarray(x, dtype=float) for x in warm_starts]
    warm = [False] * n_restarts + [True] * len(warm_starts)
    results = _run_all(task, starts, warm, default_workers() if workers is None else workers)
    best = select_best(results)
    return replace(best, restarts_used=len(starts))


def _config_for(herald: HeraldSpec | None, cfg: CostConfig | None) -> CostConfig:
    if cfg is None:
        return CostConfig(herald=herald or HeraldSpec.one_mode())
    if herald is not None and herald != cfg.herald:
        return replace(cfg, herald=herald, input=None)
    return cfg


def continuation_path(alpha: float, step: float = 0.05) -> np.ndarray:
    """Evenly spaced targets from pi/4 down to ``alpha`` (both ends included)."""
    alpha = check_alpha(alpha)
    n = max(1, math.ceil((ALPHA_MAX - alpha) / step))
    return np.linspace(ALPHA_MAX, alpha, n + 1)


def optimize_universal(
    alpha: float,
    herald: HeraldSpec | None = None,
    n_restarts: int = 10,
    seed: int = 0,
    cfg: CostConfig | None = None,
    workers: int | None = None,
    continuation: bool = True,
    mu_schedule: tuple[float, ...] | None = None,
) -> OptimizationResult:
    """Multi-start search for one target, optionally seeded by a continuation run.

    The continuation run solves the Bell state (``alpha = pi/4``) from random
    starts and walks the optimum down to ``alpha`` in small steps; its end
    point joins the random starts as a warm start.
    """
    alpha = check_alpha(alpha)
    cfg = _config_for(herald, cfg)
    warm = []
    if continuation and alpha < ALPHA_MAX:
        warm.append(_walk_down(alpha, cfg, n_restarts, seed, workers, mu_schedule))
    return multi_start(UniversalTask(alpha, cfg, mu_schedule), n_restarts, seed, workers, warm)


def _walk_down(alpha, cfg, n_restarts, seed, workers, mu_schedule) -> np.ndarray:
    """Bell-state optimum carried down to just above ``alpha`` along :func:`continuation_path`."""
    path = continuation_path(alpha)
    x = multi_start(UniversalTask(path[0], cfg, mu_schedule), n_restarts, seed, workers).best_params
    for a in path[1:-1]:
        x = UniversalTask(float(a), cfg, mu_schedule).solve(x, warm=True).best_params
    return x


# --- curves -----------------------------------------------------------------


@dataclass(frozen=True)
class CurvePoint:
    alpha: float
    probability: float
    infidelity: float
    params: np.ndarray | None = None


def _check_grid(grid) -> list[float]:
    grid = [float(a) for a in grid]
    if not grid:
        raise ValueError("alpha grid is empty")
    return [check_alpha(a) for a in grid]


def sweep_universal(
    grid: Sequence[float],
    herald: HeraldSpec | None = None,
    n_restarts: int = 10,
    seed: int = 0,
    cfg: CostConfig | None = None,
    workers: int | None = None,
    continuation: bool = True,
    mu_schedule: tuple[float, ...] | None = None,
) -> list[CurvePoint]:
    """Optimized ``(alpha, p, 1 - F)`` for every grid point, in grid order.

    Each point gets its own random restarts (seeded by ``seed`` and the point's
    index). With ``continuation`` the Bell-state optimum is walked down to the
    top of the grid, then carried from point to point downwards and upwards
    in ``alpha`` and kept wherever it wins, which keeps the curve on one
    branch instead of hopping between local optima.
    """
    grid = _check_grid(grid)
    cfg = _config_for(herald, cfg)
    seeds = np.random.SeedSequence(seed).generate_state(len(grid))
    best: dict[int, OptimizationResult] = {}
    for i, a in enumerate(grid):
        best[i] = multi_start(UniversalTask(a, cfg, mu_schedule), n_restarts, int(seeds[i]), workers)
    if continuation:
        order = sorted(range(len(grid)), key=lambda i: -grid[i])
        top = order[0]
        if grid[top] < ALPHA_MAX:
            x = _walk_down(grid[top], cfg, n_restarts, seed, workers, mu_schedule)
            cand = UniversalTask(grid[top], cfg, mu_schedule).solve(x, warm=True)
            best[top] = select_best([best[top], cand])
        for chain in (order, order[::-1]):
            prev = None
            for i in chain:
                if prev is not None:
                    task = UniversalTask(grid[i], cfg, mu_schedule)
                    cand = task.solve(best[prev].best_params, warm=True)
                    best[i] = select_best([best[i], cand])
                prev = i
    return [
        CurvePoint(a, best[i].p, best[i].infidelity, best[i].best_params)
        for i, a in enumerate(grid)
    ]


# --- restricted (one variable phase) architecture ---------------------------


@dataclass(frozen=True)
class RestrictedTask:
    """Shared static meshes plus one variable phase per target in ``cfg.alphas``."""

    cfg: CostConfig
    layers: int | None = None
    penalized: bool = False
    mu_schedule: tuple[float, ...] | None = None
    max_cycles: int = 200
    cycle_tol: float = 1e-10
    inner_iters: int = 300
    grid_points: int = 64
    homotopy_steps: int = 10

    def __post_init__(self):
        if not self.cfg.alphas:
            raise ValueError("the restricted search needs at least one target alpha")

    @property
    def n_static(self) -> int:
        return 2 * MeshParameterSet.size(self.cfg.n_modes, self.layers)

    def schedule(self) -> tuple[float, ...]:
        if self.mu_schedule is not None:
            return self.mu_schedule
        return cold_schedule(min(a for a in self.cfg.alphas if a > 0) if any(self.cfg.alphas) else 0.0)

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        n = self.cfg.n_modes
        psi = np.concatenate([sample_mesh_vector(n, rng, self.layers) for _ in range(2)])
        return np.concatenate([psi, rng.uniform(-math.pi, math.pi, len(self.cfg.alphas))])

    def split(self, x):
        x = np.asarray(x, dtype=float)
        return x[: self.n_static], x[self.n_static :]

    def cost(self, thetas, psi, mu):
        fn = cf3 if self.penalized else cf2
        return fn(thetas, psi, self.cfg, self.layers, mu)

    def _best_theta(self, m: int, psi: np.ndarray, mu: float) -> float:
        """Global 1-D search for the variable phase of target ``m``: grid then Brent."""
        n = self.cfg.n_modes
        half = MeshParameterSet.size(n, self.layers)
        v1 = mesh_unitary(n, psi[:half], self.layers)
        v2 = mesh_unitary(n, psi[half:], self.layers)
        alpha = self.cfg.alphas[m]

        def f(theta):
            return cost_from_unitaries(restricted_unitary(v1, v2, theta), alpha, self.cfg, mu)

        grid = np.linspace(-math.pi, math.pi, self.grid_points, endpoint=False)
        vals = f(grid)
        g = grid[int(np.argmin(vals))]
        width = 2 * math.pi / self.grid_points
        res = sciopt.minimize_scalar(
            lambda t: float(f(t)), bounds=(g - width, g + width), method="bounded",
            options={"xatol": 1e-12},
        )
        theta = res.x if res.fun <= vals.min() else g
        return float(wrap_phase(theta))

    def evaluate(self, x):
        psi, thetas = self.split(x)
        n = self.cfg.n_modes
        half = MeshParameterSet.size(n, self.layers)
        v1 = mesh_unitary(n, psi[:half], self.layers)
        v2 = mesh_unitary(n, psi[half:], self.layers)
        ps, fs = [], []
        for a, t in zip(self.cfg.alphas, thetas):
            chi = heralded_amplitudes(restricted_unitary(v1, v2, t), self.cfg.herald, self.cfg.input)
            p, f = probability_and_fidelity(chi, target_vector(a))
            ps.append(float(p))
            fs.append(float(f) if math.isfinite(f) else 0.0)
        return np.array(ps), np.array(fs)

    def _alternate(self, psi, thetas, cfg: CostConfig, schedule, history) -> int:
        """Alternating cycles for every stage of ``schedule``; returns the cycle count."""
        task = replace(self, cfg=cfg)
        cycles = 0
        for mu in schedule:
            prev = float(task.cost(thetas, psi, mu))
            for _ in range(self.max_cycles):
                cycles += 1
                for m in range(len(thetas)):
                    thetas[m] = task._best_theta(m, psi, mu)
                res = minimize(
                    lambda y: float(task.cost(thetas, y, mu)),
                    psi,
                    max_iters=self.inner_iters,
                    batch=lambda ys: task.cost(thetas, ys, mu),
                )
                psi[:] = res.best_params
                cur = float(task.cost(thetas, psi, mu))
                history.append(cur)
                done = prev - cur < self.cycle_tol
                prev = cur
                if done:
                    break
            else:
                return -cycles
        return cycles

    def solve(self, x0, warm: bool = False) -> OptimizationResult:
        """Alternating search from ``x0``.

        A cold start first solves with every target moved to the largest
        ``alpha``, then walks the targets to their true values in
        ``homotopy_steps`` warm-started steps. Where all targets coincide the
        two symmetric solution families meet, and walking out from there
        follows the one whose probability grows as ``alpha`` moves away;
        random starts at the true targets mostly end on the other family.
        """
        psi, thetas = self.split(x0)
        psi, thetas = psi.copy(), thetas.copy()
        history: list[float] = []
        schedule = self.schedule()
        cycles = 0
        if warm:
            schedule = schedule[-len(WARM_SCHEDULE) :]
        elif self.homotopy_steps > 0 and len(set(self.cfg.alphas)) > 1:
            targets = np.array(self.cfg.alphas)
            anchor = targets.max()
            path_schedule = self.mu_schedule or HOMOTOPY_SCHEDULE
            anchor_cfg = replace(self.cfg, alphas=(anchor,) * len(targets))
            anchor_schedule = self.mu_schedule or cold_schedule(anchor)
            cycles += abs(self._alternate(psi, thetas, anchor_cfg, anchor_schedule, history))
            for t in np.linspace(0.0, 1.0, self.homotopy_steps + 1)[1:]:
                step_cfg = replace(self.cfg, alphas=tuple(anchor + t * (targets - anchor)))
                cycles += abs(self._alternate(psi, thetas, step_cfg, path_schedule, history))
            schedule = schedule[-len(WARM_SCHEDULE) :]
        n = self._alternate(psi, thetas, self.cfg, schedule, history)
        cycles += abs(n)
        x = np.concatenate([psi, thetas])
        ps, fs = self.evaluate(x)
        return OptimizationResult(
            best_params=x,
            cost=float(self.cost(thetas, psi, schedule[-1])),
            p=float(ps.min()),
            infidelity=float((1.0 - fs).max()),
            converged=n > 0,
            n_iters=cycles,
            cost_history=history,
            extra={"p_per_alpha": ps, "infidelity_per_alpha": 1.0 - fs, "alphas": self.cfg.alphas},
        )


def alternating_optimize_restricted(
    cfg: CostConfig,
    layers: int | None = None,
    n_restarts: int = 3,
    seed: int = 0,
    penalized: bool = False,
    workers: int | None = None,
    **task_options,
) -> OptimizationResult:
    """Restricted-scheme search alternating per-target phases and the static meshes.

    Each cycle first sets every variable phase to its best value with the
    static part frozen, then runs L-BFGS on the static part with the phases
    frozen. ``p`` of the result is the smallest per-target probability and
    ``infidelity`` the largest; per-target values are in ``extra``.
    """
    task = RestrictedTask(cfg, layers, penalized, **task_options)
    return multi_start(task, n_restarts, seed, workers)


def sparsify_restricted(
    result: OptimizationResult,
    cfg: CostConfig,
    layers: int | None = None,
    epsilons: Sequence[float] = (1e-3, 1e-2, 1e-1),
) -> OptimizationResult:
    """Push the static part towards trivial splitters with growing ``cf3`` penalties.

    Each stage warm-starts from the previous one; the last stage that is still
    ideal is returned (``result`` itself if none is).
    """
    best = result
    x = result.best_params
    for eps in epsilons:
        task = RestrictedTask(replace(cfg, epsilon=eps), layers, penalized=True)
        cand = task.solve(x, warm=True)
        if not cand.ideal:
            break
        best, x = cand, cand.best_params
        best.extra["epsilon"] = eps
    return best


def restricted_sweep(
    x: np.ndarray, grid: Sequence[float], cfg: CostConfig, layers: int | None = None,
    mu: float = MU_SCHEDULE[-1],
) -> list[CurvePoint]:
    """Curve of a fixed restricted scheme: only the variable phase is re-tuned per ``alpha``."""
    grid = _check_grid(grid)
    out = []
    for a in grid:
        task = RestrictedTask(replace(cfg, alphas=(a,)), layers)
        psi, _ = task.split(x)
        theta = task._best_theta(0, psi, mu)
        ps, fs = task.evaluate(np.concatenate([psi, [theta]]))
        out.append(CurvePoint(a, float(ps[0]), float(1.0 - fs[0]), np.concatenate([psi, [theta]])))
    return out


ARCHITECTURES = ("universal", "restricted", "compact_fig7")


def sweep_alpha(
    grid: Sequence[float],
    architecture: str = "universal",
    herald: HeraldSpec | None = None,
    n_restarts: int = 10,
    seed: int = 0,
    cfg: CostConfig | None = None,
    workers: int | None = None,
    layers: int | None = None,
    n_targets: int = 5,
    mu_schedule: tuple[float, ...] | None = None,
) -> list[CurvePoint]:
    """``(alpha, p, 1 - F)`` curve for one architecture.

    ``restricted`` fits one static part to ``n_targets`` evenly spaced targets
    spanning the grid, then re-tunes only the variable phase at every grid
    point. ``compact_fig7`` needs no optimization and ignores the herald.
    """
    grid = _check_grid(grid)
    if architecture == "universal":
        return sweep_universal(grid, herald, n_restarts, seed, cfg, workers, mu_schedule=mu_schedule)
    if architecture == "compact_fig7":
        from .schemes import compact_scheme_outcome

        out = []
        for a in grid:
            o = compact_scheme_outcome(a)
            out.append(CurvePoint(a, o.p_tilde, o.infidelity if o.fidelity is not None else 1.0))
        return out
    if architecture == "restricted":
        cfg = _config_for(herald, cfg)
        lo, hi = min(grid), max(grid)
        targets = tuple(np.linspace(lo, hi, n_targets)) if hi > lo else (lo,)
        cfg = replace(cfg, alphas=targets)
        fit = alternating_optimize_restricted(
            cfg, layers, n_restarts, seed, workers=workers, mu_schedule=mu_schedule
        )
        mu = (mu_schedule or MU_SCHEDULE)[-1]
        return restricted_sweep(fit.best_params, grid, cfg, layers, mu)
    raise ValueError(f"unknown architecture {architecture!r}; choose from {ARCHITECTURES}")
