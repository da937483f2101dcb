"""Search for potentials whose composed spectrum approaches the squared primes.

With s = r = 1 and Dirichlet ends on [0, 1], the composed eigenvalues are
mu_n(q) = lambda_n(q) fed through nothing at all -- mu IS the linear
eigenvalue here, and the targets are mu*_n = (pi p_n / log p_n)^2, the
values the linear spectrum would need so that inverting the lambda map
lands exactly on the primes.  A constant shift c moves every mu_n by c,
so it can match one target but not the prime gaps; the searcher looks for
piecewise structure that does better, restarting from random potentials
and descending by coordinate pattern search.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .coeff import DIRICHLET, CoefficientSet, Interval, PiecewiseConstant, SLProblem, constant
from .errors import BadConfig
from .nonlinear import BRANCH_MIN, invert_map
from .primes import nth_prime
from .spectrum import compute_spectrum

__all__ = [
    "SearchConfig",
    "SearchResult",
    "TargetRow",
    "objective",
    "search",
    "target_mu",
    "worker_count",
]

_PI_SQ = math.pi**2
_STEP_FLOOR_REL = 1e-6


@lru_cache(maxsize=None)
def target_mu(n: int) -> float:
    """Target n-th composed eigenvalue (pi p_n / log p_n)^2."""
    p = nth_prime(n)
    return (math.pi * p / math.log(p)) ** 2


def _uniform_mesh(pieces: int) -> tuple[float, ...]:
    return tuple(float(x) for x in np.linspace(0.0, 1.0, pieces + 1))


def _assemble(q: PiecewiseConstant) -> SLProblem:
    a, b = q.breakpoints[0], q.breakpoints[-1]
    one = constant(1.0, a, b).refine(q.breakpoints)
    return SLProblem(
        interval=Interval(a, b),
        coeffs=CoefficientSet(s=one, q=q, r=one),
        bc=DIRICHLET,
    )


def objective(q: PiecewiseConstant, n_targets: int) -> float:
    """Relative squared misfit sum_n ((mu_n(q) - mu*_n) / mu*_n)^2."""
    if n_targets < 1:
        raise BadConfig(f"need at least one target, got {n_targets}")
    spec = compute_spectrum(_assemble(q), n_targets)
    if spec.truncated:
        return math.inf
    total = 0.0
    for ev in spec.eigenvalues:
        t = target_mu(ev.index)
        total += ((ev.value - t) / t) ** 2
    return total


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for the restarted coordinate pattern search over step potentials."""

    pieces: int = 16
    bound: float = 200.0
    targets: int = 8
    seed: int = 0
    restarts: int = 4
    max_iters: int = 400
    initial_step: float | None = None

    def __post_init__(self):
        if self.pieces < 1:
            raise BadConfig(f"pieces must be >= 1, got {self.pieces}")
        if not (self.bound > 0.0 and math.isfinite(self.bound)):
            raise BadConfig(f"bound must be positive and finite, got {self.bound}")
        if self.targets < 1:
            raise BadConfig(f"targets must be >= 1, got {self.targets}")
        if self.restarts < 1:
            raise BadConfig(f"restarts must be >= 1, got {self.restarts}")
        if self.max_iters < 1:
            raise BadConfig(f"max_iters must be >= 1, got {self.max_iters}")
        if self.initial_step is not None and not 0.0 < self.initial_step <= 2 * self.bound:
            raise BadConfig(
                f"initial_step must lie in (0, 2*bound], got {self.initial_step}"
            )

    @property
    def step0(self) -> float:
        return self.bound / 4.0 if self.initial_step is None else self.initial_step


@dataclass(frozen=True)
class TargetRow:
    """One composed eigenvalue of the best potential next to its prime target."""

    index: int
    prime: int
    target: float
    achieved: float
    implied_lambda: float | None  # inverse image of `achieved`, None below branch minimum


@dataclass(frozen=True)
class SearchResult:
    config: SearchConfig
    best_q: PiecewiseConstant
    best_objective: float
    baseline_objective: float  # q = 0 incumbent; best_objective <= this always
    trace: tuple[tuple[tuple[int, float], ...], ...] = field(repr=False)
    per_target: tuple[TargetRow, ...]


def worker_count() -> int:
    """Parallel restart workers: SLPRIME_THREADS caps it, 0 or unset means auto."""
    raw = os.environ.get("SLPRIME_THREADS", "0")
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    if cap < 0:
        cap = 0
    auto = os.cpu_count() or 1
    return auto if cap == 0 else min(cap, auto)


def _start_values(cfg: SearchConfig, k: int, targets: tuple[float, ...]) -> np.ndarray:
    if k == 0:
        # a constant shift matching the first target exactly: mu_1(c) = pi^2 + c
        c = min(cfg.bound, max(-cfg.bound, targets[0] - _PI_SQ))
        return np.full(cfg.pieces, c)
    rng = np.random.default_rng((cfg.seed, k))
    return rng.uniform(-cfg.bound, cfg.bound, cfg.pieces)


def _pattern_search(cfg: SearchConfig, k: int, targets: tuple[float, ...]):
    mesh = _uniform_mesh(cfg.pieces)
    n = cfg.targets

    def j_of(values: np.ndarray) -> float:
        return objective(PiecewiseConstant(mesh, tuple(float(v) for v in values)), n)

    vals = _start_values(cfg, k, targets)
    best = j_of(vals)
    trace = [(0, best)]
    step = cfg.step0
    floor = _STEP_FLOOR_REL * cfg.bound
    for it in range(1, cfg.max_iters + 1):
        if step < floor:
            break
        improved = False
        for i in range(cfg.pieces):
            for delta in (step, -step):
                cand = float(np.clip(vals[i] + delta, -cfg.bound, cfg.bound))
                if cand == vals[i]:
                    continue
                trial = vals.copy()
                trial[i] = cand
                j_trial = j_of(trial)
                if j_trial < best:
                    best, vals, improved = j_trial, trial, True
                    break
        trace.append((it, best))
        if not improved:
            step *= 0.5
    return tuple(float(v) for v in vals), best, tuple(trace)


def _restart_job(args):
    cfg, k, targets = args
    return k, _pattern_search(cfg, k, targets)


def search(config: SearchConfig | None = None) -> SearchResult:
    """Run the restarted search; deterministic for a fixed config.

    Restart 0 starts from the best constant potential, the rest from
    uniform draws in the box seeded by (config.seed, restart index).  The
    zero potential is kept as incumbent, so the reported best is never
    worse than the baseline.  Restarts are independent and run in
    parallel when more than one worker is available.
    """
    cfg = config or SearchConfig()
    targets = tuple(target_mu(n) for n in range(1, cfg.targets + 1))
    mesh = _uniform_mesh(cfg.pieces)

    zero = tuple(0.0 for _ in range(cfg.pieces))
    baseline = objective(PiecewiseConstant(mesh, zero), cfg.targets)

    jobs = [(cfg, k, targets) for k in range(cfg.restarts)]
    nw = min(worker_count(), cfg.restarts)
    if nw > 1:
        try:
            with ProcessPoolExecutor(max_workers=nw) as pool:
                outcomes = list(pool.map(_restart_job, jobs))
        except OSError:
            outcomes = [_restart_job(job) for job in jobs]
    else:
        outcomes = [_restart_job(job) for job in jobs]
    outcomes.sort(key=lambda pair: pair[0])

    best_vals, best_j = zero, baseline
    traces = []
    for k, (vals, j_val, trace) in outcomes:
        traces.append(trace)
        if j_val < best_j:
            best_vals, best_j = vals, j_val

    best_q = PiecewiseConstant(mesh, best_vals)
    spec = compute_spectrum(_assemble(best_q), cfg.targets)
    rows = []
    for ev, t in zip(spec.eigenvalues, targets):
        lam = invert_map(ev.value) if ev.value >= BRANCH_MIN else None
        rows.append(
            TargetRow(
                index=ev.index,
                prime=nth_prime(ev.index),
                target=t,
                achieved=ev.value,
                implied_lambda=lam,
            )
        )
    return SearchResult(
        config=cfg,
        best_q=best_q,
        best_objective=best_j,
        baseline_objective=baseline,
        trace=tuple(traces),
        per_target=tuple(rows),
    )
