"""Diagnostics for why a prime spectrum is out of reach for these problems.

Three independent signatures, each testable numerically:

* eigenvalues grow like n^2 while primes grow like n log n, so p_n/lambda_n
  decays to zero (incompatibility report);
* solutions are entire of order <= 1/2 in lambda (log-derivative growth
  bound and max-modulus order estimate), so sum |lambda_n|^(-1/2-eps)
  converges over any admissible spectrum;
* the same sum over the primes diverges (partial-sum dichotomy).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coeff import SLProblem
from .errors import (
    DegenerateModulus,
    EpsilonOutOfRange,
    InsufficientData,
    LimitTooLarge,
    OutOfDomain,
)
from .primes import sieve
from .shoot import _propagate_scaled
from .spectrum import Spectrum

__all__ = [
    "IncompatReport",
    "GrowthReport",
    "OrderEstimate",
    "incompatibility_report",
    "growth_check",
    "order_estimate",
    "partial_sum_primes",
    "partial_sum_spectrum",
]


@dataclass(frozen=True)
class IncompatReport:
    """Rows (n, lambda_n, p_n, p_n/lambda_n) plus a PASS/FAIL/INCONCLUSIVE verdict."""

    rows: tuple[tuple[int, float, int, float], ...] = field(repr=False)
    verdict: str
    note: str


def _prime_table_for(n: int):
    if n < 6:
        return sieve(15)
    ln = math.log(n)
    bound = math.ceil(n * (ln + math.log(ln))) + 10
    table = sieve(bound)
    while table.count < n:
        bound *= 2
        table = sieve(bound)
    return table


def incompatibility_report(spectrum: Spectrum, n_max: int) -> IncompatReport:
    """Tabulate p_n/lambda_n for n = 1..n_max and judge its decay.

    PASS requires the ratio to decrease across the top half of indices
    (compared block-wise, eight blocks, so local prime gaps do not mask
    the trend) and the final ratio to fall below 1% of the first.  Below
    n_max = 100 the trend is not yet meaningful and the verdict is
    withheld.
    """
    if n_max < 10:
        raise InsufficientData(f"need n_max >= 10, got {n_max}")
    if len(spectrum.eigenvalues) < n_max:
        raise InsufficientData(
            f"spectrum holds {len(spectrum.eigenvalues)} eigenvalues, report needs {n_max}"
        )
    table = _prime_table_for(n_max)
    rows = []
    for ev in spectrum.eigenvalues[:n_max]:
        p = table.nth(ev.index)
        rows.append((ev.index, ev.value, p, p / ev.value))
    if n_max < 100:
        return IncompatReport(
            rows=tuple(rows),
            verdict="INCONCLUSIVE",
            note=f"verdict withheld below n = 100 (got {n_max})",
        )
    ratios = np.array([row[3] for row in rows])
    top = ratios[n_max // 2 :]
    block_means = [chunk.mean() for chunk in np.array_split(top, 8)]
    decreasing = all(a > b for a, b in zip(block_means, block_means[1:]))
    final_small = ratios[-1] < 0.01 * ratios[0]
    if decreasing and final_small:
        verdict, note = "PASS", (
            f"ratio falls from {ratios[0]:.3e} to {ratios[-1]:.3e}; "
            "prime growth n log n cannot keep up with n^2 eigenvalues"
        )
    else:
        verdict = "FAIL"
        note = (
            f"block means not decreasing over the top half"
            if not decreasing
            else f"final ratio {ratios[-1]:.3e} not below 1% of first {ratios[0]:.3e}"
        )
    return IncompatReport(rows=tuple(rows), verdict=verdict, note=note)


@dataclass(frozen=True)
class GrowthReport:
    """Per-sample |d/dx log W| against the a-priori bound, W = |lambda| |u|^2 + |v|^2."""

    lam: complex
    samples: tuple[tuple[float, float, float, float], ...]  # (x, measured, bound, slack)
    min_slack: float
    passed: bool
    tol_rel: float = 1e-3


def _log_w(widths, svals, qvals, rvals, alpha, lam, x_rel) -> float:
    """log(|lambda| |u|^2 + |v|^2) at distance x_rel from the left end, overflow-free."""
    pw, ps, pq, pr = [], [], [], []
    acc = 0.0
    for h, s, q, r in zip(widths, svals, qvals, rvals):
        if acc + h < x_rel:
            pw.append(h)
            ps.append(s)
            pq.append(q)
            pr.append(r)
            acc += h
        else:
            tail = x_rel - acc
            if tail > 0.0:
                pw.append(tail)
                ps.append(s)
                pq.append(q)
                pr.append(r)
            break
    u, v, ls = _propagate_scaled(
        pw, ps, pq, pr, lam, complex(math.sin(alpha)), complex(-math.cos(alpha))
    )
    return math.log(abs(lam) * abs(u) ** 2 + abs(v) ** 2) + 2.0 * ls


def growth_check(problem: SLProblem, lam: complex, x_samples: int = 32) -> GrowthReport:
    """Check |d/dx log W| <= sqrt|lambda| (r + s) + |q|/sqrt|lambda| pointwise.

    The derivative is measured by centered differences of the exactly
    propagated solution.  Samples are distributed over the pieces with the
    stencil kept strictly inside a single piece (the bound is local, and a
    stencil straddling a coefficient jump would measure the neighbour).
    """
    lam = complex(lam)
    if abs(lam) < 1.0:
        raise OutOfDomain(f"growth bound needs |lambda| >= 1, got {abs(lam):g}")
    if x_samples < 1:
        raise OutOfDomain(f"x_samples must be >= 1, got {x_samples}")
    widths, svals, qvals, rvals = problem.coeffs.piece_arrays()
    total = sum(widths)
    alpha = problem.bc.alpha
    h_default = total / (4.0 * x_samples)
    sqrt_mod = math.sqrt(abs(lam))

    # allocate samples to pieces proportionally to width, at least one each
    alloc = [max(1, round(x_samples * h / total)) for h in widths]
    rows = []
    acc = 0.0
    for h, s, q, r, c in zip(widths, svals, qvals, rvals, alloc):
        h_fd = min(h_default, 0.45 * h / (c + 1))
        bound = sqrt_mod * (r + s) + abs(q) / sqrt_mod
        for j in range(c):
            x_rel = acc + (j + 1) * h / (c + 1)
            lw_plus = _log_w(widths, svals, qvals, rvals, alpha, lam, x_rel + h_fd)
            lw_minus = _log_w(widths, svals, qvals, rvals, alpha, lam, x_rel - h_fd)
            measured = (lw_plus - lw_minus) / (2.0 * h_fd)
            slack = bound - abs(measured)
            rows.append((problem.interval.a + x_rel, measured, bound, slack))
        acc += h
    min_slack = min(row[3] for row in rows)
    passed = all(slack >= -1e-3 * bound for _, _, bound, slack in rows)
    return GrowthReport(
        lam=lam, samples=tuple(rows), min_slack=min_slack, passed=passed
    )


@dataclass(frozen=True)
class OrderEstimate:
    """Least-squares slope of log log M(R) against log R; order 1/2 shows as ~0.5."""

    radii: tuple[float, ...]
    log_max_modulus: tuple[float, ...]
    slope: float
    low_confidence: bool
    used: tuple[bool, ...]


def order_estimate(
    problem: SLProblem, radii, angular_samples: int = 16
) -> OrderEstimate:
    """Max modulus of u(b; lambda) over circles |lambda| = R, fitted for the order.

    Radii spanning fewer than three decades are accepted but flagged
    low_confidence; radii where M(R) <= 10 are excluded from the fit to
    keep log log M away from its singularity.
    """
    radii = tuple(float(rr) for rr in radii)
    if len(radii) < 3:
        raise OutOfDomain(f"need at least 3 radii, got {len(radii)}")
    if any(r1 <= r0 for r0, r1 in zip(radii, radii[1:])) or radii[0] <= 0:
        raise OutOfDomain("radii must be positive and strictly increasing")
    if angular_samples < 4:
        raise OutOfDomain(f"angular_samples must be >= 4, got {angular_samples}")
    widths, svals, qvals, rvals = problem.coeffs.piece_arrays()
    alpha = problem.bc.alpha
    u0, v0 = complex(math.sin(alpha)), complex(-math.cos(alpha))
    log_m = []
    for rad in radii:
        best = -math.inf
        for j in range(angular_samples):
            lam = rad * complex(math.cos(2 * math.pi * j / angular_samples),
                                math.sin(2 * math.pi * j / angular_samples))
            u, _, ls = _propagate_scaled(widths, svals, qvals, rvals, lam, u0, v0)
            mag = abs(u)
            if mag > 0.0:
                best = max(best, math.log(mag) + ls)
        log_m.append(best)
    used = tuple(lm > math.log(10.0) for lm in log_m)
    xs = [math.log(rad) for rad, keep in zip(radii, used) if keep]
    ys = [math.log(lm) for lm, keep in zip(log_m, used) if keep]
    if len(xs) < 2:
        raise DegenerateModulus(
            "max modulus never exceeded 10; no order slope can be fitted"
        )
    slope = float(np.polyfit(xs, ys, 1)[0])
    low_confidence = radii[-1] < 1e3 * radii[0]
    return OrderEstimate(
        radii=radii,
        log_max_modulus=tuple(log_m),
        slope=slope,
        low_confidence=low_confidence,
        used=used,
    )


def _checkpoints(n: int) -> list[int]:
    ks = [10**k for k in range(3, 8) if 10**k <= n]
    if not ks or ks[-1] != n:
        ks.append(n)
    return ks


def partial_sum_primes(epsilon: float, n_terms: int):
    """Partial sums of sum p_n^(-(1/2+eps)) at decade checkpoints up to n_terms.

    The full series diverges for every eps < 1/2 (p_n ~ n log n makes the
    terms ~ n^(-(1/2+eps)) up to logs); the checkpoints grow without any
    visible ceiling, which is the divergent half of the dichotomy.
    """
    if not 0.0 < epsilon < 0.5:
        raise EpsilonOutOfRange(f"epsilon must lie in (0, 1/2), got {epsilon}")
    if n_terms < 1:
        raise OutOfDomain(f"need at least one term, got {n_terms}")
    if n_terms > 10**7:
        raise LimitTooLarge(f"n_terms capped at 1e7, got {n_terms}")
    table = _prime_table_for(n_terms)
    terms = table.primes[:n_terms].astype(np.float64) ** (-(0.5 + epsilon))
    sums = np.cumsum(terms)
    return tuple((m, float(sums[m - 1])) for m in _checkpoints(n_terms))


def partial_sum_spectrum(c: float, epsilon: float, n_terms: int):
    """Partial sums of sum (c n^2)^(-(1/2+eps)) with the analytic tail bound attached.

    Rows are (M, S(M), tail_bound(M)) with tail_bound(M) =
    c^(-(1/2+eps)) M^(-2 eps) / (2 eps) >= S(inf) - S(M): the convergent
    half of the dichotomy, valid for any model spectrum lambda_n = c n^2.
    """
    if not 0.0 < epsilon < 0.5:
        raise EpsilonOutOfRange(f"epsilon must lie in (0, 1/2), got {epsilon}")
    if c <= 0.0 or not math.isfinite(c):
        raise OutOfDomain(f"growth constant must be positive, got {c}")
    if n_terms < 1:
        raise OutOfDomain(f"need at least one term, got {n_terms}")
    if n_terms > 10**7:
        raise LimitTooLarge(f"n_terms capped at 1e7, got {n_terms}")
    expo = 0.5 + epsilon
    n = np.arange(1, n_terms + 1, dtype=np.float64)
    sums = np.cumsum((c * n**2) ** (-expo))
    scale = c ** (-expo)
    return tuple(
        (m, float(sums[m - 1]), scale * m ** (-2.0 * epsilon) / (2.0 * epsilon))
        for m in _checkpoints(n_terms)
    )
