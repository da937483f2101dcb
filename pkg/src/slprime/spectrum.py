"""Eigenvalue location by bisection on the terminal Prufer angle.

theta(b; lambda) is non-decreasing in lambda for right-definite problems,
so the n-th eigenvalue is the unique real root of

    theta(b; lambda) = beta + (n - 1) pi.

Brackets start from the Weyl guess lambda ~ (n pi / C)^2 and expand
geometrically; expansion that reaches the lambda cap without attaining
the target angle raises EigenvalueNotFound, which for Atkinson-type
problems is the expected way a finite spectrum announces its end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .coeff import CoefficientSet, SLProblem, weyl_constant
from .errors import EigenvalueNotFound, InsufficientData, NotRightDefinite, OutOfDomain
from .shoot import _theta_scan

__all__ = [
    "SolverOptions",
    "Eigenvalue",
    "Spectrum",
    "WeylFit",
    "eigenvalue",
    "compute_spectrum",
    "weyl_fit",
]

_PI = math.pi


@dataclass(frozen=True)
class SolverOptions:
    """Tolerances and the bracket cap; defaults match the CLI defaults."""

    angle_tol: float = 1e-10
    lambda_tol_abs: float = 1e-10
    lambda_tol_rel: float = 1e-12
    lambda_cap: float = 1e12


DEFAULT_OPTIONS = SolverOptions()


@dataclass(frozen=True)
class Eigenvalue:
    index: int
    value: float
    oscillation: int
    residual: float


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues 1..n of one problem, possibly truncated below the request."""

    problem_hash: str
    eigenvalues: tuple[Eigenvalue, ...]
    n_requested: int
    truncated: bool = False
    truncation_note: str | None = None

    def values(self) -> list[float]:
        return [ev.value for ev in self.eigenvalues]

    def csv_rows(self):
        return [
            (ev.index, ev.value, ev.oscillation, ev.residual) for ev in self.eigenvalues
        ]


def _solver_pieces(problem: SLProblem):
    widths, svals, qvals, rvals = problem.coeffs.piece_arrays()
    if not any(v > 0.0 for v in svals):
        raise NotRightDefinite("s vanishes identically; u cannot oscillate")
    if not any(v > 0.0 for v in rvals):
        raise NotRightDefinite("r vanishes identically; theta(b) does not depend on lambda")
    return widths, svals, qvals, rvals


def eigenvalue(
    problem: SLProblem, n: int, opts: SolverOptions = DEFAULT_OPTIONS
) -> Eigenvalue:
    """n-th eigenvalue (n >= 1) by bracket expansion + bisection on theta(b)."""
    if n < 1:
        raise OutOfDomain(f"eigenvalue index must be >= 1, got {n}")
    pieces = _solver_pieces(problem)
    alpha, beta = problem.bc.alpha, problem.bc.beta
    target = beta + (n - 1) * _PI

    def theta(lam: float):
        winding, frac, _, _ = _theta_scan(*pieces, alpha, lam)
        return winding * _PI + frac, winding, frac

    c = weyl_constant(problem.coeffs)
    guess = (n * _PI / c) ** 2 if c > 0.0 else float(n * n)
    cap = opts.lambda_cap
    guess = min(cap, max(-cap, guess))

    th_g, _, _ = theta(guess)
    step = max(1.0, 0.05 * abs(guess))
    if th_g >= target:
        hi, lo = guess, max(guess - step, -cap)
        while theta(lo)[0] >= target:
            if lo <= -cap:
                raise EigenvalueNotFound(
                    f"no lambda above -{cap:g} brings theta(b) below the target angle "
                    f"{target:.6g} for n = {n}",
                    index=n,
                    cap=cap,
                )
            hi = lo
            step *= 2.0
            lo = max(guess - step, -cap)
    else:
        lo, hi = guess, min(guess + step, cap)
        while theta(hi)[0] < target:
            if hi >= cap:
                raise EigenvalueNotFound(
                    f"theta(b) stays below the target angle {target:.6g} up to the "
                    f"lambda cap {cap:g}; no eigenvalue n = {n}",
                    index=n,
                    cap=cap,
                )
            lo = hi
            step *= 2.0
            hi = min(guess + step, cap)

    # bisect: theta(lo) < target <= theta(hi)
    lam_hat = th_hat = wind_hat = frac_hat = None
    for _ in range(300):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        th, wind, frac = theta(mid)
        lam_hat, th_hat, wind_hat, frac_hat = mid, th, wind, frac
        if th < target:
            lo = mid
        else:
            hi = mid
        tol = max(opts.lambda_tol_abs, opts.lambda_tol_rel * abs(mid))
        if (hi - lo) <= tol and abs(th - target) <= opts.angle_tol:
            break
    if lam_hat is None:
        lam_hat = hi
        th_hat, wind_hat, frac_hat = theta(hi)

    residual = abs(th_hat - target)
    # a terminal crossing counted in the winding is the boundary zero at b,
    # not an interior one; frac ~ 0 is the signature of that configuration
    kappa = min(1e-8, 0.5 * beta)
    oscillation = wind_hat - 1 if frac_hat < kappa else wind_hat
    return Eigenvalue(index=n, value=lam_hat, oscillation=oscillation, residual=residual)


def compute_spectrum(
    problem: SLProblem, n_max: int, opts: SolverOptions = DEFAULT_OPTIONS
) -> Spectrum:
    """Eigenvalues 1..n_max; stops early (truncated=True) once an index has none."""
    if n_max < 1:
        raise OutOfDomain(f"n_max must be >= 1, got {n_max}")
    found: list[Eigenvalue] = []
    note = None
    for n in range(1, n_max + 1):
        try:
            found.append(eigenvalue(problem, n, opts))
        except EigenvalueNotFound as err:
            note = f"TRUNCATED at n = {n}: {err}"
            break
    return Spectrum(
        problem_hash=problem.content_hash(),
        eigenvalues=tuple(found),
        n_requested=n_max,
        truncated=note is not None,
        truncation_note=note,
    )


@dataclass(frozen=True)
class WeylFit:
    """Median growth constant of lambda_n / n^2 against the reference pi^2/C^2."""

    fitted: float
    reference: float
    deviation: float
    per_n: tuple[tuple[int, float, float], ...] = field(repr=False)


def weyl_fit(spectrum: Spectrum, coeffs: CoefficientSet) -> WeylFit:
    """Fit lambda_n ~ K n^2 (median over the top half of indices) and compare to pi^2/C^2."""
    evs = spectrum.eigenvalues
    if len(evs) < 10:
        raise InsufficientData(
            f"weyl_fit needs at least 10 eigenvalues, got {len(evs)}"
        )
    c = weyl_constant(coeffs)
    reference = (_PI / c) ** 2 if c > 0.0 else math.inf
    ratios = [(ev.index, ev.value / ev.index**2) for ev in evs]
    half = [val for idx, val in ratios if idx > len(evs) // 2]
    half.sort()
    mid = len(half) // 2
    fitted = half[mid] if len(half) % 2 == 1 else 0.5 * (half[mid - 1] + half[mid])
    deviation = abs(fitted - reference) / reference if math.isfinite(reference) else math.nan
    per_n = tuple(
        (idx, val, abs(val - reference) / reference if math.isfinite(reference) else math.nan)
        for idx, val in ratios
    )
    return WeylFit(fitted=fitted, reference=reference, deviation=deviation, per_n=per_n)
