"""Exact shooting across piecewise-constant coefficients.

On a piece of width h with constant (s, q, r) and k = lambda*r - q, the
system u' = -s v, v' = k u has the closed-form transfer matrix

    [ c(z)        -s h sigma(z) ]          z = s * k * h^2,
    [ k h sigma(z)      c(z)    ]

with c(z) = cos(sqrt(z)) and sigma(z) = sin(sqrt(z))/sqrt(z) continued
analytically through z = 0 (hyperbolic for z < 0).  Both kernels are
entire in z, so one formula covers oscillatory, linear and exponential
pieces, for real and complex lambda alike.

The Prufer angle theta is defined by u = rho sin(theta), v = -rho
cos(theta) with theta(a) = alpha; it satisfies

    theta' = s cos^2(theta) + (lambda r - q) sin^2(theta)

and crosses multiples of pi only upward wherever s > 0, which is what
makes eigenvalue counting exact: theta(b) is advanced per piece by the
principal angle difference plus pi times the number of interior zeros
of u, never by blind unwrapping.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .coeff import SLProblem
from .errors import NotRightDefinite, OutOfDomain

__all__ = [
    "State",
    "TransferMatrix",
    "AngleResult",
    "boundary_state",
    "phase_kernels",
    "piece_matrix",
    "integrate_system",
    "integrate_system_scaled",
    "prufer_angle",
]

# below this |z| the direct formulas lose digits to cancellation; the
# series with terms through z^4 is exact to ~1e-20 there
_SERIES_CUT = 1e-4

_PI = math.pi
_HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class State:
    """Solution pair (u, v) at a point; v is the quasi-derivative -p u'."""

    u: complex
    v: complex

    def norm_sq(self) -> float:
        return abs(self.u) ** 2 + abs(self.v) ** 2


def boundary_state(alpha: float) -> State:
    """Unit-amplitude state satisfying the left condition u cos(alpha) + v sin(alpha) = 0."""
    return State(math.sin(alpha), -math.cos(alpha))


@dataclass(frozen=True)
class TransferMatrix:
    m11: complex
    m12: complex
    m21: complex
    m22: complex

    @property
    def det(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21

    def apply(self, state: State) -> State:
        return State(
            self.m11 * state.u + self.m12 * state.v,
            self.m21 * state.u + self.m22 * state.v,
        )

    def __matmul__(self, other: "TransferMatrix") -> "TransferMatrix":
        return TransferMatrix(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )


def _kernel_series(z):
    """Taylor kernels for |z| < 1e-4; truncation error below 1e-20."""
    c = 1.0 + z * (-1.0 / 2 + z * (1.0 / 24 + z * (-1.0 / 720 + z * (1.0 / 40320))))
    sg = 1.0 + z * (-1.0 / 6 + z * (1.0 / 120 + z * (-1.0 / 5040 + z * (1.0 / 362880))))
    return c, sg


def phase_kernels(z):
    """(c, sigma) = (cos sqrt(z), sin sqrt(z)/sqrt(z)) for real or complex z."""
    if isinstance(z, complex):
        if abs(z) < _SERIES_CUT:
            return _kernel_series(z)
        w = cmath.sqrt(z)
        return cmath.cos(w), cmath.sin(w) / w
    if abs(z) < _SERIES_CUT:
        return _kernel_series(z)
    if z > 0.0:
        w = math.sqrt(z)
        return math.cos(w), math.sin(w) / w
    w = math.sqrt(-z)
    return math.cosh(w), math.sinh(w) / w


def piece_matrix(s: float, q: float, r: float, lam, h: float) -> TransferMatrix:
    """Exact transfer matrix across one constant piece of width h."""
    if h <= 0.0:
        raise OutOfDomain(f"piece width must be positive, got {h}")
    k = lam * r - q
    z = s * k * h * h
    c, sg = phase_kernels(z)
    return TransferMatrix(c, -s * h * sg, k * h * sg, c)


def integrate_system(problem: SLProblem, lam, init: State | None = None) -> State:
    """Propagate init (default: the left boundary state) from a to b.

    Plain matrix product; entries can overflow for |Im sqrt(z)| beyond
    ~700 on a single piece -- use integrate_system_scaled for moduli that
    large.
    """
    state = boundary_state(problem.bc.alpha) if init is None else init
    widths, svals, qvals, rvals = problem.coeffs.piece_arrays()
    for h, s, q, r in zip(widths, svals, qvals, rvals):
        state = piece_matrix(s, q, r, lam, h).apply(state)
    return state


def _scaled_piece(s, q, r, lam, h):
    """Scaled matrix entries (m11, m12, m21, m22, ls): true matrix = e^ls * M."""
    k = lam * r - q
    z = s * k * h * h
    zc = complex(z)
    w = cmath.sqrt(zc)
    m = abs(w.imag)
    if m < 30.0:
        c, sg = phase_kernels(zc)
        return c, -s * h * sg, k * h * sg, c, 0.0
    # cos w = (e^{iw} + e^{-iw})/2, sin w likewise; factor e^m out so both
    # exponentials have nonpositive real part
    e1 = cmath.exp(1j * w - m)
    e2 = cmath.exp(-1j * w - m)
    c = 0.5 * (e1 + e2)
    sg = (-0.5j * (e1 - e2)) / w
    return c, -s * h * sg, k * h * sg, c, m


def _propagate_scaled(widths, svals, qvals, rvals, lam, u, v):
    """Normalized propagation; returns (u, v, log_scale) with true state = e^log_scale * (u, v)."""
    ls = 0.0
    for h, s, q, r in zip(widths, svals, qvals, rvals):
        m11, m12, m21, m22, piece_ls = _scaled_piece(s, q, r, lam, h)
        u, v = m11 * u + m12 * v, m21 * u + m22 * v
        ls += piece_ls
        n = max(abs(u), abs(v))
        if n > 0.0:
            u /= n
            v /= n
            ls += math.log(n)
    return u, v, ls


def integrate_system_scaled(problem: SLProblem, lam, init: State | None = None):
    """Like integrate_system but overflow-free: returns (State, log_scale).

    The true terminal state is e^log_scale times the returned one; use the
    log form directly when |lambda| is large enough that exp would overflow.
    """
    state = boundary_state(problem.bc.alpha) if init is None else init
    widths, svals, qvals, rvals = problem.coeffs.piece_arrays()
    u, v, ls = _propagate_scaled(
        widths, svals, qvals, rvals, complex(lam), complex(state.u), complex(state.v)
    )
    return State(u, v), ls


@dataclass(frozen=True)
class AngleResult:
    """theta(b) together with the number of pi-crossings on (a, b]."""

    theta_b: float
    winding: int


def _start_sign(u, v):
    # sign of u just inside the piece; at u == 0 it is the sign of u'(0+) = -s v
    if u > 0.0:
        return 1
    if u < 0.0:
        return -1
    return 1 if v < 0.0 else -1


def _parity_fixed(zc, ss, end_sign, end_frac):
    """Reconcile the closed-form crossing count with the propagated end sign.

    Roundoff can mis-bin a zero that falls on a piece boundary; the count
    is then off by one, which would shift theta by a whole pi.  Parity of
    the count must match the sign flip of u, so adjust by +-1, direction
    chosen by which side of a pi-multiple the phase ended on.
    """
    predicted = ss if zc % 2 == 0 else -ss
    if predicted == end_sign:
        return zc
    adjusted = zc + (1 if end_frac > _HALF_PI else -1)
    return adjusted if adjusted >= 0 else zc + 1


def _theta_scan(widths, svals, qvals, rvals, alpha, lam):
    """Crossing count and terminal angle fraction for real lambda.

    Returns (winding, frac, u, v) with theta(b) = winding*pi + frac and
    (u, v) the (rescaled) terminal state.  The angle is exact mod pi at
    every breakpoint because frac always comes from the state itself.
    """
    u = math.sin(alpha)
    v = -math.cos(alpha)
    winding = 0
    for h, s, q, r in zip(widths, svals, qvals, rvals):
        k = lam * r - q
        if s == 0.0:
            # u is frozen on the piece; theta cannot reach a multiple of pi
            v += k * h * u
        else:
            z = s * k * h * h
            ss = _start_sign(u, v)
            if z > _SERIES_CUT:
                # oscillatory: psi = atan2(w u, -s h v) advances exactly
                # linearly (by w) across the piece, and u = 0 iff psi is a
                # multiple of pi, so crossings are a floor count
                w = math.sqrt(z)
                cw = math.cos(w)
                sg = math.sin(w) / w
                u1 = cw * u - s * h * sg * v
                v1 = k * h * sg * u + cw * v
                psi0 = math.atan2(w * u, -s * h * v)
                psi1 = psi0 + w
                zc = math.floor(psi1 / _PI) - math.floor(psi0 / _PI)
                end_frac = psi1 - _PI * math.floor(psi1 / _PI)
                if u1 != 0.0:
                    zc = _parity_fixed(zc, ss, 1 if u1 > 0.0 else -1, end_frac)
                else:
                    # zero exactly at the right end: it belongs to this piece,
                    # and the sign just before it is that of v1
                    before = 1 if v1 > 0.0 else -1
                    zc = _parity_fixed(zc - 1, ss, before, end_frac) + 1
            else:
                if z < -_SERIES_CUT:
                    w = math.sqrt(-z)
                    if w > 35.0:
                        # drop the e^w growth factor; only the direction matters
                        e = math.exp(-2.0 * w)
                        cw = 0.5 * (1.0 + e)
                        sg = 0.5 * (1.0 - e) / w
                    else:
                        cw = math.cosh(w)
                        sg = math.sinh(w) / w
                else:
                    cw, sg = _kernel_series(z)
                u1 = cw * u - s * h * sg * v
                v1 = k * h * sg * u + cw * v
                # non-oscillatory: at most one zero in (0, h], seen as a sign flip
                if u1 == 0.0:
                    zc = 1
                else:
                    zc = 1 if (ss > 0) != (u1 > 0.0) else 0
            u, v = u1, v1
            winding += zc
        n = abs(u) + abs(v)
        if n > 1e120 or n < 1e-120:
            u /= n
            v /= n
    raw = math.atan2(u, -v)
    # map into [0, pi]; raw can round to exactly +-pi when u(b) is a few
    # ulp from zero, and a floor-based mod would then steal a whole pi
    frac = raw + _PI if raw < 0.0 else raw
    return winding, frac, u, v


def prufer_angle(problem: SLProblem, lam: float) -> AngleResult:
    """theta(b; lambda) for real lambda on a right-definite problem.

    Raises NotRightDefinite when s or r vanishes identically: the angle
    is still defined then, but it can no longer locate eigenvalues (theta
    would be frozen or lambda-independent).
    """
    if isinstance(lam, complex) or not math.isfinite(lam):
        raise OutOfDomain(f"prufer_angle needs real finite lambda, got {lam!r}")
    widths, svals, qvals, rvals = problem.coeffs.piece_arrays()
    if not any(v > 0.0 for v in svals):
        raise NotRightDefinite("s vanishes identically; u cannot oscillate")
    if not any(v > 0.0 for v in rvals):
        raise NotRightDefinite("r vanishes identically; theta(b) does not depend on lambda")
    winding, frac, _, _ = _theta_scan(widths, svals, qvals, rvals, problem.bc.alpha, lam)
    return AngleResult(theta_b=winding * _PI + frac, winding=winding)
