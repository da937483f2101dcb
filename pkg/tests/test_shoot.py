"""Transfer-matrix propagation and the Pruefer angle against independent integrators."""

import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from helpers import hand_piece_matrix, random_problem, rk4_prufer_angle
from slprime.coeff import constant, make_piecewise, problem, unit_problem
from slprime.errors import NotRightDefinite, OutOfDomain
from slprime.shoot import (
    State,
    boundary_state,
    integrate_system,
    integrate_system_scaled,
    phase_kernels,
    piece_matrix,
    prufer_angle,
)

rng = np.random.default_rng(20260814)


def test_boundary_state_alignment():
    st = boundary_state(0.0)
    assert (st.u, st.v) == (0.0, -1.0)  # Dirichlet start: u = 0
    st = boundary_state(math.pi / 2)
    assert st.u == 1.0 and abs(st.v) < 1e-16
    # the state satisfies u cos(alpha) + v sin(alpha) = 0 for any alpha
    for alpha in rng.uniform(0, math.pi, 20):
        st = boundary_state(alpha)
        assert abs(st.u * math.cos(alpha) + st.v * math.sin(alpha)) < 1e-15


def test_phase_kernels_match_series_and_trig():
    # across the series/trig switchover the kernels must agree to machine precision
    for z in (1e-6, 9.9e-5, 1.01e-4, 1e-3, -1e-6, -9.9e-5, -1.01e-4, -1e-3):
        c, sig = phase_kernels(z)
        if z > 0:
            w = math.sqrt(z)
            assert c == pytest.approx(math.cos(w), abs=1e-15)
            assert sig == pytest.approx(math.sin(w) / w, abs=1e-15)
        else:
            w = math.sqrt(-z)
            assert c == pytest.approx(math.cosh(w), rel=1e-15)
            assert sig == pytest.approx(math.sinh(w) / w, rel=1e-15)
    c, sig = phase_kernels(0.0)
    assert (c, sig) == (1.0, 1.0)


def test_piece_matrix_against_hand_formulas():
    cases = [
        (2.0, 1.0, 3.0, 4.0, 0.25),
        (0.5, -1.0, 1.0, 4.0, 0.75),
        (1.0, 0.0, 1.0, -25.0, 1.0),
        (0.0, 3.0, 2.0, 7.0, 0.5),  # s = 0: shear piece
        (1.5, 2.0, 0.0, 9.0, 0.3),  # r = 0: lambda drops out
    ]
    for s, q, r, lam, h in cases:
        m = piece_matrix(s, q, r, lam, h)
        ref = hand_piece_matrix(s, q, r, lam, h)
        got = np.array([[m.m11, m.m12], [m.m21, m.m22]], dtype=float)
        assert np.allclose(got, ref, rtol=1e-13, atol=1e-15), (s, q, r, lam, h)


def test_piece_matrix_unimodular_in_safe_regime():
    # hyperbolic pieces: the determinant computed from float entries carries a
    # cancellation error ~ eps * cosh^2(sqrt(-z)), so 1e-10 is only testable
    # for z > -45 or so; oscillatory pieces are fine at any z
    for _ in range(200):
        s = float(rng.uniform(0, 2))
        q = float(rng.uniform(-30, 30))
        r = float(rng.uniform(0, 2))
        lam = float(rng.uniform(-300, 300))
        h = float(rng.uniform(0.05, 1.0))
        z = s * (lam * r - q) * h * h
        if z < -45.0:
            continue
        m = piece_matrix(s, q, r, lam, h)
        assert m.det == pytest.approx(1.0, abs=1e-10), (s, q, r, lam, h, z)


def test_matmul_matches_sequential_apply():
    m1 = piece_matrix(2.0, 1.0, 3.0, 5.0, 0.3)
    m2 = piece_matrix(0.0, -2.0, 1.0, 5.0, 0.6)
    st = State(0.3, -1.2)
    combined = (m2 @ m1).apply(st)
    stepped = m2.apply(m1.apply(st))
    assert combined.u == pytest.approx(stepped.u, rel=1e-14)
    assert combined.v == pytest.approx(stepped.v, rel=1e-14)


def test_integrate_system_against_solve_ivp():
    for trial in range(5):
        prob = random_problem(rng, max_pieces=4, q_scale=20.0)
        lam = float(rng.uniform(-60, 60))
        widths, sv, qv, rv = prob.coeffs.piece_arrays()
        bps = prob.coeffs.breakpoints

        def rhs(x, y):
            i = min(np.searchsorted(bps, x, side="right") - 1, len(sv) - 1)
            i = max(i, 0)
            return [-sv[i] * y[1], (lam * rv[i] - qv[i]) * y[0]]

        st0 = boundary_state(prob.bc.alpha)
        sol = solve_ivp(
            rhs,
            (bps[0], bps[-1]),
            [st0.u, st0.v],
            rtol=1e-11,
            atol=1e-12,
            dense_output=False,
            max_step=min(widths) / 4,
        )
        got = integrate_system(prob, lam)
        scale = max(1.0, abs(sol.y[0, -1]), abs(sol.y[1, -1]))
        assert abs(got.u - sol.y[0, -1]) / scale < 1e-7, trial
        assert abs(got.v - sol.y[1, -1]) / scale < 1e-7, trial


def test_integrate_split_consistency():
    # splitting a piece anywhere must not change the result (exact propagation)
    s = constant(1.3, 0.0, 2.0)
    q = constant(-4.0, 0.0, 2.0)
    r = constant(0.9, 0.0, 2.0)
    whole = problem(s, q, r)
    for lam in (-80.0, -1.0, 0.0, 17.0, 400.0):
        ref = integrate_system(whole, lam)
        mesh = (0.0, 0.17, 0.5, 1.111, 1.9, 2.0)
        split = problem(s.refine(mesh), q.refine(mesh), r.refine(mesh))
        got = integrate_system(split, lam)
        scale = max(abs(ref.u), abs(ref.v))
        assert abs(got.u - ref.u) / scale < 1e-12
        assert abs(got.v - ref.v) / scale < 1e-12


def test_scaled_propagation_matches_plain_when_safe():
    prob = unit_problem()
    for lam in (-500.0, 40.0, 1e4):
        plain = integrate_system(prob, lam)
        st, log_scale = integrate_system_scaled(prob, lam)
        u = st.u * math.exp(log_scale)
        v = st.v * math.exp(log_scale)
        scale = max(abs(plain.u), abs(plain.v))
        assert abs(u - plain.u) / scale < 1e-12
        assert abs(v - plain.v) / scale < 1e-12


def test_scaled_propagation_survives_huge_negative_lambda():
    # |lambda| = 1e10 over unit length: e^(1e5) overflows any float, the
    # scaled path must return finite pieces with the growth in log_scale
    st, log_scale = integrate_system_scaled(unit_problem(), -1e10)
    assert math.isfinite(abs(st.u)) and math.isfinite(abs(st.v))
    # closed form: u = sinh(w x)/w, v = -cosh(w x), w = 1e5
    assert log_scale + math.log(abs(st.v)) == pytest.approx(1e5 - math.log(2), rel=1e-9)
    assert log_scale + math.log(abs(st.u)) == pytest.approx(
        1e5 - math.log(2) - 5 * math.log(10), rel=1e-9
    )


def test_prufer_angle_unit_closed_form():
    # theta(b) at lam = (n pi)^2 equals n pi exactly for the unit problem
    prob = unit_problem()
    for n in (1, 2, 3, 10, 37):
        res = prufer_angle(prob, (n * math.pi) ** 2)
        assert res.theta_b == pytest.approx(n * math.pi, abs=1e-9)
    # strictly between eigenvalues the angle sits strictly between multiples of pi
    res = prufer_angle(prob, 2.5 * math.pi**2)
    assert math.pi < res.theta_b < 2 * math.pi


def test_prufer_angle_monotone_in_lambda():
    prob = random_problem(rng, max_pieces=3, allow_zero=False, q_scale=10.0)
    lams = np.linspace(-40.0, 900.0, 120)
    thetas = [prufer_angle(prob, float(l)).theta_b for l in lams]
    diffs = np.diff(thetas)
    assert (diffs > 0).all(), f"theta(b) must increase with lambda, min diff {diffs.min()}"


@pytest.mark.parametrize("trial", range(8))
def test_prufer_angle_against_rk4(trial):
    local = np.random.default_rng(7000 + trial)
    prob = random_problem(local, max_pieces=4, q_scale=15.0)
    lam = float(local.uniform(-50, 700))
    ref = rk4_prufer_angle(prob, lam)
    got = prufer_angle(prob, lam).theta_b
    assert got == pytest.approx(ref, abs=2e-5), (trial, lam)


def test_prufer_angle_winding_consistent():
    prob = unit_problem()
    res = prufer_angle(prob, (7.5 * math.pi) ** 2)
    # 7.5 oscillations: theta(b) = 7.5 pi, so the winding (floor) is 7
    assert res.winding == 7
    assert res.theta_b == pytest.approx(7.5 * math.pi, rel=1e-10)


def test_prufer_angle_requires_right_definite_content():
    s = make_piecewise([0.0, 1.0], [0.0])
    q = make_piecewise([0.0, 1.0], [1.0])
    r = make_piecewise([0.0, 1.0], [1.0])
    with pytest.raises(NotRightDefinite):
        prufer_angle(problem(s, q, r), 1.0)
    with pytest.raises(OutOfDomain):
        prufer_angle(unit_problem(), math.nan)


def test_piece_matrix_rejects_nonpositive_width():
    with pytest.raises(OutOfDomain):
        piece_matrix(1.0, 0.0, 1.0, 1.0, 0.0)
