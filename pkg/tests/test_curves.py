import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from slagkit.curves import (
    CurveKind,
    CurveParams,
    alpha_closed_form,
    alpha_phases,
    critical_radii,
    curve_velocity,
    gamma_c_curve,
    gamma_c_velocity,
    gamma_closedness,
    gamma_period,
    gamma_period_ode,
    gamma_special,
    integrate_alpha,
    integrate_gamma,
    lambda_pq,
    monomial,
)
from slagkit.errors import EqualityCaseError, VertexSingularityError


def alpha(p, q, a):
    return CurveParams(p, q, a, CurveKind.ALPHA)


def gamma(p, q, b):
    return CurveParams(p, q, b, CurveKind.GAMMA)


# -- parameters ---------------------------------------------------------------

@pytest.mark.parametrize("bad", [dict(p=-1), dict(p=1.5), dict(init=(0.0, 1.0)), dict(init=(1.0, -2.0)),
                                 dict(init=(1.0,)), dict(init=(1.0, math.inf))])
def test_curve_params_rejects_invalid(bad):
    kw = dict(p=0, q=0, init=(1.0, 1.0), kind="alpha") | bad
    with pytest.raises(ValueError):
        CurveParams(**kw)


def test_curve_params_derived_values():
    prm = alpha(2, 3, (1, 2))
    assert prm.n == 7
    assert prm.conserved_value == -3
    assert prm.line_value == 16
    assert gamma(1, 0, (1, 2)).conserved_value == 5


# -- velocities at real initial data -------------------------------------------

def test_alpha_velocity_at_unit_data():
    v = curve_velocity(alpha(0, 0, (1, 1)), np.array([1.0, 1.0]))
    np.testing.assert_allclose(v, [1j, 1j], atol=0)


def test_gamma_velocity_at_unit_data():
    v = curve_velocity(gamma(0, 0, (1, 1)), np.array([1.0, 1.0]))
    np.testing.assert_allclose(v, [1j, -1j], atol=0)


def test_velocity_solves_defining_equation(rng):
    # v_j conj(z_j) must equal (+-) i conj(monomial)
    for kind, signs in (("alpha", (1, 1)), ("gamma", (1, -1))):
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        prm = CurveParams(2, 1, (1, 1), kind)
        v = curve_velocity(prm, z)
        m = np.conj(monomial(2, 1, z))
        np.testing.assert_allclose(v * np.conj(z), np.array(signs) * 1j * m, rtol=1e-13)


# -- integration ----------------------------------------------------------------

def test_alpha_unit_conservation():
    smp = integrate_alpha(alpha(0, 0, (1, 1)), 1.0, tol=1e-10)
    assert not smp.truncated
    assert np.max(np.abs(smp.residual_conserved)) < 1e-8


def test_alpha_line_value_p2_q3():
    smp = integrate_alpha(alpha(2, 3, (1, 2)), 1.0, tol=1e-10)
    re = monomial(2, 3, smp.points).real
    assert np.max(np.abs(re - 16.0)) < 1e-8


def test_alpha_p0q0_matches_hyperbolic_solution():
    # with a = (1, 1) both components solve alpha' = i conj(alpha); w = alpha^2 then has
    # w' = 2i|w| with Re w = 1, so w = 1 + i sinh 2t
    smp = integrate_alpha(alpha(0, 0, (1, 1)), 2.0, tol=1e-10, escape=None)
    z = smp.points[:, 0]
    np.testing.assert_allclose(z ** 2, 1 + 1j * np.sinh(2 * smp.ts), rtol=1e-8)
    np.testing.assert_allclose(smp.points[:, 1], z, rtol=1e-12)


def test_alpha_blow_up_truncates_symmetrically():
    smp = integrate_alpha(alpha(2, 3, (1, 2)), 5.0)
    assert smp.truncated
    assert 0 < smp.t_reached < 5.0
    assert smp.ts[-1] == pytest.approx(smp.t_reached)
    assert smp.ts[0] == -smp.ts[-1]
    assert np.max(np.abs(monomial(2, 3, smp.points))) <= 100 * 16 * (1 + 1e-6)


def test_alpha_drift_bounded_by_tol_multiple():
    tol = 1e-9
    smp = integrate_alpha(alpha(1, 2, (0.7, 1.3)), 3.0, tol=tol)
    cons, line = smp.max_drift
    assert cons <= 100 * tol
    assert line <= 100 * tol * max(1, smp.params.line_value)


@pytest.mark.parametrize("kind", ["alpha", "gamma"])
def test_conjugate_symmetry(kind):
    prm = CurveParams(1, 2, (0.8, 1.1), kind)
    smp = (integrate_alpha if kind == "alpha" else integrate_gamma)(prm, 1.0, num=101)
    np.testing.assert_allclose(smp.points[::-1], np.conj(smp.points), atol=1e-9)


def test_gamma_sum_conserved_over_long_run():
    b = (1.0, 1 / math.sqrt(2))
    smp = integrate_gamma(gamma(1, 0, b), 10.0)
    assert np.max(np.abs(np.sum(np.abs(smp.points) ** 2, axis=1) - 1.5)) < 1e-8


def test_gamma_matches_explicit_curve():
    smp = integrate_gamma(gamma(1, 0, (1, 1 / math.sqrt(2))), 10.0)
    np.testing.assert_allclose(smp.points, gamma_special(1, 0, smp.ts), atol=1e-6)


def test_sample_arrays_are_read_only():
    smp = integrate_gamma(gamma(0, 0, (1, 0.5)), 1.0, num=5)
    with pytest.raises(ValueError):
        smp.points[0, 0] = 0


def test_invalid_integration_arguments():
    with pytest.raises(ValueError):
        integrate_alpha(alpha(0, 0, (1, 1)), -1.0)
    with pytest.raises(ValueError):
        integrate_gamma(gamma(0, 0, (1, 1)), 1.0, tol=0)
    with pytest.raises(ValueError):
        integrate_gamma(alpha(0, 0, (1, 1)), 1.0)


# -- closed form ------------------------------------------------------------------

def test_closed_form_at_zero_is_initial_data():
    z = alpha_closed_form(alpha(3, 1, (0.6, 1.7)), 0.0)
    np.testing.assert_array_equal(z, [0.6, 1.7])


def test_closed_form_symmetric_data_equal_phases():
    z = alpha_closed_form(alpha(0, 0, (1, 1)), 0.5)
    np.testing.assert_allclose(np.abs(z), [math.sqrt(1.25)] * 2, rtol=1e-15)
    assert np.angle(z[0]) == pytest.approx(np.angle(z[1]), abs=1e-14)


def test_closed_form_p0q0_phase_against_analytic():
    # a = (1, 1), p = q = 0: integrand x / ((x^2+1) sqrt((1+x^2)^2 - 1)) = 1/((x^2+1) sqrt(x^2+2))
    # whose antiderivative is arctan(x / sqrt(x^2 + 2))
    s = 0.9
    th, _ = alpha_phases(alpha(0, 0, (1, 1)), s)
    assert th == pytest.approx(math.atan(s / math.sqrt(s * s + 2)), abs=1e-13)


def test_phase_series_branch_is_continuous():
    # the integrand switches to its series just below 1e-3 min(a); across the switch the
    # phase must grow by integrand * ds, with integrand ~ 1 / (a_1^2 sqrt(kappa))
    prm = alpha(2, 1, (1.0, 2.0))
    eps = 1e-3 * 1.0
    ds = 2e-9 * eps
    below, _ = alpha_phases(prm, eps - ds / 2)
    above, _ = alpha_phases(prm, eps + ds / 2)
    kappa = 3 / 1.0 + 2 / 4.0
    assert abs((above - below) - ds / math.sqrt(kappa)) < 1e-16


def _closed_form_vs_ode(p, q, a, s):
    prm = alpha(p, q, a)
    z_cf = alpha_closed_form(prm, s)
    rho1 = math.sqrt(s * s + a[0] ** 2)

    # locate t with |alpha_1(t)| = rho1 on the integrated curve
    def crossing(t, y):
        return y[0] ** 2 + y[1] ** 2 - rho1 ** 2

    crossing.terminal = True
    rhs = lambda t, y: _real(curve_velocity(prm, np.array([y[0] + 1j * y[1], y[2] + 1j * y[3]])))
    sign = 1 if s > 0 else -1
    sol = integrate.solve_ivp(rhs, (0, sign * 50.0), [a[0], 0, a[1], 0], method="DOP853", rtol=1e-12,
                              atol=1e-14, events=crossing)
    y = sol.y_events[0][0]
    return z_cf, np.array([y[0] + 1j * y[1], y[2] + 1j * y[3]])


def _real(z):
    return np.array([z[0].real, z[0].imag, z[1].real, z[1].imag])


def test_closed_form_agrees_with_ode_reparameterized():
    z_cf, z_ode = _closed_form_vs_ode(1, 0, (1.0, 1.0), 0.7)
    np.testing.assert_allclose(z_cf, z_ode, atol=1e-6)


@settings(max_examples=100, deadline=None)
@given(p=st.integers(0, 4), q=st.integers(0, 4), a1=st.floats(0.5, 2.0), a2=st.floats(0.5, 2.0),
       s=st.floats(-1.5, 1.5).filter(lambda v: abs(v) > 1e-3))
def test_closed_form_agrees_with_ode_random(p, q, a1, a2, s):
    z_cf, z_ode = _closed_form_vs_ode(p, q, (a1, a2), s)
    np.testing.assert_allclose(z_cf, z_ode, atol=1e-6)


@settings(max_examples=30, deadline=None)
@given(p=st.integers(0, 3), q=st.integers(0, 3), s=st.floats(0.01, 3.0))
def test_phases_odd_and_increasing(p, q, s):
    prm = alpha(p, q, (0.9, 1.4))
    th = np.array(alpha_phases(prm, s))
    th_neg = np.array(alpha_phases(prm, -s))
    th_more = np.array(alpha_phases(prm, s * 1.01))
    np.testing.assert_allclose(th_neg, -th, rtol=1e-14)
    assert np.all(th > 0) and np.all(th_more > th)


# -- explicit gamma and lambda -------------------------------------------------------

def test_lambda_values():
    assert lambda_pq(0, 0) == 1.0
    assert lambda_pq(1, 0) == pytest.approx(2.0)
    lam = lambda_pq(2, 3)
    assert lam ** 5 == pytest.approx(3 ** 2 * 4 ** 3)


def test_gamma_special_initial_point():
    np.testing.assert_allclose(gamma_special(1, 0, 0.0), [1, 1 / math.sqrt(2)], rtol=1e-15)


def test_gamma_special_monomial_constant():
    t = np.linspace(-7, 7, 41)
    z = gamma_special(1, 0, t)
    np.testing.assert_allclose(monomial(1, 0, z), 1 / math.sqrt(2), atol=1e-14)


def test_gamma_special_unit_circles():
    t = np.linspace(0, 2 * math.pi, 9)
    np.testing.assert_allclose(gamma_special(0, 0, t), np.stack([np.exp(1j * t), np.exp(-1j * t)], -1),
                               atol=1e-15)


@pytest.mark.parametrize("p,q", [(0, 0), (1, 0), (2, 3), (4, 1)])
def test_gamma_special_solves_ode(p, q):
    t = np.linspace(-3, 3, 13)
    z = gamma_special(p, q, t)
    h = 1e-5
    fd = (gamma_special(p, q, t + h) - gamma_special(p, q, t - h)) / (2 * h)
    np.testing.assert_allclose(fd, curve_velocity(gamma(p, q, (1, 1)), z), atol=1e-8)


# -- critical radii, period, closedness -----------------------------------------------

def test_critical_radii_equality_unit():
    assert critical_radii(0, 0, (1, 1)) == (0.5,)


def test_critical_radii_quadratic():
    # 1.25^2 x (1-x) = 0.25  ->  x (1-x) = 0.16, roots 0.2 and 0.8
    lo, hi = critical_radii(0, 0, (1, 0.5))
    assert lo == pytest.approx(0.2, abs=1e-14)
    assert hi == pytest.approx(0.8, abs=1e-14)


def test_critical_radii_explicit_gamma_double_root():
    b = (1.0, 1 / math.sqrt(2))
    (x,) = critical_radii(1, 0, b)
    assert x == pytest.approx(2 / 3, abs=1e-14)


@settings(max_examples=40, deadline=None)
@given(p=st.integers(0, 4), q=st.integers(0, 4), b1=st.floats(0.3, 2.0), b2=st.floats(0.3, 2.0))
def test_initial_radius_is_critical(p, q, b1, b2):
    radii = critical_radii(p, q, (b1, b2))
    x0 = b1 * b1 / (b1 * b1 + b2 * b2)
    assert min(abs(r - x0) for r in radii) < 1e-9
    assert all(0 <= r <= 1 for r in radii)


def test_period_p0q0_is_pi():
    # for p = q = 0, |gamma_1|^2 oscillates like a harmonic oscillator with period pi
    rep = gamma_period(0, 0, (1, 0.5))
    assert rep.period == pytest.approx(math.pi, rel=1e-12)
    assert rep.period_check == pytest.approx(rep.period, rel=1e-6)


def test_period_general_matches_ode():
    rep = gamma_period(2, 1, (0.9, 0.7))
    assert rep.period_check == pytest.approx(rep.period, rel=1e-6)
    lo, hi = rep.critical_radii
    smp = integrate_gamma(gamma(2, 1, (0.9, 0.7)), rep.period, num=400)
    x = np.abs(smp.points[:, 0]) ** 2 / np.sum(np.abs(smp.points) ** 2, axis=1)
    assert np.all(x >= lo - 1e-8) and np.all(x <= hi + 1e-8)


def test_period_equality_case_rejected():
    with pytest.raises(EqualityCaseError, match="equality case"):
        gamma_period(0, 0, (1, 1))


def test_ode_period_event_detection_independent():
    assert gamma_period_ode(1, 1, (1.0, 0.6)) == pytest.approx(gamma_period(1, 1, (1.0, 0.6), False).period,
                                                               rel=1e-8)


def test_closedness_explicit_curve():
    rep = gamma_closedness(1, 0, (1, 1 / math.sqrt(2)))
    assert rep.verdict == "closed"
    assert rep.degenerate
    assert rep.fundamental_period == pytest.approx(2 * math.sqrt(2) * math.pi, rel=1e-12)
    # the curve really does close at that time
    z0 = gamma_special(1, 0, 0.0)
    np.testing.assert_allclose(gamma_special(1, 0, rep.fundamental_period), z0, atol=1e-12)


def test_closedness_unit_circles():
    rep = gamma_closedness(0, 0, (1, 1))
    assert rep.verdict == "closed"
    assert rep.fundamental_period == pytest.approx(2 * math.pi)


def test_closedness_winding_integrals_by_direct_quadrature():
    p, q, b = 0, 0, (1.0, 0.5)
    rep = gamma_closedness(p, q, b, max_denominator=50)
    smp = integrate_gamma(gamma(p, q, b), rep.period / 2, num=4001)
    c = b[0] ** (p + 1) * b[1] ** (q + 1)
    for j in (0, 1):
        direct = c / (2 * math.pi) * integrate.simpson(1 / np.abs(smp.points[:, j]) ** 2, x=smp.ts)
        assert direct == pytest.approx(rep.winding_integrals[j], rel=1e-7)


def test_closedness_classifier_fields():
    rep = gamma_closedness(0, 0, (1, 0.5), tol=1e-12, max_denominator=50)
    if rep.closed is None:
        assert rep.verdict == "not closed within tolerance"
        assert len(rep.extra["candidates"]) == 2
    else:
        for w, r in zip(rep.winding_integrals, rep.closed):
            assert abs(w - float(r)) <= 1e-12


# -- cone generators -----------------------------------------------------------------

def test_gamma_c_values():
    assert gamma_c_curve(2, 1.0, 0.0) == 1
    assert gamma_c_curve(2, 1.0, math.sqrt(3)) == pytest.approx(math.sqrt(2) * np.exp(1j * math.pi / 6))
    assert gamma_c_curve(3, 0.0, 1.0) == pytest.approx(np.exp(1j * math.pi / 6))


def test_gamma_c_vertex_rejected():
    with pytest.raises(VertexSingularityError):
        gamma_c_curve(3, 0.0, 0.0)


@settings(max_examples=50, deadline=None)
@given(n=st.integers(1, 8), c=st.floats(0.1, 3.0), s=st.floats(-5, 5))
def test_gamma_c_power_and_velocity(n, c, s):
    g = gamma_c_curve(n, c, s)
    assert g ** n == pytest.approx(c + 1j * s, rel=1e-12, abs=1e-12)
    h = 1e-6
    fd = (gamma_c_curve(n, c, s + h) - gamma_c_curve(n, c, s - h)) / (2 * h)
    assert gamma_c_velocity(n, c, s) == pytest.approx(fd, abs=1e-7)
