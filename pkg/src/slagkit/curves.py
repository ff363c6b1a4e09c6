"""Plane-curve pairs alpha_a, gamma_b and the cone generators gamma_c.

The pairs solve

    alpha_j' conj(alpha_j) = i conj(alpha_1^(p+1) alpha_2^(q+1))
    gamma_j' conj(gamma_j) = (-1)^(j-1) i conj(gamma_1^(p+1) gamma_2^(q+1))

with real positive initial data.  Along alpha the quantities
|alpha_1|^2 - |alpha_2|^2 and Re(alpha_1^(p+1) alpha_2^(q+1)) are conserved;
along gamma the sum |gamma_1|^2 + |gamma_2|^2 and the same real part are.
Every integrated sample carries the drift of both so callers can see how
well the integrator kept them.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import integrate, optimize

from .errors import (
    DegenerateError,
    EqualityCaseError,
    IntegrationError,
    SingularRadiusError,
    VertexSingularityError,
)

#: |gamma_j| below this aborts integration.
GUARD_RADIUS = 1e-12
#: Relative gap below which the two critical radii are treated as one double root.
DOUBLE_ROOT_RTOL = 1e-12
#: The RK pair runs with local tolerance ``tol * STEP_TOL_FACTOR`` so that the
#: accumulated drift over many periods stays within ``100 * tol``.
STEP_TOL_FACTOR = 1e-2


class CurveKind(enum.Enum):
    ALPHA = "alpha"
    GAMMA = "gamma"


@dataclass(frozen=True)
class CurveParams:
    p: int
    q: int
    init: tuple[float, float]
    kind: CurveKind

    def __post_init__(self):
        for name in ("p", "q"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v or v < 0:
                raise ValueError(f"{name} must be a nonnegative integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        init = tuple(float(x) for x in self.init)
        if len(init) != 2 or not all(x > 0 and math.isfinite(x) for x in init):
            raise ValueError(f"initial data must be two positive reals, got {self.init!r}")
        object.__setattr__(self, "init", init)
        object.__setattr__(self, "kind", CurveKind(self.kind))

    @property
    def n(self) -> int:
        return self.p + self.q + 2

    @property
    def signs(self) -> tuple[int, int]:
        return (1, 1) if self.kind is CurveKind.ALPHA else (1, -1)

    @property
    def conserved_value(self) -> float:
        a1, a2 = self.init
        return a1 * a1 - a2 * a2 if self.kind is CurveKind.ALPHA else a1 * a1 + a2 * a2

    @property
    def line_value(self) -> float:
        a1, a2 = self.init
        return a1 ** (self.p + 1) * a2 ** (self.q + 1)


def _frozen(a):
    a = np.asarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class CurveSample:
    """Sampled curve in C^2 with per-sample drift of both conserved quantities.

    ``t_reached`` is the half-width of the interval actually integrated; it is
    smaller than the requested ``t_max`` when the escape bound stopped an
    alpha curve before it blew up.
    """

    params: CurveParams
    ts: np.ndarray
    points: np.ndarray
    residual_conserved: np.ndarray
    residual_line: np.ndarray
    tol: float
    t_reached: float = math.inf
    truncated: bool = False

    def __post_init__(self):
        for name in ("ts", "points", "residual_conserved", "residual_line"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        n = len(self.ts)
        if not (len(self.points) == len(self.residual_conserved) == len(self.residual_line) == n):
            raise ValueError("sample arrays have inconsistent lengths")
        if n > 1 and not np.all(np.diff(self.ts) > 0):
            raise ValueError("ts must be strictly increasing")

    def __len__(self):
        return len(self.ts)

    @property
    def velocities(self) -> np.ndarray:
        return curve_velocity(self.params, self.points)

    @property
    def max_drift(self) -> tuple[float, float]:
        if len(self) == 0:
            return 0.0, 0.0
        return float(np.max(np.abs(self.residual_conserved))), float(np.max(np.abs(self.residual_line)))


def monomial(p, q, z):
    z = np.asarray(z, dtype=complex)
    return z[..., 0] ** (p + 1) * z[..., 1] ** (q + 1)


def curve_velocity(params: CurveParams, z):
    """Right-hand side of the curve ODE, solved for the derivative."""
    z = np.asarray(z, dtype=complex)
    m = np.conj(monomial(params.p, params.q, z))
    s1, s2 = params.signs
    out = np.empty_like(z)
    out[..., 0] = s1 * 1j * m / np.conj(z[..., 0])
    out[..., 1] = s2 * 1j * m / np.conj(z[..., 1])
    return out


def _drift(params: CurveParams, z):
    sq = np.abs(z) ** 2
    if params.kind is CurveKind.ALPHA:
        cons = sq[..., 0] - sq[..., 1]
    else:
        cons = sq[..., 0] + sq[..., 1]
    return cons - params.conserved_value, monomial(params.p, params.q, z).real - params.line_value


def _to_real(z):
    return np.array([z[0].real, z[0].imag, z[1].real, z[1].imag])


def _to_complex(y):
    y = np.asarray(y)
    return np.stack([y[0] + 1j * y[1], y[2] + 1j * y[3]], axis=-1)


def _solve_half(params: CurveParams, t_end, tol, escape, events=()):
    def rhs(t, y):
        return _to_real(curve_velocity(params, _to_complex(y)))

    def radius(t, y):
        return min(math.hypot(y[0], y[1]), math.hypot(y[2], y[3])) - GUARD_RADIUS

    radius.terminal = True

    evs = [radius, *events]
    if escape is not None:
        bound = escape * max(1.0, params.line_value)

        def blowup(t, y):
            return bound - abs(monomial(params.p, params.q, _to_complex(y)))

        blowup.terminal = True
        evs.append(blowup)

    y0 = [params.init[0], 0.0, params.init[1], 0.0]
    rtol = tol * STEP_TOL_FACTOR
    sol = integrate.solve_ivp(
        rhs, (0.0, t_end), y0, method="DOP853", rtol=rtol, atol=rtol * 1e-2,
        dense_output=True, events=evs,
    )
    if sol.status == -1:
        raise IntegrationError(f"step-size control failed: {sol.message}", t=float(sol.t[-1]))
    if sol.t_events[0].size:
        t_hit = float(sol.t_events[0][0])
        if params.kind is CurveKind.ALPHA:
            # |alpha_j| >= a_j > 0 along the exact flow
            raise IntegrationError("alpha component reached the origin; integrator is broken", t=t_hit)
        raise SingularRadiusError("gamma component reached the guard radius", t=t_hit)
    return sol


def _integrate(params: CurveParams, t_max, tol, num, escape):
    if not (t_max > 0 and math.isfinite(t_max)):
        raise ValueError(f"t_max must be positive and finite, got {t_max!r}")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    if num < 1:
        raise ValueError("num must be at least 1")
    fwd = _solve_half(params, t_max, tol, escape)
    bwd = _solve_half(params, -t_max, tol, escape)
    reach = min(float(fwd.t[-1]), -float(bwd.t[-1]))
    truncated = reach < t_max
    ts = np.linspace(-reach, reach, num) if num > 1 else np.zeros(1)
    pts = np.empty((num, 2), dtype=complex)
    pos = ts >= 0
    if pos.any():
        pts[pos] = _to_complex(fwd.sol(ts[pos])).reshape(-1, 2)
    if (~pos).any():
        pts[~pos] = _to_complex(bwd.sol(ts[~pos])).reshape(-1, 2)
    pts[ts == 0] = params.init
    cons, line = _drift(params, pts)
    return CurveSample(params, ts, pts, cons, line, tol, reach, truncated)


def integrate_alpha(params: CurveParams, t_max: float, tol: float = 1e-10, num: int = 201,
                    escape: float | None = 100.0) -> CurveSample:
    """Integrate alpha_a on [-t_max, t_max].

    For n = p + q + 2 >= 3 the solution leaves every compact set in finite time,
    so integration stops symmetrically once |alpha_1^(p+1) alpha_2^(q+1)| exceeds
    ``escape * max(1, a_1^(p+1) a_2^(q+1))``.  ``escape=None`` removes the bound;
    a genuine blow-up then surfaces as an IntegrationError.
    """
    if params.kind is not CurveKind.ALPHA:
        raise ValueError("integrate_alpha needs kind=ALPHA")
    return _integrate(params, t_max, tol, num, escape)


def integrate_gamma(params: CurveParams, t_max: float, tol: float = 1e-10, num: int = 201) -> CurveSample:
    """Integrate gamma_b on [-t_max, t_max]; the curve stays on a sphere in C^2."""
    if params.kind is not CurveKind.GAMMA:
        raise ValueError("integrate_gamma needs kind=GAMMA")
    return _integrate(params, t_max, tol, num, None)


# -- closed form of alpha ---------------------------------------------------

def _phase_integrand(p, q, a1, a2, j):
    aj2 = (a1 if j == 0 else a2) ** 2
    kappa = (p + 1) / a1**2 + (q + 1) / a2**2
    mu = (p + 1) / a1**4 + (q + 1) / a2**4
    small = 1e-3 * min(a1, a2)

    def f(x):
        x2 = x * x
        if x < small:
            # expm1(L) = x^2 kappa + x^4 (kappa^2 - mu) / 2 + O(x^6), divided by x^2
            return 1.0 / ((x2 + aj2) * math.sqrt(kappa + 0.5 * x2 * (kappa * kappa - mu)))
        lg = (p + 1) * math.log1p(x2 / a1**2) + (q + 1) * math.log1p(x2 / a2**2)
        return x / ((x2 + aj2) * math.sqrt(math.expm1(lg)))

    return f


def alpha_phases(params: CurveParams, s: float) -> tuple[float, float]:
    """theta_1(s), theta_2(s) of the closed-form parameterization."""
    p, q = params.p, params.q
    a1, a2 = params.init
    if s == 0:
        return 0.0, 0.0
    sign, top = (1.0, s) if s > 0 else (-1.0, -s)
    out = []
    for j in (0, 1):
        f = _phase_integrand(p, q, a1, a2, j)
        brk = [b for b in (1e-3 * min(a1, a2), min(a1, a2), max(a1, a2)) if b < top]
        val, err = integrate.quad(f, 0.0, top, points=brk or None, limit=200,
                                  epsabs=1e-15, epsrel=1e-13)
        if not math.isfinite(val) or err > 1e-9 * max(1.0, abs(val)):
            raise IntegrationError(f"phase quadrature did not converge (error estimate {err:.3g})")
        out.append(sign * val)
    return out[0], out[1]


def alpha_closed_form(params: CurveParams, s: float) -> np.ndarray:
    """alpha_a in the s-parameter: rho_j = sqrt(s^2 + a_j^2), theta_j by quadrature."""
    if params.kind is not CurveKind.ALPHA:
        raise ValueError("alpha_closed_form needs kind=ALPHA")
    a1, a2 = params.init
    th1, th2 = alpha_phases(params, float(s))
    return np.array([math.sqrt(s * s + a1 * a1) * np.exp(1j * th1),
                     math.sqrt(s * s + a2 * a2) * np.exp(1j * th2)])


# -- gamma: explicit curve, critical radii, period, closedness --------------

def lambda_pq(p: int, q: int) -> float:
    """Positive root of lambda^(p+q) = (p+1)^p (q+1)^q; 1 when p = q = 0."""
    if p + q == 0:
        return 1.0
    return math.exp((p * math.log(p + 1) + q * math.log(q + 1)) / (p + q))


def gamma_special_init(p: int, q: int) -> tuple[float, float]:
    lam = lambda_pq(p, q)
    return math.sqrt((p + 1) / lam), math.sqrt((q + 1) / lam)


def gamma_special(p: int, q: int, t):
    """The explicit gamma_b for b on the equality locus; shape (..., 2)."""
    t = np.asarray(t, dtype=float)
    b1, b2 = gamma_special_init(p, q)
    w1 = math.sqrt((q + 1) / (p + 1))
    w2 = math.sqrt((p + 1) / (q + 1))
    return np.stack([b1 * np.exp(1j * w1 * t), b2 * np.exp(-1j * w2 * t)], axis=-1)


def _validate_b(p, q, b):
    params = CurveParams(p, q, b, CurveKind.GAMMA)
    return params.p, params.q, params.init


def _threshold(p, q, b):
    b1, b2 = b
    n = p + q + 2
    logk = 2 * (p + 1) * math.log(b1) + 2 * (q + 1) * math.log(b2) - n * math.log(b1 * b1 + b2 * b2)
    return math.exp(logk)


def critical_radii(p: int, q: int, b) -> tuple[float, ...]:
    """Roots x = cos^2(nu) in [0, 1] of |b|^(2n) x^(p+1) (1-x)^(q+1) = b_1^(2p+2) b_2^(2q+2).

    Returns one value in the equality case and two otherwise.
    """
    p, q, b = _validate_b(p, q, b)
    n = p + q + 2
    k = _threshold(p, q, b)
    xstar = (p + 1) / n
    peak = xstar ** (p + 1) * (1 - xstar) ** (q + 1)
    gap = (peak - k) / k
    if gap < -DOUBLE_ROOT_RTOL:
        raise DegenerateError("inequality violated: no critical radius in [0, 1]")
    if gap <= DOUBLE_ROOT_RTOL:
        return (xstar,)

    def g(x):
        return x ** (p + 1) * (1 - x) ** (q + 1) - k

    lo = optimize.brentq(g, 0.0, xstar, xtol=1e-17, rtol=4 * np.finfo(float).eps, maxiter=500)
    hi = optimize.brentq(g, xstar, 1.0, xtol=1e-17, rtol=4 * np.finfo(float).eps, maxiter=500)
    return (lo, hi)


def _radial_quadrature(p, q, b, weight):
    """Integral of weight(x) dx / (|b|^(n-2) sqrt(G(x))) between the critical radii.

    G(x) = x^(p+1) (1-x)^(q+1) - K vanishes at both ends; the cosine
    substitution x = lo + (hi - lo) sin^2(phi/2) removes the square-root
    singularities, and G is evaluated relative to the nearer root to avoid
    cancellation.
    """
    n = p + q + 2
    lo, hi = critical_radii(p, q, b)
    k = _threshold(p, q, b)
    width = hi - lo
    scale = (b[0] ** 2 + b[1] ** 2) ** ((n - 2) / 2)

    def G(phi):
        if phi <= math.pi / 2:
            r, d = lo, width * math.sin(phi / 2) ** 2
        else:
            r, d = hi, -width * math.cos(phi / 2) ** 2
        lg = (p + 1) * math.log1p(d / r) + (q + 1) * math.log1p(-d / (1 - r))
        return r + d, k * math.expm1(lg)

    def f(phi):
        x, gx = G(phi)
        return 0.5 * width * math.sin(phi) * weight(x) / (scale * math.sqrt(gx))

    val, err = integrate.quad(f, 0.0, math.pi, limit=200, epsabs=0.0, epsrel=1e-13)
    return val


@dataclass(frozen=True)
class PeriodReport:
    period: float
    critical_radii: tuple[float, ...]
    winding_integrals: tuple[float, float]
    closed: tuple[Fraction, Fraction] | None = None
    verdict: str = "unclassified"
    fundamental_period: float | None = None
    period_check: float | None = None
    degenerate: bool = False
    tol: float | None = None
    max_denominator: int | None = None
    extra: dict = field(default_factory=dict)


def _winding_strict(p, q, b):
    n = p + q + 2
    c = b[0] ** (p + 1) * b[1] ** (q + 1)
    r2 = b[0] ** 2 + b[1] ** 2
    i1 = _radial_quadrature(p, q, b, lambda x: 1.0 / (r2 * x))
    i2 = _radial_quadrature(p, q, b, lambda x: 1.0 / (r2 * (1 - x)))
    return c * i1 / (2 * math.pi), c * i2 / (2 * math.pi)


def gamma_period_ode(p: int, q: int, b, tol: float = 1e-12, chunk: float | None = None) -> float:
    """Period of |gamma_1| from two consecutive minima found by event detection.

    d|gamma_1|^2/dt = 2 Im(gamma_1^(p+1) gamma_2^(q+1)), so minima are the
    upward zero crossings of that imaginary part.
    """
    params = CurveParams(p, q, b, CurveKind.GAMMA)

    def rising(t, y):
        return monomial(p, q, _to_complex(y)).imag

    rising.direction = 1
    span = chunk if chunk is not None else 4.0
    for _ in range(40):
        sol = _solve_half(params, span, tol / STEP_TOL_FACTOR, None, events=(rising,))
        hits = sol.t_events[1]
        hits = hits[hits > 1e-9 * span]
        if hits.size >= 2:
            return float(hits[1] - hits[0])
        span *= 2.0
    raise IntegrationError("fewer than two minima of |gamma_1| found", t=span)


def gamma_period(p: int, q: int, b, cross_check: bool = True) -> PeriodReport:
    """Common period T of |gamma_1| and |gamma_2| by quadrature of the radial equation."""
    p, q, b = _validate_b(p, q, b)
    radii = critical_radii(p, q, b)
    if len(radii) == 1:
        raise EqualityCaseError(
            "equality case: nu is constant, so the radii are periodic with any period"
        )
    period = _radial_quadrature(p, q, b, lambda x: 1.0)
    winding = _winding_strict(p, q, b)
    check = gamma_period_ode(p, q, b) if cross_check else None
    return PeriodReport(period, radii, winding, period_check=check)


def gamma_closedness(p: int, q: int, b, tol: float = 1e-9, max_denominator: int = 1000,
                     cross_check: bool = False) -> PeriodReport:
    """Classify gamma_b as closed or not, up to ``tol`` and ``max_denominator``.

    The winding integrals I_j = (b_1^(p+1) b_2^(q+1) / 2 pi) int_0^T dt / |gamma_j|^2
    are matched against their best rational approximations.  In the equality
    case the moduli are constant; T is then taken as the period 2 pi |b_1|^2 / c
    of the first phase, giving I = (1, b_1^2 / b_2^2).
    """
    p, q, b = _validate_b(p, q, b)
    radii = critical_radii(p, q, b)
    degenerate = len(radii) == 1
    if degenerate:
        c = b[0] ** (p + 1) * b[1] ** (q + 1)
        period = 2 * math.pi * b[0] ** 2 / c
        winding = (1.0, b[0] ** 2 / b[1] ** 2)
        check = None
    else:
        rep = gamma_period(p, q, b, cross_check=cross_check)
        period, winding, check = rep.period, rep.winding_integrals, rep.period_check
    approx = tuple(Fraction(w).limit_denominator(max_denominator) for w in winding)
    ok = all(abs(w - float(r)) <= tol for w, r in zip(winding, approx))
    if ok:
        mult = math.lcm(approx[0].denominator, approx[1].denominator)
        return PeriodReport(period, radii, winding, approx, "closed", mult * period, check,
                            degenerate, tol, max_denominator)
    return PeriodReport(period, radii, winding, None, "not closed within tolerance", None, check,
                        degenerate, tol, max_denominator,
                        extra={"candidates": approx})


# -- cone generators --------------------------------------------------------

def gamma_c_curve(n: int, c: float, s):
    """Principal n-th root of c + i s, i.e. the curve with gamma^n = c + i s."""
    if n < 1 or int(n) != n:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if c < 0:
        raise ValueError(f"c must be nonnegative, got {c!r}")
    s_arr = np.asarray(s, dtype=float)
    if c == 0 and np.any(s_arr == 0):
        raise VertexSingularityError("gamma_c is singular at the cone vertex c = s = 0")
    mod = (s_arr * s_arr + c * c) ** (1.0 / (2 * n))
    out = mod * np.exp(1j * np.arctan2(s_arr, c) / n)
    return out if out.ndim else complex(out)


def gamma_c_velocity(n: int, c: float, s):
    """d/ds gamma_c = (i / n) gamma_c / (c + i s)."""
    g = gamma_c_curve(n, c, s)
    return 1j * g / (n * (c + 1j * np.asarray(s, dtype=float)))
