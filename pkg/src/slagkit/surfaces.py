"""Lagrangian surfaces in C^2: product surfaces, Lagrangian angle, curvature."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .curves import CurveKind, CurveParams, CurveSample, _drift, curve_velocity, gamma_special, lambda_pq
from .errors import DegenerateError, DegenerateFrameError, ZeroComponentError
from .linalg import circular_mean, pairwise_sum, wrap_angle

#: Area below which a tangent 2-frame counts as degenerate.
AREA_FLOOR = 1e-14
#: Modulus below which a surface coordinate is treated as zero.
ZERO_COMPONENT = 1e-12


class Provenance(enum.Enum):
    COROLLARY1 = "corollary1"
    GRAPH = "graph"
    EXTERNAL = "external"


@dataclass(frozen=True)
class SurfaceGrid:
    """C^2-valued grid over (t, s) with first derivatives.

    Arrays ``points``, ``d_t`` and ``d_s`` have shape ``(len(ts), len(ss), 2)``.
    ``s_period`` marks a grid whose s-samples cover exactly one period
    (without repeating the endpoint), enabling periodic differences in s.
    """

    ts: np.ndarray
    ss: np.ndarray
    points: np.ndarray
    d_t: np.ndarray
    d_s: np.ndarray
    p: int = 0
    q: int = 0
    provenance: Provenance = Provenance.EXTERNAL
    source: dict = field(default_factory=dict)
    s_period: float | None = None

    def __post_init__(self):
        shape = (len(self.ts), len(self.ss), 2)
        for name in ("points", "d_t", "d_s"):
            arr = np.asarray(getattr(self, name), dtype=complex)
            if arr.shape != shape:
                raise ValueError(f"{name} has shape {arr.shape}, expected {shape}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        for name in ("ts", "ss"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.size > 1 and not np.all(np.diff(arr) > 0):
                raise ValueError(f"{name} must be strictly increasing")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def shape(self):
        return self.points.shape[:2]

    def subsample(self, step: int = 2) -> "SurfaceGrid":
        """Every ``step``-th grid line in both directions."""
        return SurfaceGrid(self.ts[::step], self.ss[::step], self.points[::step, ::step],
                           self.d_t[::step, ::step], self.d_s[::step, ::step], self.p, self.q,
                           self.provenance, self.source, self.s_period)


def special_gamma_sample(p: int, q: int, ss) -> CurveSample:
    """The explicit gamma of the equality case, packaged as a curve sample."""
    ss = np.asarray(ss, dtype=float)
    pts = gamma_special(p, q, ss)
    params = CurveParams(p, q, _special_b(p, q), CurveKind.GAMMA)
    cons, line = _drift(params, pts)
    return CurveSample(params, ss, pts, cons, line, tol=0.0)


def _special_b(p, q):
    lam = lambda_pq(p, q)
    return math.sqrt((p + 1) / lam), math.sqrt((q + 1) / lam)


def special_gamma_period(p: int, q: int) -> float:
    """Fundamental period of the explicit gamma.

    The phase rates w_1 = sqrt((q+1)/(p+1)) and w_2 = 1/w_1 have rational ratio
    w_1/w_2 = P/Q in lowest terms, so both phases close first at t = 2 pi P / w_1.
    """
    ratio = Fraction(q + 1, p + 1)
    w1 = math.sqrt((q + 1) / (p + 1))
    return 2 * math.pi * ratio.numerator / w1


def product_surface(alpha: CurveSample, gamma: CurveSample, s_period: float | None = None) -> SurfaceGrid:
    """phi(t, s) = (alpha_1(t) gamma_1(s), alpha_2(t) gamma_2(s)) with analytic tangents."""
    pa, pg = alpha.params, gamma.params
    if pa.kind is not CurveKind.ALPHA or pg.kind is not CurveKind.GAMMA:
        raise ValueError("product_surface needs an alpha sample and a gamma sample")
    if (pa.p, pa.q) != (pg.p, pg.q):
        raise ValueError(f"exponents differ: alpha has {(pa.p, pa.q)}, gamma has {(pg.p, pg.q)}")
    a = alpha.points[:, None, :]
    g = gamma.points[None, :, :]
    da = alpha.velocities[:, None, :]
    dg = gamma.velocities[None, :, :]
    return SurfaceGrid(
        alpha.ts, gamma.ts, a * g, da * g, a * dg, pa.p, pa.q, Provenance.COROLLARY1,
        {"alpha": pa, "gamma": pg}, s_period,
    )


def sigma_surface(p: int, q: int, a, t_max: float, shape=(201, 128), tol: float = 1e-10,
                  escape: float | None = 100.0) -> SurfaceGrid:
    """alpha_a times the explicit gamma over exactly one period (periodic in s).

    The image lies on the cylinder Sigma_a.  ``shape`` is (samples in t,
    samples per s-period); ``escape`` is passed to :func:`integrate_alpha`.
    """
    from .curves import integrate_alpha

    nt, ns = shape
    alpha = integrate_alpha(CurveParams(p, q, a, CurveKind.ALPHA), t_max, tol=tol, num=nt, escape=escape)
    period = special_gamma_period(p, q)
    gamma = special_gamma_sample(p, q, np.linspace(0.0, period, ns, endpoint=False))
    return product_surface(alpha, gamma, s_period=period)


def symplectic_residual(v, w):
    """omega(v, w) = -Im sum v_i conj(w_i); vectorized over leading axes."""
    v = np.asarray(v, dtype=complex)
    w = np.asarray(w, dtype=complex)
    out = -np.imag(np.sum(v * np.conj(w), axis=-1))
    return out if out.ndim else float(out)


def frame_area(v, w):
    """Area |v ^ w| = sqrt(|v|^2 |w|^2 - <v,w>^2) of the real 2-frame (v, w) in C^2.

    On Lagrangian frames this equals |det[v w]|, since |det|^2 also subtracts
    omega(v, w)^2; using the real area keeps complex lines non-degenerate.
    """
    v = np.asarray(v, dtype=complex)
    w = np.asarray(w, dtype=complex)
    inner = np.real(np.sum(v * np.conj(w), axis=-1))
    sq = np.sum(np.abs(v) ** 2, axis=-1) * np.sum(np.abs(w) ** 2, axis=-1) - inner ** 2
    return np.sqrt(np.maximum(sq, 0.0))


def lagrangian_angle(v, w):
    """Lagrangian angle of the oriented frame (v, w): arg of det[v w] / |v ^ w|."""
    v = np.asarray(v, dtype=complex)
    w = np.asarray(w, dtype=complex)
    area = frame_area(v, w)
    if np.any(area < AREA_FLOOR):
        raise DegenerateFrameError("tangent frame is degenerate (|v ^ w| below 1e-14)")
    det = v[..., 0] * w[..., 1] - v[..., 1] * w[..., 0]
    beta = np.angle(det / area)
    return wrap_angle(beta)


@dataclass(frozen=True)
class AngleReport:
    beta: np.ndarray
    symplectic: np.ndarray
    condition: np.ndarray
    max_abs_symplectic: float
    max_abs_condition: float
    spread: float
    mean_condition: float


def angle_condition(surface: SurfaceGrid) -> AngleReport:
    """Evaluate beta + p arg phi_1 + q arg phi_2 (wrapped) and omega(phi_t, phi_s) on the grid.

    ``max_abs_condition`` measures distance from zero; ``spread`` measures
    distance from the circular mean, for surfaces whose constant is not zero.
    """
    z = surface.points
    if np.any(np.abs(z) < ZERO_COMPONENT):
        raise ZeroComponentError("surface meets the singular set phi_1 = 0 or phi_2 = 0")
    beta = lagrangian_angle(surface.d_t, surface.d_s)
    omega = symplectic_residual(surface.d_t, surface.d_s)
    cond = wrap_angle(beta + surface.p * np.angle(z[..., 0]) + surface.q * np.angle(z[..., 1]))
    mean = circular_mean(cond)
    spread = float(np.max(np.abs(wrap_angle(cond - mean))))
    return AngleReport(beta, omega, cond, float(np.max(np.abs(omega))), float(np.max(np.abs(cond))),
                       spread, mean)


def sigma_a_membership(z, p: int, q: int, a) -> tuple:
    """Residuals of the two equations cutting out the cylinder Sigma_a.

    |z_1|^2/(p+1) - |z_2|^2/(q+1) = (a_1^2 - a_2^2)/lambda and
    Re(z_1^(p+1) z_2^(q+1)) = a_1^(p+1) a_2^(q+1) sqrt((p+1)(q+1))/lambda.
    """
    z = np.asarray(z, dtype=complex)
    a1, a2 = (float(x) for x in a)
    lam = lambda_pq(p, q)
    r1 = np.abs(z[..., 0]) ** 2 / (p + 1) - np.abs(z[..., 1]) ** 2 / (q + 1) - (a1 * a1 - a2 * a2) / lam
    level = a1 ** (p + 1) * a2 ** (q + 1) * math.sqrt((p + 1) * (q + 1)) / lam
    r2 = (z[..., 0] ** (p + 1) * z[..., 1] ** (q + 1)).real - level
    if r1.ndim == 0:
        return float(r1), float(r2)
    return r1, r2


# -- curvature ---------------------------------------------------------------

def _uniform_step(x, name):
    d = np.diff(x)
    if d.size == 0:
        raise DegenerateError(f"{name} needs at least two samples")
    if np.max(np.abs(d - d[0])) > 1e-9 * abs(d[0]):
        raise ValueError(f"{name} must be uniformly spaced for curvature estimates")
    return float(d[0])


def _d1(f, h, axis, periodic):
    if periodic:
        return (np.roll(f, -1, axis) - np.roll(f, 1, axis)) / (2 * h)
    return np.gradient(f, h, axis=axis, edge_order=2)


def _d2(f, h, axis, periodic):
    if periodic:
        return (np.roll(f, -1, axis) - 2 * f + np.roll(f, 1, axis)) / (h * h)
    g = np.moveaxis(f, axis, 0)
    out = np.empty_like(g)
    out[1:-1] = (g[2:] - 2 * g[1:-1] + g[:-2]) / (h * h)
    if g.shape[0] >= 4:
        out[0] = (2 * g[0] - 5 * g[1] + 4 * g[2] - g[3]) / (h * h)
        out[-1] = (2 * g[-1] - 5 * g[-2] + 4 * g[-3] - g[-4]) / (h * h)
    else:
        out[0], out[-1] = out[1], out[-2]
    return np.moveaxis(out, 0, axis)


def first_fundamental_form(surface: SurfaceGrid):
    """E, F, G from the stored tangents."""
    dt, ds = surface.d_t, surface.d_s
    E = np.sum(np.abs(dt) ** 2, axis=-1)
    F = np.real(np.sum(dt * np.conj(ds), axis=-1))
    G = np.sum(np.abs(ds) ** 2, axis=-1)
    return E, F, G


def gauss_curvature(surface: SurfaceGrid):
    """Gauss curvature on the grid by the Brioschi formula.

    Only the first fundamental form enters; derivatives are central in the
    interior, one-sided (second order) on the border, periodic in s when the
    grid declares an s-period.
    """
    nt, ns = surface.shape
    if nt < 3 or ns < 3:
        raise DegenerateError("curvature needs at least a 3x3 grid")
    ht = _uniform_step(surface.ts, "ts")
    hs = _uniform_step(surface.ss, "ss")
    per = surface.s_period is not None
    E, F, G = first_fundamental_form(surface)
    det = E * G - F * F
    if np.any(det[1:-1, 1:-1] <= 0):
        raise DegenerateError("degenerate metric EG - F^2 <= 0 at an interior point")
    E_t, E_s = _d1(E, ht, 0, False), _d1(E, hs, 1, per)
    F_t, F_s = _d1(F, ht, 0, False), _d1(F, hs, 1, per)
    G_t, G_s = _d1(G, ht, 0, False), _d1(G, hs, 1, per)
    E_ss = _d2(E, hs, 1, per)
    G_tt = _d2(G, ht, 0, False)
    F_ts = _d1(_d1(F, ht, 0, False), hs, 1, per)

    a = -0.5 * E_ss + F_ts - 0.5 * G_tt
    b = F_t - 0.5 * E_s
    c = F_s - 0.5 * G_t
    # det [[a, E_t/2, b], [c, E, F], [G_s/2, F, G]] - det [[0, E_s/2, G_t/2], [E_s/2, E, F], [G_t/2, F, G]]
    m1 = (a * (E * G - F * F) - 0.5 * E_t * (c * G - F * 0.5 * G_s) + b * (c * F - E * 0.5 * G_s))
    m2 = (-0.5 * E_s * (0.5 * E_s * G - F * 0.5 * G_t) + 0.5 * G_t * (0.5 * E_s * F - E * 0.5 * G_t))
    return (m1 - m2) / (det * det)


def _interior_integral(surface: SurfaceGrid, density):
    ht = float(surface.ts[1] - surface.ts[0])
    hs = float(surface.ss[1] - surface.ss[0])
    inner = density[1:-1]
    if surface.s_period is None:
        inner = inner[:, 1:-1]
        ws = np.full(inner.shape[1], hs)
        ws[[0, -1]] *= 0.5
    else:
        ws = np.full(inner.shape[1], hs)
    wt = np.full(inner.shape[0], ht)
    wt[[0, -1]] *= 0.5
    return float(pairwise_sum((inner * wt[:, None] * ws[None, :]).ravel()))


def total_curvature(surface: SurfaceGrid) -> float:
    """Integral of K dA over the grid, border rows (and columns unless periodic) excluded."""
    K = gauss_curvature(surface)
    E, F, G = first_fundamental_form(surface)
    return _interior_integral(surface, K * np.sqrt(E * G - F * F))


@dataclass(frozen=True)
class CurvatureReport:
    estimate: float
    half_grid: float
    quarter_grid: float | None
    error_estimate: float
    extrapolated: float
    convergence_ratio: float | None


def total_curvature_report(surface: SurfaceGrid) -> CurvatureReport:
    """Total curvature on the grid plus the same estimate on 2x and 4x coarser grids.

    ``error_estimate`` is the Richardson estimate |I_h - I_2h| / 3 for a
    second-order method; ``convergence_ratio`` is (I_4h - I_2h) / (I_2h - I_h),
    which tends to 4 for second-order convergence.
    """
    fine = total_curvature(surface)
    half_s = surface.subsample(2)
    half = total_curvature(half_s)
    quarter = None
    ratio = None
    if min(half_s.shape) >= 5:
        quarter = total_curvature(half_s.subsample(2))
        denom = half - fine
        ratio = (quarter - half) / denom if denom != 0 else math.inf
    return CurvatureReport(fine, half, quarter, abs(fine - half) / 3, fine + (fine - half) / 3, ratio)
