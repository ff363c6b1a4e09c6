"""Higher-dimensional immersions assembled from a surface or curve and Legendrian factors.

Two constructions are supported:

* the product ``Phi(u, x, y) = (phi_1(u) psi(x), phi_2(u) varphi(y))`` of a
  Lagrangian surface phi in C^2 with Legendrian psi in S^(2p+1), varphi in S^(2q+1);
* the cone-type ``Phi(s, x) = gamma_c(s) psi(x)`` with gamma_c^n = c + i s.

At each sample the tangent frame is orthonormalized block by block and the
Lagrangian phase is read off as the unit-normalized complex determinant.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.stats import qmc

from .curves import gamma_c_curve, gamma_c_velocity
from .errors import DegenerateError, NotLagrangianError, NotLegendrianError, ZeroComponentError
from .legendrian import LegendrianMap, max_legendrian_residual
from .linalg import circular_std, gram_schmidt, real_gram
from .surfaces import SurfaceGrid, lagrangian_angle, symplectic_residual

log = logging.getLogger(__name__)

LEGENDRIAN_TOL = 1e-9
ORTHONORMAL_TOL = 1e-8
DET_MODULUS_TOL = 1e-6


@dataclass(frozen=True)
class AmbientFrame:
    """Point of an assembled n-fold with its orthonormal tangent frame.

    ``frame`` holds the n tangent vectors as rows.  ``metric_blocks`` lists the
    scale factor of each block of the induced metric (1 for the surface or
    curve direction, then |phi_1|, |phi_2| or |gamma|).
    """

    point: np.ndarray
    frame: np.ndarray
    phase: complex
    metric_blocks: tuple[float, ...]
    det_modulus: float
    orthonormality_defect: float
    symplectic_defect: float

    @property
    def angle(self) -> float:
        return float(np.angle(self.phase))


def _finish(point, blocks, scales, what):
    frame = np.vstack([b for b in blocks if b.size])
    n = frame.shape[1]
    if frame.shape[0] != n:
        raise DegenerateError(f"{what}: frame has {frame.shape[0]} vectors in C^{n}")
    defect = float(np.max(np.abs(real_gram(frame) - np.eye(n))))
    if defect > ORTHONORMAL_TOL:
        raise NotLagrangianError(f"{what}: frame blocks are not orthonormal (defect {defect:.3g})")
    omega = -np.imag(frame.conj() @ frame.T)
    det = np.linalg.det(frame.T)
    mod = abs(det)
    if abs(mod - 1) > DET_MODULUS_TOL:
        log.warning("%s: |det| = %.12g differs from 1", what, mod)
    return AmbientFrame(point, frame, det / mod, scales, mod, defect, float(np.max(np.abs(omega))))


def _check_legendrian(psi: LegendrianMap, x, label):
    if psi.domain_dim and max_legendrian_residual(psi, x) > LEGENDRIAN_TOL:
        raise NotLegendrianError(f"{label} ({psi.name}) fails the Legendrian condition at {np.asarray(x)}")


def _factor_block(scale, psi: LegendrianMap, x, before, after):
    if psi.domain_dim == 0:
        return np.zeros((0, before + psi.ambient_complex_dim + after), dtype=complex)
    tan = scale * psi.tangent(np.asarray(x, dtype=float))
    pad = np.zeros((tan.shape[0], before + tan.shape[1] + after), dtype=complex)
    pad[:, before:before + tan.shape[1]] = tan
    return gram_schmidt(pad)


def theorem1_frame(phi, phi_t, phi_s, p: int, q: int, psi: LegendrianMap, varphi: LegendrianMap,
                   x, y) -> AmbientFrame:
    """Frame of (phi_1 psi(x), phi_2 varphi(y)) at one surface point given with its tangents."""
    if psi.domain_dim != p or psi.ambient_complex_dim != p + 1:
        raise ValueError(f"first factor must map S^{p}-dimensional parameters into C^{p + 1}")
    if varphi.domain_dim != q or varphi.ambient_complex_dim != q + 1:
        raise ValueError(f"second factor must map {q}-dimensional parameters into C^{q + 1}")
    phi = np.asarray(phi, dtype=complex)
    if min(abs(phi[0]), abs(phi[1])) < 1e-12:
        raise ZeroComponentError("phi_1 or phi_2 vanishes: singular point of the assembled immersion")
    _check_legendrian(psi, x, "first factor")
    _check_legendrian(varphi, y, "second factor")
    P = psi(x)
    Q = varphi(y)
    point = np.concatenate([phi[0] * P, phi[1] * Q])
    d_t = np.concatenate([phi_t[0] * P, phi_t[1] * Q])
    d_s = np.concatenate([phi_s[0] * P, phi_s[1] * Q])
    surf = gram_schmidt([d_t, d_s])
    b1 = _factor_block(phi[0], psi, x, 0, q + 1)
    b2 = _factor_block(phi[1], varphi, y, p + 1, 0)
    return _finish(point, [surf, b1, b2], (1.0, abs(phi[0]), abs(phi[1])), "product frame")


def _grid_point(surface: SurfaceGrid, u):
    i, j = u
    return surface.points[i, j], surface.d_t[i, j], surface.d_s[i, j]


def assemble_theorem1(surface: SurfaceGrid, psi: LegendrianMap, varphi: LegendrianMap, u, x, y) -> AmbientFrame:
    """Assemble the n-fold at grid index ``u = (i, j)`` of ``surface`` and factor parameters x, y."""
    phi, pt, ps = _grid_point(surface, u)
    return theorem1_frame(phi, pt, ps, surface.p, surface.q, psi, varphi, x, y)


def _orthonormal_factor_matrix(psi: LegendrianMap, x):
    """Columns psi(x), then the orthonormalized coordinate tangents."""
    z = psi(x)
    if psi.domain_dim == 0:
        return z.reshape(-1, 1)
    tan = gram_schmidt(psi.tangent(np.asarray(x, dtype=float)))
    return np.column_stack([z, *tan])


def phase_identity_check(surface: SurfaceGrid, psi: LegendrianMap, varphi: LegendrianMap, sample) -> float:
    """|e^{i beta_Phi} - (-1)^p e^{i(beta + p arg phi_1 + q arg phi_2)} det B det C| at one sample.

    ``sample`` is ``(u, x, y)``.  B has columns psi and an orthonormal basis of
    d psi; C likewise for varphi.
    """
    u, x, y = sample
    frame = assemble_theorem1(surface, psi, varphi, u, x, y)
    phi, pt, ps = _grid_point(surface, u)
    p, q = surface.p, surface.q
    beta = lagrangian_angle(pt, ps)
    cond = beta + p * np.angle(phi[0]) + q * np.angle(phi[1])
    det_b = np.linalg.det(_orthonormal_factor_matrix(psi, x))
    det_c = np.linalg.det(_orthonormal_factor_matrix(varphi, y))
    rhs = (-1) ** p * np.exp(1j * cond) * det_b * det_c
    return float(abs(frame.phase - rhs))


def assemble_prop_a(curve_n: int, c: float, psi: LegendrianMap, s: float, x) -> AmbientFrame:
    """Frame of gamma_c(s) psi(x) with gamma_c^n = c + i s."""
    if psi.ambient_complex_dim != curve_n or psi.domain_dim != curve_n - 1:
        raise ValueError(f"psi must be an ({curve_n - 1})-dimensional map into S^{2 * curve_n - 1}")
    _check_legendrian(psi, x, "factor")
    g = gamma_c_curve(curve_n, c, s)
    dg = gamma_c_velocity(curve_n, c, s)
    z = psi(x)
    head = gram_schmidt([dg * z])
    body = _factor_block(g, psi, x, 0, 0)
    return _finish(g * z, [head, body], (1.0, abs(g)), "cone frame")


def rotate_frame(frame: AmbientFrame, A) -> AmbientFrame:
    """Apply a unitary A to the point and every frame vector; the phase picks up det A."""
    A = np.asarray(A, dtype=complex)
    rotated = frame.frame @ A.T
    return _finish(A @ frame.point, [rotated], frame.metric_blocks, "rotated frame")


# -- sampling ----------------------------------------------------------------

def _halton(dim, count, seed):
    if dim == 0:
        return np.zeros((count, 0))
    return qmc.Halton(d=dim, scramble=True, seed=seed).random(count)


def theorem1_samples(surface: SurfaceGrid, psi: LegendrianMap, varphi: LegendrianMap,
                     count: int, seed: int = 0):
    """``count`` low-discrepancy samples (u, x, y) over the grid and the factor boxes."""
    nt, ns = surface.shape
    p, q = psi.domain_dim, varphi.domain_dim
    pts = _halton(2 + p + q, count, seed)
    out = []
    for row in pts:
        i = min(int(row[0] * nt), nt - 1)
        j = min(int(row[1] * ns), ns - 1)
        out.append(((i, j), psi.from_unit(row[2:2 + p]), varphi.from_unit(row[2 + p:])))
    return out


def theorem1_phases(surface, psi, varphi, count: int = 500, seed: int = 0):
    """Phases of the assembled n-fold at ``count`` samples."""
    return np.array([assemble_theorem1(surface, psi, varphi, *smp).phase
                     for smp in theorem1_samples(surface, psi, varphi, count, seed)])


def prop_a_phases(curve_n: int, c: float, psi: LegendrianMap, s_range=(-2.0, 2.0), count: int = 500,
                  seed: int = 0):
    pts = _halton(1 + psi.domain_dim, count, seed)
    s_lo, s_hi = s_range
    return np.array([assemble_prop_a(curve_n, c, psi, s_lo + r[0] * (s_hi - s_lo), psi.from_unit(r[1:])).phase
                     for r in pts])


def phase_spread(phases) -> float:
    """Circular standard deviation of arg(phase)."""
    return circular_std(np.angle(np.asarray(phases)))


__all__ = [
    "AmbientFrame", "assemble_prop_a", "assemble_theorem1", "phase_identity_check", "phase_spread",
    "prop_a_phases", "rotate_frame", "theorem1_frame", "theorem1_phases", "theorem1_samples",
    "symplectic_residual",
]
