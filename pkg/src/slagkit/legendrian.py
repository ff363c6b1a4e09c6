"""Legendrian factor immersions into odd-dimensional spheres.

A map psi: N^k -> S^(2m-1) in C^m is Legendrian when the Liouville form
vanishes on it, i.e. <d psi(v), J psi> = 0 for every tangent vector v.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

#: Distance kept from the coordinate poles when sampling sphere charts.
POLE_MARGIN = 1e-2


@dataclass(frozen=True)
class LegendrianMap:
    """An immersion into S^(2m-1) with its coordinate tangent basis.

    ``eval(x)`` returns a unit vector in C^m for parameters ``x`` of length
    ``domain_dim``; ``tangent(x)`` returns a ``(domain_dim, m)`` complex array
    whose rows are the partial derivatives of ``eval``.
    """

    domain_dim: int
    ambient_complex_dim: int
    eval: Callable[[np.ndarray], np.ndarray]
    tangent: Callable[[np.ndarray], np.ndarray]
    name: str = "legendrian"
    box: tuple[tuple[float, ...], tuple[float, ...]] | None = None

    def __call__(self, x):
        return self.eval(np.asarray(x, dtype=float))

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        """Parameter box used for sampling; keeps clear of chart singularities."""
        if self.box is None:
            return np.zeros(self.domain_dim), np.full(self.domain_dim, 2 * math.pi)
        return np.asarray(self.box[0], dtype=float), np.asarray(self.box[1], dtype=float)

    def from_unit(self, u) -> np.ndarray:
        """Map points of the unit cube [0, 1]^k into the parameter box."""
        lo, hi = self.bounds()
        return lo + np.asarray(u, dtype=float) * (hi - lo)

    def random_params(self, rng: np.random.Generator, count: int) -> np.ndarray:
        return self.from_unit(rng.random((count, self.domain_dim)))


def _sphere_point(p, phi):
    x = np.empty(p + 1)
    prefix = 1.0
    for i in range(p):
        x[i] = prefix * math.cos(phi[i])
        prefix *= math.sin(phi[i])
    x[p] = prefix
    return x


def _sphere_tangent(p, phi):
    sin = np.sin(phi)
    cos = np.cos(phi)
    out = np.zeros((p, p + 1))
    for k in range(p):
        for i in range(k, p + 1):
            # x_i = prod_{l<i} sin(phi_l) * (cos(phi_i) if i < p else 1)
            term = 1.0
            for l in range(min(i, p)):
                term *= cos[l] if l == k else sin[l]
            if i < p:
                term *= -sin[i] if i == k else cos[i]
            out[k, i] = term
    return out


def geodesic_sphere(p: int) -> LegendrianMap:
    """Totally geodesic S^p = S^(2p+1) intersected with R^(p+1), in hyperspherical angles.

    For p = 0 only the component {+1} of S^0 is returned.
    """
    if p < 0 or int(p) != p:
        raise ValueError(f"p must be a nonnegative integer, got {p!r}")
    p = int(p)
    if p == 0:
        return LegendrianMap(
            0, 1, lambda x: np.ones(1, dtype=complex), lambda x: np.zeros((0, 1), dtype=complex),
            name="S^0",
        )

    # colatitudes stay POLE_MARGIN away from 0 and pi; the last angle is an azimuth
    lo = (POLE_MARGIN,) * (p - 1) + (0.0,)
    hi = (math.pi - POLE_MARGIN,) * (p - 1) + (2 * math.pi,)
    return LegendrianMap(
        p, p + 1,
        lambda x: _sphere_point(p, np.asarray(x, dtype=float)).astype(complex),
        lambda x: _sphere_tangent(p, np.asarray(x, dtype=float)).astype(complex),
        name=f"S^{p}", box=(lo, hi),
    )


def great_circle() -> LegendrianMap:
    """t -> (e^{it}, e^{-it}) / sqrt(2), the minimal Legendrian circle in S^3."""
    r = 1 / math.sqrt(2)
    return LegendrianMap(
        1, 2,
        lambda x: r * np.array([np.exp(1j * x[0]), np.exp(-1j * x[0])]),
        lambda x: r * np.array([[1j * np.exp(1j * x[0]), -1j * np.exp(-1j * x[0])]]),
        name="great circle",
    )


def legendrian_torus(m: int) -> LegendrianMap:
    """Standard flat torus T^(m-1) in S^(2m-1) with phases summing to zero."""
    if m < 2 or int(m) != m:
        raise ValueError(f"m must be an integer >= 2, got {m!r}")
    m = int(m)
    r = 1 / math.sqrt(m)

    def ev(x):
        th = np.append(x, -np.sum(x))
        return r * np.exp(1j * th)

    def tan(x):
        z = ev(x)
        out = np.zeros((m - 1, m), dtype=complex)
        for k in range(m - 1):
            out[k, k] = 1j * z[k]
            out[k, m - 1] = -1j * z[m - 1]
        return out

    return LegendrianMap(m - 1, m, ev, tan, name=f"T^{m - 1}")


def fiber_circle() -> LegendrianMap:
    """t -> (e^{it}, 0): a Hopf fibre, tangent to J psi and therefore not Legendrian."""
    return LegendrianMap(
        1, 2,
        lambda x: np.array([np.exp(1j * x[0]), 0.0]),
        lambda x: np.array([[1j * np.exp(1j * x[0]), 0.0]]),
        name="Hopf fibre",
    )


def legendrian_residual(psi: LegendrianMap, params, tangent_index: int) -> float:
    """<t_i, J z> = Re sum t_i conj(i z) at z = psi(params); twice the Liouville form."""
    if not 0 <= tangent_index < psi.domain_dim:
        raise IndexError(f"tangent_index {tangent_index} out of range for a {psi.domain_dim}-dimensional map")
    x = np.asarray(params, dtype=float)
    z = psi.eval(x)
    t = psi.tangent(x)[tangent_index]
    return float(np.real(np.vdot(1j * z, t)))


def max_legendrian_residual(psi: LegendrianMap, params) -> float:
    x = np.asarray(params, dtype=float)
    if psi.domain_dim == 0:
        return 0.0
    return max(abs(legendrian_residual(psi, x, i)) for i in range(psi.domain_dim))
