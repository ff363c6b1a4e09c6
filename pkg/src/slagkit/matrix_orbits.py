"""SU(n)-invariant special Lagrangian cones and their deformations in matrix spaces.

Three ambient spaces are handled, each with the SU(n) action ``B -> A B`` or
``B -> A B A^t`` and a minimal Legendrian orbit in the unit sphere:

========  ==========================  ====================  ==================
variant   ambient space               Legendrian orbit      complex dimension
========  ==========================  ====================  ==================
GL        all n x n matrices          A / sqrt(n)           n^2
Sym       symmetric n x n             A A^t / sqrt(n)       n(n+1)/2
Skew      skew-symmetric 2n x 2n      A J A^t / sqrt(2n)    n(2n-1)
========  ==========================  ====================  ==================

The deformed cone is ``gamma(s) * psi(A)`` where ``gamma^m = c + i s`` and m is
the complex dimension of the ambient space.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .curves import gamma_c_curve, gamma_c_velocity
from .linalg import gram_schmidt


class Variant(enum.Enum):
    GL = "gl"
    SYM = "sym"
    SKEW = "skew"


def symplectic_j(n: int) -> np.ndarray:
    """The 2n x 2n block matrix [[0, -I], [I, 0]]."""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, -eye], [eye, zero]]).astype(complex)


@dataclass(frozen=True)
class OrbitKind:
    """Variant plus size parameter n (the matrices are 2n x 2n for Skew)."""

    variant: Variant
    n: int

    def __post_init__(self):
        if not isinstance(self.variant, Variant):
            object.__setattr__(self, "variant", Variant(self.variant))
        if int(self.n) != self.n:
            raise ValueError(f"n must be an integer, got {self.n!r}")
        lo = 1 if self.variant is Variant.SKEW else 2
        if self.n < lo:
            raise ValueError(f"{self.variant.name} needs n >= {lo}, got {self.n}")

    @property
    def size(self) -> int:
        return 2 * self.n if self.variant is Variant.SKEW else self.n

    @property
    def group_size(self) -> int:
        """Size of the special unitary group acting."""
        return self.size

    @property
    def curve_exponent(self) -> int:
        """Complex dimension m of the ambient space; the curve satisfies gamma^m = c + i s."""
        n = self.n
        if self.variant is Variant.GL:
            return n * n
        if self.variant is Variant.SYM:
            return n * (n + 1) // 2
        return n * (2 * n - 1)

    @property
    def sphere_dim(self) -> int:
        return 2 * self.curve_exponent - 1

    def psi(self, A) -> np.ndarray:
        """Legendrian orbit map evaluated at A in SU(size)."""
        A = np.asarray(A, dtype=complex)
        if self.variant is Variant.GL:
            return A / math.sqrt(self.n)
        if self.variant is Variant.SYM:
            return A @ A.T / math.sqrt(self.n)
        return A @ symplectic_j(self.n) @ A.T / math.sqrt(2 * self.n)

    def basis(self) -> list[np.ndarray]:
        """Orthonormal (Frobenius) complex basis of the ambient matrix space."""
        k = self.size
        out = []
        if self.variant is Variant.GL:
            for i, j in itertools.product(range(k), repeat=2):
                e = np.zeros((k, k), dtype=complex)
                e[i, j] = 1
                out.append(e)
            return out
        r = 1 / math.sqrt(2)
        for i in range(k):
            for j in range(i, k):
                e = np.zeros((k, k), dtype=complex)
                if self.variant is Variant.SYM:
                    if i == j:
                        e[i, i] = 1
                    else:
                        e[i, j] = e[j, i] = r
                    out.append(e)
                elif i != j:
                    e[i, j], e[j, i] = r, -r
                    out.append(e)
        return out


@dataclass(frozen=True)
class OrbitPoint:
    """A matrix B on a deformed cone, with its defining residuals.

    ``level`` is Re((det B)^n) for GL/Sym and Re((det B)^(2n)) for Skew.
    ``natural_level`` is Re(gamma^m) rescaled: Re((det B)^n) for GL,
    Re((det B)^((n+1)/2)) (principal branch) for Sym and
    Re((Pf B / Pf J)^(2n-1)) for Skew; it is constant along each family.
    """

    matrix: np.ndarray
    kind: OrbitKind
    residual_unitary: float
    level: float
    natural_level: float


def su_sample(n: int, seed) -> np.ndarray:
    """Haar-distributed special unitary n x n matrix, deterministic in ``seed``."""
    if n < 1 or int(n) != n:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if n == 1:
        return np.ones((1, 1), dtype=complex)
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    det = np.linalg.det(q)
    return q / det ** (1.0 / n)


def pfaffian(M) -> complex:
    """Pfaffian of an even-dimensional skew matrix by Parlett-Reid style elimination."""
    A = np.array(M, dtype=complex)
    k = A.shape[0]
    if k % 2:
        return 0.0
    pf = 1.0 + 0j
    for i in range(0, k - 1, 2):
        piv = i + 1 + int(np.argmax(np.abs(A[i, i + 1:])))
        if piv != i + 1:
            A[[i + 1, piv]] = A[[piv, i + 1]]
            A[:, [i + 1, piv]] = A[:, [piv, i + 1]]
            pf = -pf
        if A[i, i + 1] == 0:
            return 0.0 + 0j
        pf *= A[i, i + 1]
        if i + 2 < k:
            tau = A[i, i + 2:] / A[i, i + 1]
            A[i + 2:, i + 2:] += np.outer(tau, A[i + 2:, i + 1]) - np.outer(A[i + 2:, i + 1], tau)
    return pf


def _unitary_residual(kind: OrbitKind, B):
    det = np.linalg.det(B)
    k = B.shape[0]
    if kind.variant is Variant.GL:
        target = abs(det) ** (2 / kind.n) * np.eye(k)
        return float(np.linalg.norm(B @ B.conj().T - target))
    if kind.variant is Variant.SYM:
        target = abs(det) ** (2 / kind.n) * np.eye(k)
        return float(np.linalg.norm(B @ B.conj() - target))
    target = -abs(det) ** (1 / kind.n) * np.eye(k)
    return float(np.linalg.norm(B @ B.conj() - target))


def _levels(kind: OrbitKind, B):
    n = kind.n
    det = np.linalg.det(B)
    if kind.variant is Variant.GL:
        lv = (det ** n).real
        return lv, lv
    if kind.variant is Variant.SYM:
        return (det ** n).real, np.exp((n + 1) / 2 * np.log(det)).real if det != 0 else 0.0
    ratio = pfaffian(B) / pfaffian(symplectic_j(n))
    return (det ** (2 * n)).real, (ratio ** (2 * n - 1)).real


def make_point(kind: OrbitKind, B) -> OrbitPoint:
    """Wrap an arbitrary matrix with its residuals and levels."""
    B = np.asarray(B, dtype=complex)
    if B.shape != (kind.size, kind.size):
        raise ValueError(f"expected a {kind.size}x{kind.size} matrix, got shape {B.shape}")
    lv, nat = _levels(kind, B)
    return OrbitPoint(B, kind, _unitary_residual(kind, B), float(lv), float(nat))


def orbit_point(kind: OrbitKind, c: float, s: float, A, exponent: int | None = None) -> OrbitPoint:
    """B = gamma_c(s) psi(A) with gamma_c^m = c + i s.

    ``exponent`` overrides m; only useful for probing wrong exponents.
    """
    if c < 0:
        raise ValueError(f"c must be nonnegative, got {c}")
    g = complex(gamma_c_curve(exponent or kind.curve_exponent, c, s))
    return make_point(kind, g * kind.psi(A))


def orbit_residual(point: OrbitPoint, target_level: float, natural: bool = False) -> tuple[float, float]:
    """(residual_unitary, |level - target_level|); ``natural`` compares the natural level instead."""
    lv = point.natural_level if natural else point.level
    return point.residual_unitary, abs(lv - target_level)


def expected_level(kind: OrbitKind, c: float) -> float:
    """Natural level of the family with parameter c: c / (size scale)^(m/2)."""
    scale = 2 * kind.n if kind.variant is Variant.SKEW else kind.n
    return c / scale ** (kind.curve_exponent / 2)


# -- Lagrangian phase of the orbit cone --------------------------------------

def _su_basis(k: int) -> list[np.ndarray]:
    """Real basis of su(k)."""
    out = []
    for i in range(k):
        for j in range(i + 1, k):
            e = np.zeros((k, k), dtype=complex)
            e[i, j], e[j, i] = 1, -1
            out.append(e)
            f = np.zeros((k, k), dtype=complex)
            f[i, j] = f[j, i] = 1j
            out.append(f)
    for i in range(k - 1):
        h = np.zeros((k, k), dtype=complex)
        h[i, i], h[i + 1, i + 1] = 1j, -1j
        out.append(h)
    return out


def _orbit_tangent(kind: OrbitKind, A, X):
    if kind.variant is Variant.GL:
        return A @ X / math.sqrt(kind.n)
    if kind.variant is Variant.SYM:
        return A @ (X + X.T) @ A.T / math.sqrt(kind.n)
    J = symplectic_j(kind.n)
    return A @ (X @ J + J @ X.T) @ A.T / math.sqrt(2 * kind.n)


def orbit_phase(kind: OrbitKind, c: float, s: float, A, exponent: int | None = None) -> complex:
    """Unit Lagrangian phase of the deformed cone at gamma_c(s) psi(A).

    Tangent vectors are d/ds and the images of a fixed su basis; they are
    expressed in an orthonormal complex basis of the ambient space, reduced to
    a real orthonormal frame of size m and the phase read off the determinant.
    """
    m = kind.curve_exponent
    k = exponent or m
    A = np.asarray(A, dtype=complex)
    basis = kind.basis()
    coords = lambda M: np.array([np.vdot(e, M) for e in basis])
    g = complex(gamma_c_curve(k, c, s))
    dg = complex(gamma_c_velocity(k, c, s))
    vecs = [coords(dg * kind.psi(A))]
    vecs += [coords(g * _orbit_tangent(kind, A, X)) for X in _su_basis(kind.size)]
    frame = _span_frame(vecs, m)
    det = np.linalg.det(frame.T)
    return complex(det / abs(det))


def _span_frame(vecs, m, tol=1e-10):
    """Orthonormal frame (real inner product) of the span, dropping dependent vectors."""
    kept = []
    for v in vecs:
        w = np.array(v, dtype=complex)
        for e in kept:
            w = w - np.real(np.vdot(e, w)) * e
        nrm = np.linalg.norm(w)
        if nrm > tol * max(1.0, np.linalg.norm(v)):
            kept.append(w / nrm)
    if len(kept) != m:
        raise ValueError(f"tangent span has rank {len(kept)}, expected {m}")
    return gram_schmidt(kept)


__all__ = [
    "OrbitKind", "OrbitPoint", "Variant", "expected_level", "make_point", "orbit_phase", "orbit_point",
    "orbit_residual", "pfaffian", "su_sample", "symplectic_j",
]
