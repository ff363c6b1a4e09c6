"""Small numerical helpers: angle wrapping, circular statistics, real Gram-Schmidt."""

import math

import numpy as np

from .errors import DegenerateFrameError


def wrap_angle(x):
    """Map angles into (-pi, pi]."""
    y = np.remainder(np.asarray(x, dtype=float) + np.pi, 2.0 * np.pi) - np.pi
    y = np.where(y == -np.pi, np.pi, y)
    return y if y.ndim else float(y)


def pairwise_sum(values):
    """Deterministic pairwise summation over a flat sequence."""
    v = np.asarray(values).ravel()
    if v.size == 0:
        return v.dtype.type(0)
    while v.size > 1:
        if v.size % 2:
            v = np.append(v, v.dtype.type(0))
        v = v[0::2] + v[1::2]
    return v[0]


def circular_mean(angles):
    z = pairwise_sum(np.exp(1j * np.asarray(angles, dtype=float)))
    return float(np.angle(z))


def circular_std(angles):
    """Circular standard deviation sqrt(-2 log R), R the mean resultant length."""
    a = np.asarray(angles, dtype=float).ravel()
    r = abs(pairwise_sum(np.exp(1j * a))) / a.size
    r = min(r, 1.0)
    return math.sqrt(max(0.0, -2.0 * math.log(r))) if r > 0 else math.inf


def real_inner(v, w):
    """Euclidean metric <v, w> = Re sum v_i conj(w_i) on C^n."""
    return float(np.real(np.vdot(w, v)))


def gram_schmidt(vectors, tol=1e-14):
    """Modified Gram-Schmidt for the real inner product on C^n.

    ``vectors`` is a sequence of complex n-vectors; the returned array holds
    the orthonormal vectors as rows, preserving the orientation of the input.
    """
    out = []
    for v in vectors:
        u = np.array(v, dtype=complex)
        scale = np.linalg.norm(u)
        for e in out:
            u = u - real_inner(u, e) * e
        norm = np.linalg.norm(u)
        if norm <= tol * max(scale, 1.0):
            raise DegenerateFrameError(
                f"vector {len(out)} is dependent on its predecessors (residual norm {norm:.3g})"
            )
        out.append(u / norm)
    n = len(out[0]) if out else 0
    return np.array(out, dtype=complex).reshape(len(out), n)


def real_gram(frame):
    """Real Gram matrix <f_i, f_j> of the rows of ``frame``."""
    f = np.asarray(frame, dtype=complex)
    return np.real(f.conj() @ f.T)
