"""Graph-type special Lagrangian surfaces through a quasilinear potential equation.

A surface written as phi_hat(x, y) = (g + i y, f - i x) is described by a
potential h with h_x = g and h_y = f.  The potential satisfies

    (q+1)^2 (h_y^2 + x^2 + a1^2)^(q/(q+1)) h_xx
        + (p+1)^2 (h_x^2 + y^2 + a2^2)^(p/(p+1)) h_yy = 0,

where a1 = a2 = 0 is the unregularized equation and positive a1, a2 make it
uniformly elliptic on bounded sets.  Everything here works on uniform
rectangular grids with second-order central differences.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from .errors import ConvergenceError

log = logging.getLogger(__name__)

ARMIJO_C = 1e-4
MIN_DAMPING = 2.0 ** -12


@dataclass(frozen=True)
class PotentialGrid:
    """Potential h sampled at x0 + i dx, y0 + j dy; ``h[i, j]`` is the value at (x_i, y_j).

    ``log`` holds the solver iteration records when the grid came from
    :func:`solve_dirichlet`.
    """

    h: np.ndarray
    x0: float
    y0: float
    dx: float
    dy: float
    p: int = 0
    q: int = 0
    a1: float = 0.0
    a2: float = 0.0
    log: tuple = field(default=(), compare=False)

    def __post_init__(self):
        h = np.asarray(self.h, dtype=float)
        if h.ndim != 2 or min(h.shape) < 3:
            raise ValueError(f"h must be a 2-D field of at least 3x3 values, got shape {h.shape}")
        if not (self.dx > 0 and self.dy > 0):
            raise ValueError(f"grid spacings must be positive, got dx={self.dx}, dy={self.dy}")
        if self.p < 0 or self.q < 0:
            raise ValueError("p and q must be nonnegative")
        if self.a1 < 0 or self.a2 < 0:
            raise ValueError("regularizers a1, a2 must be nonnegative")
        object.__setattr__(self, "h", h)

    @property
    def shape(self):
        return self.h.shape

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.h.shape[0])

    @property
    def y(self) -> np.ndarray:
        return self.y0 + self.dy * np.arange(self.h.shape[1])

    def mesh(self):
        return np.meshgrid(self.x, self.y, indexing="ij")

    @classmethod
    def from_function(cls, func: Callable, x_range, y_range, shape, **kw) -> "PotentialGrid":
        """Sample ``func(X, Y)`` on a uniform grid covering the closed rectangle."""
        nx, ny = shape
        xs = np.linspace(*x_range, nx)
        ys = np.linspace(*y_range, ny)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        dx = (x_range[1] - x_range[0]) / (nx - 1)
        dy = (y_range[1] - y_range[0]) / (ny - 1)
        return cls(np.asarray(func(X, Y), dtype=float), x_range[0], y_range[0], dx, dy, **kw)


@dataclass(frozen=True)
class GraphFields:
    """f, g on a uniform grid starting at (x0, y0); phi_hat = (g + i y, f - i x)."""

    f: np.ndarray
    g: np.ndarray
    x0: float
    y0: float
    dx: float
    dy: float

    def __post_init__(self):
        f = np.asarray(self.f, dtype=float)
        g = np.asarray(self.g, dtype=float)
        if f.shape != g.shape:
            raise ValueError(f"f and g shapes differ: {f.shape} vs {g.shape}")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)

    def mesh(self):
        nx, ny = self.f.shape
        return np.meshgrid(self.x0 + self.dx * np.arange(nx), self.y0 + self.dy * np.arange(ny), indexing="ij")

    @property
    def phi_hat(self) -> np.ndarray:
        """Array of shape (nx, ny, 2) with the complex coordinates of the graph."""
        X, Y = self.mesh()
        return np.stack([self.g + 1j * Y, self.f - 1j * X], axis=-1)


# -- difference operators (interior of the input) ----------------------------

def _dx(F, h):
    return (F[2:, 1:-1] - F[:-2, 1:-1]) / (2 * h)


def _dy(F, h):
    return (F[1:-1, 2:] - F[1:-1, :-2]) / (2 * h)


def _dxx(F, h):
    return (F[2:, 1:-1] - 2 * F[1:-1, 1:-1] + F[:-2, 1:-1]) / (h * h)


def _dyy(F, h):
    return (F[1:-1, 2:] - 2 * F[1:-1, 1:-1] + F[1:-1, :-2]) / (h * h)


def _weights(p, q, a1, a2, hx, hy, X, Y):
    """Coefficients of h_xx and h_yy together with the bases they are powers of."""
    e1 = q / (q + 1)
    e2 = p / (p + 1)
    w1 = hy * hy + X * X + a1 * a1
    w2 = hx * hx + Y * Y + a2 * a2
    return (q + 1) ** 2 * w1 ** e1, (p + 1) ** 2 * w2 ** e2, w1, w2, e1, e2


def cr_residual(fields: GraphFields, p: int, q: int, a1: float = 0.0, a2: float = 0.0):
    """(R1, R2) = (f_x - g_y, (q+1)^2 W1 g_x + (p+1)^2 W2 f_y) on the interior.

    W1 = (f^2 + x^2 + a1^2)^(q/(q+1)), W2 = (g^2 + y^2 + a2^2)^(p/(p+1)).  The
    default a1 = a2 = 0 gives the unregularized system.
    """
    f, g = fields.f, fields.g
    X, Y = fields.mesh()
    X, Y = X[1:-1, 1:-1], Y[1:-1, 1:-1]
    fi, gi = f[1:-1, 1:-1], g[1:-1, 1:-1]
    r1 = _dx(f, fields.dx) - _dy(g, fields.dy)
    w1 = (q + 1) ** 2 * (fi * fi + X * X + a1 * a1) ** (q / (q + 1))
    w2 = (p + 1) ** 2 * (gi * gi + Y * Y + a2 * a2) ** (p / (p + 1))
    r2 = w1 * _dx(g, fields.dx) + w2 * _dy(f, fields.dy)
    return r1, r2


def _residual(h, X, Y, dx, dy, p, q, a1, a2):
    hx, hy = _dx(h, dx), _dy(h, dy)
    A, B, *_ = _weights(p, q, a1, a2, hx, hy, X, Y)
    return A * _dxx(h, dx) + B * _dyy(h, dy)


def potential_residual(grid: PotentialGrid) -> np.ndarray:
    """Interior residual of the (regularized when a1 or a2 > 0) potential equation."""
    X, Y = grid.mesh()
    return _residual(grid.h, X[1:-1, 1:-1], Y[1:-1, 1:-1], grid.dx, grid.dy,
                     grid.p, grid.q, grid.a1, grid.a2)


def reconstruct_graph(grid: PotentialGrid) -> GraphFields:
    """f = h_y, g = h_x by central differences on the interior of the grid."""
    return GraphFields(_dy(grid.h, grid.dy), _dx(grid.h, grid.dx),
                       grid.x0 + grid.dx, grid.y0 + grid.dy, grid.dx, grid.dy)


# -- Dirichlet solver --------------------------------------------------------

def coons_patch(boundary: np.ndarray) -> np.ndarray:
    """Transfinite (bilinearly blended) interpolation of the boundary values of ``boundary``.

    Exact on every function of the form a + bx + cy + dxy.
    """
    B = np.asarray(boundary, dtype=float)
    nx, ny = B.shape
    u = np.linspace(0.0, 1.0, nx)[:, None]
    v = np.linspace(0.0, 1.0, ny)[None, :]
    left, right = B[0, :][None, :], B[-1, :][None, :]
    bottom, top = B[:, 0][:, None], B[:, -1][:, None]
    out = (1 - u) * left + u * right + (1 - v) * bottom + v * top
    out -= ((1 - u) * (1 - v) * B[0, 0] + u * (1 - v) * B[-1, 0]
            + (1 - u) * v * B[0, -1] + u * v * B[-1, -1])
    out[0, :], out[-1, :], out[:, 0], out[:, -1] = B[0, :], B[-1, :], B[:, 0], B[:, -1]
    return out


def _assemble(h, X, Y, dx, dy, p, q, a1, a2, newton=True):
    """Sparse Jacobian (or frozen-coefficient matrix) with respect to interior values."""
    nx, ny = h.shape
    mx, my = nx - 2, ny - 2
    hx, hy = _dx(h, dx), _dy(h, dy)
    hxx, hyy = _dxx(h, dx), _dyy(h, dy)
    A, B, w1, w2, e1, e2 = _weights(p, q, a1, a2, hx, hy, X, Y)

    # coefficients of the five stencil neighbours for every interior point
    east = A / dx**2
    west = A / dx**2
    north = B / dy**2
    south = B / dy**2
    centre = -2 * A / dx**2 - 2 * B / dy**2
    if newton:
        dA = (q + 1) ** 2 * e1 * w1 ** (e1 - 1) * 2 * hy * hxx if q else np.zeros_like(A)
        dB = (p + 1) ** 2 * e2 * w2 ** (e2 - 1) * 2 * hx * hyy if p else np.zeros_like(B)
        north = north + dA / (2 * dy)
        south = south - dA / (2 * dy)
        east = east + dB / (2 * dx)
        west = west - dB / (2 * dx)

    I, J = np.meshgrid(np.arange(mx), np.arange(my), indexing="ij")
    row = (I * my + J).ravel()
    rows, cols, vals = [row], [row], [centre.ravel()]
    for coef, di, dj in ((east, 1, 0), (west, -1, 0), (north, 0, 1), (south, 0, -1)):
        ii, jj = I + di, J + dj
        inside = ((ii >= 0) & (ii < mx) & (jj >= 0) & (jj < my)).ravel()
        rows.append(row[inside])
        cols.append((ii * my + jj).ravel()[inside])
        vals.append(coef.ravel()[inside])
    n = mx * my
    return sp.csr_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(n, n))


def _boundary_array(boundary, x_range, y_range, shape):
    nx, ny = shape
    if callable(boundary):
        xs = np.linspace(*x_range, nx)
        ys = np.linspace(*y_range, ny)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        return np.asarray(boundary(X, Y), dtype=float) * np.ones((nx, ny))
    B = np.asarray(boundary, dtype=float)
    if B.shape != (nx, ny):
        raise ValueError(f"boundary array has shape {B.shape}, grid shape is {(nx, ny)}")
    return B


def solve_dirichlet(p: int, q: int, a1: float, a2: float, boundary, x_range=(0.0, 1.0), y_range=(0.0, 1.0),
                    shape=(33, 33), tol: float = 1e-10, max_iter: int = 50) -> PotentialGrid:
    """Solve the regularized potential equation on a rectangle with Dirichlet data.

    ``boundary`` is either a callable ``h(X, Y)`` or an array of the full grid
    shape whose edge values are used.  Damped Newton with Armijo backtracking
    on the Euclidean residual norm; when backtracking fails a frozen-coefficient
    (Picard) step is tried.  The returned grid carries the iteration log.
    Raises ConvergenceError if max |residual| >= tol after ``max_iter`` steps.
    """
    if not (a1 > 0 and a2 > 0):
        raise ValueError(f"a1 and a2 must be strictly positive for ellipticity, got a1={a1}, a2={a2}")
    nx, ny = shape
    if nx < 3 or ny < 3:
        raise ValueError(f"grid shape must be at least 3x3, got {shape}")
    if not (x_range[1] > x_range[0] and y_range[1] > y_range[0]):
        raise ValueError("x_range and y_range must be increasing intervals")
    dx = (x_range[1] - x_range[0]) / (nx - 1)
    dy = (y_range[1] - y_range[0]) / (ny - 1)
    h = coons_patch(_boundary_array(boundary, x_range, y_range, shape))
    xs = np.linspace(*x_range, nx)
    ys = np.linspace(*y_range, ny)
    X, Y = np.meshgrid(xs[1:-1], ys[1:-1], indexing="ij")
    res = lambda hh: _residual(hh, X, Y, dx, dy, p, q, a1, a2)

    def with_interior(vec):
        out = h.copy()
        out[1:-1, 1:-1] = vec.reshape(nx - 2, ny - 2)
        return out

    r = res(h)
    norm = float(np.linalg.norm(r))
    records = [dict(iteration=0, method="initial", damping=0.0, residual_max=float(np.max(np.abs(r))),
                    residual_norm=norm)]
    it = 0
    while records[-1]["residual_max"] >= tol and it < max_iter:
        it += 1
        u = h[1:-1, 1:-1].ravel()
        jac = _assemble(h, X, Y, dx, dy, p, q, a1, a2, newton=True)
        step = spsolve(jac.tocsc(), -r.ravel())
        lam = 1.0
        accepted = None
        while lam >= MIN_DAMPING and np.all(np.isfinite(step)):
            trial = with_interior(u + lam * step)
            rt = res(trial)
            nt = float(np.linalg.norm(rt))
            if nt <= (1 - ARMIJO_C * lam) * norm:
                accepted = ("newton", lam, trial, rt, nt)
                break
            lam /= 2
        if accepted is None:
            # frozen coefficients: A h_xx + B h_yy = 0 is linear in the interior values
            mat = _assemble(h, X, Y, dx, dy, p, q, a1, a2, newton=False)
            rhs = mat @ u - r.ravel()
            trial = with_interior(spsolve(mat.tocsc(), rhs))
            rt = res(trial)
            nt = float(np.linalg.norm(rt))
            if np.isfinite(nt) and nt <= norm:
                accepted = ("picard", 1.0, trial, rt, nt)
        if accepted is None:
            floor = roundoff_floor(h, X, Y, dx, dy, p, q, a1, a2)
            raise ConvergenceError(
                f"no descent step found at iteration {it}; residual max {records[-1]['residual_max']:.3e}"
                f" (rounding floor of the discrete operator is about {floor:.1e}, tol={tol:g})",
                records, _grid(h, x_range, y_range, dx, dy, p, q, a1, a2, records))
        method, lam, h, r, norm = accepted
        records.append(dict(iteration=it, method=method, damping=lam,
                            residual_max=float(np.max(np.abs(r))), residual_norm=norm))
        log.debug("iteration %d: %s step, damping %.3g, max residual %.3e", it, method, lam,
                  records[-1]["residual_max"])

    result = _grid(h, x_range, y_range, dx, dy, p, q, a1, a2, records)
    if records[-1]["residual_max"] >= tol:
        raise ConvergenceError(
            f"max_iter={max_iter} reached with max residual {records[-1]['residual_max']:.3e} >= tol={tol:g}",
            records, result)
    return result


def roundoff_floor(h, X, Y, dx, dy, p, q, a1, a2) -> float:
    """Rough size of the rounding error in the discrete residual at ``h``."""
    A, B, *_ = _weights(p, q, a1, a2, _dx(h, dx), _dy(h, dy), X, Y)
    scale = float(np.max(np.abs(h)))
    return 8 * np.finfo(float).eps * scale * float(np.max(A / dx**2 + B / dy**2))


def _grid(h, x_range, y_range, dx, dy, p, q, a1, a2, records):
    return PotentialGrid(h, x_range[0], y_range[0], dx, dy, p, q, a1, a2, log=tuple(records))


def log_is_monotone(grid_or_log) -> bool:
    """True when the residual norm never increases across logged iterations."""
    records = grid_or_log.log if isinstance(grid_or_log, PotentialGrid) else grid_or_log
    norms = [rec["residual_norm"] for rec in records]
    return all(b <= a for a, b in zip(norms, norms[1:]))


__all__ = [
    "GraphFields", "PotentialGrid", "coons_patch", "cr_residual", "log_is_monotone", "potential_residual",
    "reconstruct_graph", "roundoff_floor", "solve_dirichlet",
]
