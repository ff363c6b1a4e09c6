import numpy as np
import pytest

from slagkit.curves import CurveKind, CurveParams, integrate_alpha, integrate_gamma
from slagkit.surfaces import product_surface


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def product_grid(p, q, a, b, t_max=1.0, s_max=1.0, num=50, tol=1e-10):
    """Product of an alpha and a gamma sample on a num x num grid."""
    al = integrate_alpha(CurveParams(p, q, a, CurveKind.ALPHA), t_max, tol=tol, num=num)
    ga = integrate_gamma(CurveParams(p, q, b, CurveKind.GAMMA), s_max, tol=tol, num=num)
    return product_surface(al, ga)


@pytest.fixture
def make_surface():
    return product_grid
