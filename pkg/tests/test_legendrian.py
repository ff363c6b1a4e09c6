import math

import numpy as np
import pytest

from slagkit.legendrian import (
    POLE_MARGIN,
    fiber_circle,
    geodesic_sphere,
    great_circle,
    legendrian_residual,
    legendrian_torus,
    max_legendrian_residual,
)

MAPS = [geodesic_sphere(1), geodesic_sphere(2), geodesic_sphere(3), great_circle(),
        legendrian_torus(2), legendrian_torus(3), legendrian_torus(4)]
IDS = [m.name + f"-C{m.ambient_complex_dim}" for m in MAPS]


# -- examples ----------------------------------------------------------------

def test_sphere_zero_is_one_point():
    s0 = geodesic_sphere(0)
    assert (s0.domain_dim, s0.ambient_complex_dim) == (0, 1)
    np.testing.assert_array_equal(s0([]), [1.0])
    assert max_legendrian_residual(s0, []) == 0.0


def test_sphere_one_is_real_circle():
    th = 0.7
    np.testing.assert_allclose(geodesic_sphere(1)([th]), [math.cos(th), math.sin(th)], atol=1e-16)
    assert np.all(geodesic_sphere(1)([th]).imag == 0)


def test_sphere_two_residual_exactly_zero(rng):
    s2 = geodesic_sphere(2)
    for x in s2.random_params(rng, 20):
        for i in range(2):
            assert legendrian_residual(s2, x, i) == 0.0


def test_great_circle_at_zero():
    np.testing.assert_allclose(great_circle()([0.0]), [1 / math.sqrt(2)] * 2, atol=1e-16)


def test_torus_two_agrees_with_great_circle():
    np.testing.assert_allclose(legendrian_torus(2)([0.0]), great_circle()([0.0]), atol=1e-16)
    np.testing.assert_allclose(legendrian_torus(2)([1.3]), great_circle()([1.3]), atol=1e-15)


def test_torus_periodic():
    t3 = legendrian_torus(3)
    np.testing.assert_allclose(t3([2 * math.pi, 0.0]), t3([0.0, 0.0]), atol=1e-15)


def test_torus_three_residual(rng):
    t3 = legendrian_torus(3)
    for x in t3.random_params(rng, 50):
        assert max_legendrian_residual(t3, x) < 1e-12


def test_fiber_circle_residual_is_one():
    for t in (0.0, 0.4, 2.0):
        assert legendrian_residual(fiber_circle(), [t], 0) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("index", [-1, 2])
def test_residual_rejects_bad_index(index):
    with pytest.raises(IndexError):
        legendrian_residual(geodesic_sphere(2), [1.0, 1.0], index)


@pytest.mark.parametrize("bad", [-1, 1.5])
def test_geodesic_sphere_rejects_bad_dimension(bad):
    with pytest.raises(ValueError):
        geodesic_sphere(bad)


def test_torus_rejects_small_m():
    with pytest.raises(ValueError):
        legendrian_torus(1)


# -- invariants --------------------------------------------------------------

@pytest.mark.parametrize("psi", MAPS, ids=IDS)
def test_unit_norm(psi, rng):
    for x in psi.random_params(rng, 1000):
        assert abs(np.linalg.norm(psi(x)) - 1) < 1e-12


@pytest.mark.parametrize("psi", MAPS, ids=IDS)
def test_legendrian_residual_vanishes(psi, rng):
    worst = max(max_legendrian_residual(psi, x) for x in psi.random_params(rng, 1000))
    assert worst < 1e-9


@pytest.mark.parametrize("psi", MAPS + [fiber_circle()], ids=IDS + ["fiber"])
def test_tangent_matches_finite_differences(psi, rng):
    h = 1e-6
    for x in psi.random_params(rng, 100):
        tan = psi.tangent(x)
        assert tan.shape == (psi.domain_dim, psi.ambient_complex_dim)
        for k in range(psi.domain_dim):
            e = np.zeros(psi.domain_dim)
            e[k] = h
            fd = (psi(x + e) - psi(x - e)) / (2 * h)
            assert np.max(np.abs(fd - tan[k])) < 1e-6


def test_sampling_box_avoids_poles(rng):
    s3 = geodesic_sphere(3)
    x = s3.random_params(rng, 2000)
    assert np.all(x[:, :2] >= POLE_MARGIN) and np.all(x[:, :2] <= math.pi - POLE_MARGIN)
    assert np.all(np.abs(np.cos(x[:, :2])) < 1 - 1e-6)
