import math

import numpy as np
import pytest
from scipy.stats import unitary_group

from conftest import product_grid
from slagkit.ambient import (
    assemble_prop_a,
    assemble_theorem1,
    phase_identity_check,
    phase_spread,
    prop_a_phases,
    rotate_frame,
    theorem1_phases,
    theorem1_samples,
)
from slagkit.errors import NotLegendrianError, VertexSingularityError, ZeroComponentError
from slagkit.legendrian import fiber_circle, geodesic_sphere, great_circle, legendrian_torus
from slagkit.surfaces import SurfaceGrid, lagrangian_angle

S0 = geodesic_sphere(0)


@pytest.fixture(scope="module")
def surf22():
    return product_grid(2, 2, (1, 2), (0.9, 0.8), t_max=0.5, s_max=2.0, num=20)


@pytest.fixture(scope="module")
def surf10():
    return product_grid(1, 0, (1, 1.5), (1, 2), t_max=1.0, s_max=2.0, num=20)


def test_constant_factors_reduce_to_surface_phase():
    surf = product_grid(0, 0, (1, 1), (1, 1), num=11)
    for u in [(0, 0), (5, 5), (3, 9)]:
        fr = assemble_theorem1(surf, S0, S0, u, [], [])
        beta = lagrangian_angle(surf.d_t[u], surf.d_s[u])
        assert abs(fr.phase - np.exp(1j * beta)) < 1e-14
        np.testing.assert_allclose(fr.point, surf.points[u], atol=0)
        assert phase_identity_check(surf, S0, S0, (u, [], [])) < 1e-14


def test_geodesic_spheres_phase_constant_on_product_sample(surf22, rng):
    s2 = geodesic_sphere(2)
    xs = s2.random_params(rng, 5)
    ys = s2.random_params(rng, 5)
    phases = [assemble_theorem1(surf22, s2, s2, (i, j), x, y).phase
              for i in range(0, 20, 4) for j in range(0, 20, 4) for x in xs for y in ys]
    assert len(phases) == 625
    assert phase_spread(phases) < 1e-6


def test_great_circle_factor_matches_explicit_form(surf10):
    gc = great_circle()
    phases = []
    for u in [(0, 0), (10, 3), (19, 19)]:
        for t in (0.0, 1.0, 4.0):
            fr = assemble_theorem1(surf10, gc, S0, u, [t], [])
            f1, f2 = surf10.points[u]
            expected = [f1 * np.exp(1j * t) / math.sqrt(2), f1 * np.exp(-1j * t) / math.sqrt(2), f2]
            np.testing.assert_allclose(fr.point, expected, atol=1e-14)
            phases.append(fr.phase)
    assert phase_spread(phases) < 1e-6


def test_frame_is_orthonormal_with_unit_phase(surf22, rng):
    s2 = geodesic_sphere(2)
    for u, x, y in theorem1_samples(surf22, s2, s2, 50, seed=3):
        fr = assemble_theorem1(surf22, s2, s2, u, x, y)
        assert fr.orthonormality_defect < 1e-8
        assert abs(abs(fr.phase) - 1) < 1e-12
        assert abs(fr.det_modulus - 1) < 1e-6
        assert fr.symplectic_defect < 1e-8
        phi = surf22.points[u]
        assert fr.metric_blocks == (1.0, abs(phi[0]), abs(phi[1]))


def test_phase_identity_geodesic_spheres(surf22, rng):
    s2 = geodesic_sphere(2)
    for _ in range(100):
        u = (int(rng.integers(20)), int(rng.integers(20)))
        assert phase_identity_check(surf22, s2, s2, (u, s2.random_params(rng, 1)[0], s2.random_params(rng, 1)[0])) < 1e-8


def test_phase_identity_great_circle(surf10):
    gc = great_circle()
    for t in np.linspace(0, 2 * math.pi, 13):
        assert phase_identity_check(surf10, gc, S0, ((7, 11), [t], [])) < 1e-8
    # det B is a unit constant along the minimal circle
    dets = []
    for t in np.linspace(0, 2 * math.pi, 13):
        z = gc([t])
        tan = gc.tangent([t])[0]
        dets.append(np.linalg.det(np.column_stack([z, tan / np.linalg.norm(tan)])))
    np.testing.assert_allclose(dets, dets[0], atol=1e-14)
    assert abs(abs(dets[0]) - 1) < 1e-14


@pytest.mark.parametrize("p, q, psi, varphi", [
    (2, 2, geodesic_sphere(2), geodesic_sphere(2)),
    (1, 0, great_circle(), S0),
    (0, 1, S0, geodesic_sphere(1)),
    (3, 2, geodesic_sphere(3), legendrian_torus(3)),
], ids=["S2xS2", "circle", "S0xS1", "S3xT2"])
def test_phase_constant_over_500_samples(p, q, psi, varphi):
    surf = product_grid(p, q, (1, 1.3), (1.1, 0.7), t_max=0.4, s_max=2.0, num=25)
    assert phase_spread(theorem1_phases(surf, psi, varphi, count=500, seed=11)) < 1e-6


def test_sampling_is_deterministic(surf22):
    s2 = geodesic_sphere(2)
    a = theorem1_phases(surf22, s2, s2, count=20, seed=5)
    b = theorem1_phases(surf22, s2, s2, count=20, seed=5)
    np.testing.assert_array_equal(a, b)


def test_unitary_equivariance(surf22, rng):
    s2 = geodesic_sphere(2)
    blocks = [unitary_group.rvs(3, random_state=7), unitary_group.rvs(3, random_state=8)]
    A = np.zeros((6, 6), dtype=complex)
    A[:3, :3], A[3:, 3:] = blocks
    det_a = np.linalg.det(A)
    for u, x, y in theorem1_samples(surf22, s2, s2, 20, seed=1):
        fr = assemble_theorem1(surf22, s2, s2, u, x, y)
        rot = rotate_frame(fr, A)
        assert abs(rot.phase - det_a * fr.phase) < 1e-10
        np.testing.assert_allclose(rot.point, A @ fr.point, atol=1e-14)


def test_product_assembly_rejects_zero_component():
    ts = np.array([0.0, 1.0])
    shape = (2, 2, 2)
    pts = np.ones(shape, dtype=complex)
    pts[0, 0, 0] = 0
    surf = SurfaceGrid(ts, ts, pts, np.broadcast_to([1, 0], shape), np.broadcast_to([0, 1], shape), 0, 0)
    with pytest.raises(ZeroComponentError):
        assemble_theorem1(surf, S0, S0, (0, 0), [], [])


def test_product_assembly_rejects_mismatched_factor(surf22):
    with pytest.raises(ValueError):
        assemble_theorem1(surf22, geodesic_sphere(1), geodesic_sphere(2), (0, 0), [1.0], [1.0, 1.0])


def test_product_assembly_rejects_non_legendrian_factor(surf10):
    with pytest.raises(NotLegendrianError):
        assemble_theorem1(surf10, fiber_circle(), S0, (3, 3), [0.5], [])


# -- cone-type assembly ---------------------------------------------------------

def test_prop_a_circle_grid():
    gc = great_circle()
    phases = [assemble_prop_a(2, 1.0, gc, s, [t]).phase
              for s in np.linspace(-3, 3, 20) for t in np.linspace(0, 2 * math.pi, 20)]
    arg = np.angle(np.array(phases) / phases[0])
    assert np.max(np.abs(arg)) < 1e-8


def test_prop_a_torus():
    t3 = legendrian_torus(3)
    phases = prop_a_phases(3, 1.0, t3, count=500, seed=2)
    assert np.max(np.abs(np.angle(phases / phases[0]))) < 1e-8
    assert phase_spread(phases) < 1e-6


def test_prop_a_point_and_cone():
    t3 = legendrian_torus(3)
    fr = assemble_prop_a(3, 0.0, t3, 2.0, [0.3, -1.0])
    g = (2j) ** (1 / 3)
    np.testing.assert_allclose(fr.point, g * t3([0.3, -1.0]), atol=1e-14)
    with pytest.raises(VertexSingularityError):
        assemble_prop_a(3, 0.0, t3, 0.0, [0.3, -1.0])


def test_prop_a_rejects_fiber():
    with pytest.raises(NotLegendrianError):
        assemble_prop_a(2, 1.0, fiber_circle(), 0.5, [0.2])


def test_prop_a_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        assemble_prop_a(3, 1.0, great_circle(), 0.5, [0.2])
