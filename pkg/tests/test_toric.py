import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compact_rs.alcove import spectral_xi
from compact_rs.coupling import Coupling, InvalidCoupling
from compact_rs.double import TorusElement, hamiltonian, local_lax, reconstruct, torus_act, fingerprint
from compact_rs.errors import MismatchedParameters, OutsideChart, OutsideDomain
from compact_rs.sampling import rng_for, sample_Ay_plus, sample_torus
from compact_rs.toric import (
    ProjectivePoint,
    chart_inverse,
    chi0,
    compare_hamiltonians,
    embed_E,
    global_lax,
    moment_J,
    new_coordinates,
    old_coordinates,
    rotate,
)
from compact_rs.zpolytope import ay_polytope

PI = np.pi


def new_regime(n):
    return Coupling.rad(n, PI * (1 / n + 1 / (n - 1)) / 2)


def vertex(n, j, y):
    v = np.full(n, y)
    v[j] = PI - (n - 1) * y
    return v


def chart_points(n, size, seed=0):
    c = new_regime(n)
    return c, sample_Ay_plus(c, size, rng_for(seed, n)), sample_torus(rng_for(seed, 50 + n), n, size)


# --------------------------------------------------------------------------
# embedding and moment map


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("lam", [1.0, 0.37, 5.0])
def test_moment_of_embedding_is_lambda_xi(n, lam):
    c, xs, ths = chart_points(n, 100)
    for xi, th in zip(xs, ths):
        pt = embed_E(xi, TorusElement.from_angles(th), lam, c)
        assert abs(np.vdot(pt.u, pt.u).real - lam * (n * c.y - PI)) <= 1e-12 * max(1, lam)
        assert pt.u[-1].imag == 0 and pt.u[-1].real > 0
        assert np.max(np.abs(moment_J(pt, lam, c) - lam * xi)) <= 1e-12 * max(1, lam)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_moment_image_lies_in_the_simplex(n):
    c = new_regime(n)
    lam = 2.0
    rng = np.random.default_rng(n)
    poly = ay_polytope(n, c)
    for _ in range(10_000 // n):
        u = rng.normal(size=n) + 1j * rng.normal(size=n)
        j = moment_J(ProjectivePoint.from_homogeneous(u, chi0(n, lam, c)), lam, c)
        assert abs(j.sum() / lam - PI) <= 1e-12
        assert np.all(j / lam >= PI - (n - 1) * c.y - 1e-12) and np.all(j / lam <= c.y + 1e-12)
        assert poly.contains(j / lam / PI, tol=1e-12)
    for k in range(n):
        u = np.eye(n)[k]
        j = moment_J(ProjectivePoint.from_homogeneous(u, chi0(n, lam, c)), lam, c)
        assert np.allclose(j / lam, vertex(n, k, c.y), atol=1e-12)


def test_embedding_at_a_vertex_has_one_nonzero_coordinate():
    n = 5
    c = new_regime(n)
    for j in range(n):
        pt = embed_E(vertex(n, j, c.y), TorusElement.from_angles(np.ones(n - 1)), 1.0, c)
        assert np.flatnonzero(np.abs(pt.u) > 1e-7).tolist() == [j]
        with pytest.raises(OutsideChart):
            chart_inverse(pt, 1.0, c)


def test_embedding_errors():
    c = new_regime(4)
    with pytest.raises(OutsideChart):
        embed_E(PI * np.array([0.4, 0.2, 0.2, 0.2]), TorusElement.identity(4), 1.0, c)
    with pytest.raises(InvalidCoupling):
        embed_E(np.full(4, PI / 4), TorusElement.identity(4), 1.0, Coupling.rad(4, 0.2 * PI))
    with pytest.raises(ValueError):
        embed_E(np.full(4, PI / 4), TorusElement.identity(4), -1.0, c)


# --------------------------------------------------------------------------
# chart and rotation


@settings(max_examples=40, deadline=None)
@given(n=st.integers(3, 7), seed=st.integers(0, 10_000), gamma=st.floats(-PI, PI))
def test_chart_round_trip(n, seed, gamma):
    c, xs, ths = chart_points(n, 1, seed)
    xi, th = xs[0], ths[0]
    t = TorusElement.from_angles(th)
    pt = embed_E(xi, t, 1.0, c)
    got_xi, got_t = chart_inverse(pt, 1.0, c)
    assert np.max(np.abs(got_xi.xi - xi)) <= 1e-10
    assert np.max(np.abs(got_t.tau - t.tau)) <= 1e-10
    # representative independence
    again = chart_inverse(ProjectivePoint(np.exp(1j * gamma) * pt.u), 1.0, c)
    assert np.max(np.abs(again[0].xi - xi)) <= 1e-10
    assert np.max(np.abs(again[1].tau - t.tau)) <= 1e-10
    assert embed_E(got_xi.xi, got_t, 1.0, c).close_to(pt)


def test_chart_at_symmetric_point():
    n = 4
    c = new_regime(n)
    pt = embed_E(np.full(n, PI / n), TorusElement.identity(n), 1.0, c)
    xi, t = chart_inverse(pt, 1.0, c)
    assert np.allclose(xi.xi, PI / n) and np.allclose(t.tau, 1)


def test_canonical_is_idempotent():
    u = np.array([1 + 2j, 0.3j, -1.0])
    pt = ProjectivePoint.from_homogeneous(u, 2.0)
    assert np.array_equal(pt.canonical().u, pt.canonical().canonical().u)
    assert pt.close_to(ProjectivePoint.from_homogeneous(5j * u, 2.0))


@settings(max_examples=30, deadline=None)
@given(n=st.integers(3, 6), seed=st.integers(0, 10_000))
def test_rotation(n, seed):
    c, xs, ths = chart_points(n, 1, seed)
    xi = xs[0]
    s = TorusElement.from_angles(sample_torus(rng_for(seed, 1), n, 1)[0])
    pt = embed_E(xi, TorusElement.from_angles(ths[0]), 1.0, c)
    assert rotate(pt, TorusElement.identity(n)).close_to(pt, 1e-14)
    assert np.allclose(moment_J(rotate(pt, s), 1.0, c), moment_J(pt, 1.0, c), atol=1e-12)
    assert rotate(embed_E(xi, TorusElement.identity(n), 1.0, c), s).close_to(embed_E(xi, s, 1.0, c))


# --------------------------------------------------------------------------
# global Lax matrix


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_global_lax_is_conjugate_to_local(n):
    c, xs, ths = chart_points(n, 100, seed=2)
    for xi, th in zip(xs, ths):
        t = TorusElement.from_angles(th)
        g = global_lax(embed_E(xi, t, 1.0, c), 1.0, c)
        loc = local_lax(xi, t, c)
        assert np.max(np.abs(g.conj().T @ g - np.eye(n))) <= 1e-9
        assert abs(np.linalg.det(g) - 1) <= 1e-9
        assert abs(np.trace(g) - np.trace(loc)) <= 1e-9
        assert np.max(np.abs(spectral_xi(g).xi - spectral_xi(loc).xi)) <= 1e-9
        assert abs(np.trace(g).real - hamiltonian(xi, th, c)) <= 1e-9


def test_rotation_matches_torus_action_on_the_double():
    n = 4
    c, xs, ths = chart_points(n, 20, seed=4)
    for xi, th in zip(xs, ths):
        t = TorusElement.from_angles(th)
        s = TorusElement.from_angles(th[::-1] + 0.3)
        pt = rotate(embed_E(xi, t, 1.0, c), s)
        moved = torus_act(s, reconstruct(xi, t, c), c)
        xi2, t2 = chart_inverse(pt, 1.0, c)
        assert np.max(np.abs(fingerprint(reconstruct(xi2.xi, t2, c)) - fingerprint(moved))) <= 1e-9


@pytest.mark.parametrize("n", [3, 4, 5])
def test_global_lax_extends_continuously_to_the_vertices(n):
    """Approach each vertex with a spinning tau: global entries converge, local ones do not."""
    c = new_regime(n)
    star = np.full(n, PI / n)
    dist = np.geomspace(1e-6, 1e-10, 41)
    for j in range(n):
        vert = vertex(n, j, c.y)
        glob, loc = [], []
        for s in dist:
            xi = vert + s * (star - vert)
            t = TorusElement.from_angles(np.arange(1, n) / s)
            glob.append(global_lax(embed_E(xi, t, 1.0, c), 1.0, c))
            loc.append(local_lax(xi, t, c))
        glob, loc = np.array(glob), np.array(loc)
        for k in range(len(dist)):
            tail_g = np.max(np.abs(glob[k:] - glob[k]))
            tail_l = np.max(np.abs(loc[k:] - loc[k])) if k < len(dist) - 1 else 1.0
            # Lipschitz in the homogeneous coordinates, which scale like sqrt(dist)
            assert tail_g <= 2.0 * math.sqrt(dist[k])
            assert tail_l >= 0.1
        assert np.max(np.abs(glob[-1] - glob[-2])) <= 1e-4


def test_global_lax_outside_chart():
    c = new_regime(4)
    with pytest.raises(OutsideChart):
        global_lax(ProjectivePoint.from_homogeneous([1, 1, 0, 1], chi0(4, 1.0, c)), 1.0, c)


# --------------------------------------------------------------------------
# old versus new Hamiltonians


def thick_wall_point(rng, n, y_p):
    """Uniform point of the thick-wall alcove {xi_k > y'}."""
    return y_p + (PI - n * y_p) * rng.dirichlet(np.ones(n))


def partner(n, lam=1.0, lam_p=1.0):
    y = PI * (1 / n + 1 / (n - 1)) / 2
    y_p = (PI - lam / lam_p * (n * y - PI)) / n
    return y, y_p


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("lam,lam_p", [(1.0, 1.0), (1.0, 2.5), (2.0, 0.7)])
def test_closed_form_matches_substitution(n, lam, lam_p):
    y, y_p = partner(n, lam, lam_p)
    rng = np.random.default_rng(n)
    checked = 0
    while checked < 200:
        xi_p = thick_wall_point(rng, n, y_p)
        th_p = rng.uniform(-PI, PI, n - 1)
        xi, _ = new_coordinates(xi_p, th_p, lam, lam_p, y, y_p)
        if np.any(xi <= 0) or np.any(xi >= y):
            continue  # outside the new chart
        cmp = compare_hamiltonians(xi_p, th_p, lam, lam_p, y, y_p)
        assert abs(cmp.h_new_closed_form - cmp.h_new_substituted) <= 1e-9
        checked += 1


def test_coordinate_change_round_trip():
    n, lam, lam_p = 4, 1.3, 0.8
    y, y_p = partner(n, lam, lam_p)
    xi_p = np.array([0.3, 0.25, 0.2, 0.25]) * PI
    th_p = np.array([0.1, -0.4, 1.2])
    xi, th = new_coordinates(xi_p, th_p, lam, lam_p, y, y_p)
    assert np.isclose(xi.sum(), PI)
    back_xi, back_th = old_coordinates(xi, th, lam, lam_p, y, y_p)
    assert np.allclose(back_xi, xi_p) and np.allclose(back_th, th_p)


def test_old_and_new_hamiltonians_differ():
    n = 4
    y, y_p = partner(n)
    assert np.isclose(PI - n * y_p, n * y - PI)
    rng = np.random.default_rng(0)
    gaps = []
    while len(gaps) < 1000:
        xi_p = thick_wall_point(rng, n, y_p)
        cmp = compare_hamiltonians(xi_p, rng.uniform(-PI, PI, n - 1), 1.0, 1.0, y, y_p)
        gaps.append(abs(cmp.h_old - cmp.h_new_closed_form))
    assert max(gaps) > 0.1


def test_compare_hamiltonians_errors():
    n = 4
    y, y_p = partner(n)
    xi_p = np.full(n, PI / n)
    with pytest.raises(MismatchedParameters):
        compare_hamiltonians(xi_p, np.zeros(n - 1), 1.0, 1.0 + 1e-6, y, y_p)
    with pytest.raises(OutsideDomain):
        compare_hamiltonians(np.array([0.01, 0.33, 0.33, 0.33]) * PI, np.zeros(n - 1), 1.0, 1.0, y, y_p)
