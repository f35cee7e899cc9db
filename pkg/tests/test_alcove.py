import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from compact_rs.alcove import (
    AlcovePoint,
    as_xi,
    delta,
    delta_entries,
    is_special_unitary,
    nu,
    sigma,
    spectral_xi,
    xi_star,
)
from compact_rs.errors import DimensionMismatch, NotUnitary

PI = np.pi


def random_xi(rng, n):
    return PI * rng.dirichlet(np.ones(n))


def test_identity_has_label_with_last_entry_pi():
    assert np.allclose(spectral_xi(np.eye(3)).xi, [0, 0, PI], atol=1e-12)


def test_delta_consecutive_ratios():
    xi = np.array([0.1, 0.5, 0.4]) * PI
    d = delta_entries(xi)
    assert np.allclose(d[1:] / d[:-1], np.exp(2j * xi[:-1]))
    assert np.isclose(np.prod(d), 1.0)


def test_delta_at_sample_point_round_trips():
    xi = np.array([0.0, PI / 2, PI / 2])
    assert np.allclose(spectral_xi(delta(xi)).xi, xi, atol=1e-12)


def test_xi_star_gives_scaled_roots_of_unity():
    d = delta_entries(xi_star(5).xi)
    assert np.allclose(d**5, d[0] ** 5)
    assert np.isclose(np.prod(d), 1.0)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(2, 8), seed=st.integers(0, 2**32 - 1))
def test_spectral_xi_inverts_delta_under_conjugation(n, seed):
    rng = np.random.default_rng(seed)
    xi = random_xi(rng, n)
    u = unitary_group.rvs(n, random_state=rng)
    got = spectral_xi(u @ delta(xi) @ u.conj().T).xi
    assert np.max(np.abs(got - xi)) <= 1e-9


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 6), seed=st.integers(0, 2**32 - 1), k=st.integers(0, 5))
def test_spectral_xi_with_eigenvalue_collisions(n, seed, k):
    rng = np.random.default_rng(seed)
    xi = random_xi(rng, n)
    xi[k % n] = 0.0
    xi *= PI / xi.sum()
    u = unitary_group.rvs(n, random_state=rng)
    got = spectral_xi(u @ delta(xi) @ u.conj().T).xi
    assert np.max(np.abs(got - xi)) <= 1e-7


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 8), seed=st.integers(0, 2**32 - 1))
def test_sigma_is_multiplication_by_a_root_of_unity(n, seed):
    xi = random_xi(np.random.default_rng(seed), n)
    a = delta_entries(xi)
    b = delta_entries(sigma(xi).xi)

    def multiset_gap(u, v):
        dist = np.abs(u[:, None] - v[None, :])
        return max(dist.min(axis=0).max(), dist.min(axis=1).max())

    # some n-th root of unity maps the spectrum of delta(xi) onto that of delta(sigma(xi))
    best = min(multiset_gap(a * np.exp(2j * PI * m / n), b) for m in range(n))
    assert best <= 1e-9


@given(n=st.integers(2, 8), seed=st.integers(0, 2**32 - 1))
def test_sigma_has_order_n_and_nu_is_an_involution(n, seed):
    xi = random_xi(np.random.default_rng(seed), n)
    x = xi
    for _ in range(n):
        x = sigma(x).xi
    assert np.array_equal(x, xi)
    assert np.array_equal(nu(nu(xi).xi).xi, xi)
    assert nu(xi).xi[-1] == xi[-1]


def test_alcove_point_is_read_only_and_validated():
    pt = AlcovePoint.validated([PI / 2, PI / 2])
    with pytest.raises(ValueError):
        pt.xi[0] = 1.0
    with pytest.raises(ValueError):
        AlcovePoint.validated([PI, 0.5])
    with pytest.raises(ValueError):
        AlcovePoint.validated([PI + 0.1, -0.1])
    assert pt.regular() and not AlcovePoint([PI, 0.0]).regular()


def test_as_xi_dimension_check():
    with pytest.raises(DimensionMismatch):
        as_xi([PI / 2, PI / 2], n=3)


def test_non_unitary_input_is_rejected():
    with pytest.raises(NotUnitary):
        spectral_xi(2 * np.eye(2))
    with pytest.raises(DimensionMismatch):
        spectral_xi(np.ones((2, 3)))
    assert not is_special_unitary(np.diag([1j, 1j]))
