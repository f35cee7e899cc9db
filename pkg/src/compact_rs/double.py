"""Matrix-level core on the double SU(n) x SU(n).

Explicit solution of the moment map constraint ``A B A^-1 B^-1 = mu0(y)``
through the local Lax matrix, the RS Hamiltonian, the torus action
generated by the eigenvalue positions of B, and the duality map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .alcove import DEFAULT_TOL, TIE_GAP, check_unitary, delta, delta_entries, spectral_xi
from .coupling import Coupling
from .errors import DimensionMismatch, NegativeZ, OutsideDomain, SingularB, VnNearMinusOne
from .zpolytope import NEGATIVE_Z, ZERO_CLAMP, in_Ay_plus, partial_sums, z_vector

# reconstruct refuses points this close to the boundary of A_y^+
BOUNDARY_Z = 1e-8


@dataclass(frozen=True, eq=False)
class GroupPair:
    a: np.ndarray
    b: np.ndarray

    def __iter__(self):
        return iter((self.a, self.b))

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def residual(self, c: Coupling) -> float:
        """max-norm distance of the group commutator from mu0(y)."""
        return float(np.max(np.abs(moment(self) - mu0(self.n, c))))


@dataclass(frozen=True, eq=False)
class TorusElement:
    """Element (tau_1, ..., tau_{n-1}) of the (n-1)-torus."""

    tau: np.ndarray

    def __post_init__(self):
        tau = np.array(self.tau, dtype=complex).reshape(-1)
        if np.any(np.abs(np.abs(tau) - 1.0) > DEFAULT_TOL):
            raise ValueError("torus components must have unit modulus")
        tau.setflags(write=False)
        object.__setattr__(self, "tau", tau)

    @classmethod
    def from_angles(cls, thetas) -> "TorusElement":
        return cls(np.exp(1j * np.asarray(thetas, dtype=float)))

    @classmethod
    def identity(cls, n: int) -> "TorusElement":
        return cls(np.ones(n - 1))

    @property
    def angles(self) -> np.ndarray:
        return np.angle(self.tau)

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        return TorusElement(self.tau * other.tau)


def _tau(t) -> np.ndarray:
    return t.tau if isinstance(t, TorusElement) else TorusElement(t).tau


def _y(c) -> float:
    return c.y if isinstance(c, Coupling) else float(c)


def mu0(n: int, c: Coupling | float) -> np.ndarray:
    """diag(e^{2iy}, ..., e^{2iy}, e^{-2(n-1)iy})."""
    y = _y(c)
    d = np.full(n, np.exp(2j * y))
    d[-1] = np.exp(-2j * (n - 1) * y)
    return np.diag(d)


def moment(pair: GroupPair | tuple) -> np.ndarray:
    """Group commutator A B A^-1 B^-1."""
    a, b = pair
    return a @ b @ np.linalg.inv(a) @ np.linalg.inv(b)


def v_of_xi(xi, c: Coupling | float) -> np.ndarray:
    """Nonnegative square roots of z_l(xi, y); pass a negative float for v(xi, -y)."""
    z = z_vector(xi, _y(c))
    if np.any(z < -NEGATIVE_Z):
        raise NegativeZ(f"z has a negative component {z.min():.3g}")
    return np.sqrt(np.clip(z, 0.0, None))


def g_of_v(v) -> np.ndarray:
    """Real orthogonal matrix whose last column is the unit vector v."""
    v = np.asarray(v, dtype=float).reshape(-1)
    n = v.shape[0]
    if v[-1] <= -1.0 + 1e-12:
        raise VnNearMinusOne("g(v) is singular at v_n = -1")
    g = np.eye(n)
    g[:-1, :-1] -= np.outer(v[:-1], v[:-1]) / (1.0 + v[-1])
    g[:, -1] = v
    g[-1, :-1] = -v[:-1]
    return g


def rho_of_tau(t) -> np.ndarray:
    """diag(1/tau_1, tau_1/tau_2, ..., tau_{n-2}/tau_{n-1}, tau_{n-1})."""
    tau = _tau(t)
    ext = np.concatenate([[1.0], tau, [1.0]])
    return np.diag(ext[:-1] / ext[1:])


def _domain_vectors(xi, y: float, boundary: float) -> tuple[np.ndarray, np.ndarray]:
    """v(xi, y) and v(xi, -y), refusing points outside (or too near the edge of) A_y^+."""
    xi = np.asarray(xi, dtype=float).reshape(-1)
    if np.any(xi <= 0.0):
        raise OutsideDomain("xi is a singular alcove point")
    z_vector(xi, y)  # singular point / pole checks
    z_plus = _consistent_z(xi, y)
    z_minus = _consistent_z(xi, -y)
    z_plus[np.abs(z_plus) <= ZERO_CLAMP] = 0.0
    if np.any(z_plus <= boundary):
        raise OutsideDomain(f"xi is outside A_y^+ (min z = {z_plus.min():.3g})")
    if np.any(z_minus <= 0.0):
        raise OutsideDomain(f"z(xi, -y) is not positive (min {z_minus.min():.3g})")
    return np.sqrt(z_plus), np.sqrt(z_minus)


def local_lax(xi, t, c: Coupling) -> np.ndarray:
    """The SU(n)-valued local Lax matrix on A_y^+ x T^{n-1}."""
    xi = np.asarray(xi, dtype=float).reshape(-1)
    y = c.y
    n = xi.shape[0]
    if n != c.n:
        raise DimensionMismatch(f"coupling is for n={c.n}")
    if not in_Ay_plus(xi, c):
        raise OutsideDomain("xi is outside A_y^+")
    vp, vm = _domain_vectors(xi, y, 0.0)
    return _lax_matrix(xi, vp, vm, np.diag(rho_of_tau(t)), y)


# Near the boundary of A_y^+ the Lax identities cancel small window
# differences, so every window must be consistent with sum(xi) = pi to the
# last bit.  xi_1..xi_{n-1} are snapped to a 2^-50 grid (all their sums are
# then exact) and a window containing xi_n is evaluated through its
# complement C: sin(pi - C) = sin C, sin(pi - C - y) = sin(C + y).
_GRID = 2.0**50


def _snap(xi) -> np.ndarray:
    return np.round(np.asarray(xi, dtype=float)[:-1] * _GRID) / _GRID


def _consistent_z(xi, y: float) -> np.ndarray:
    head = _snap(xi)
    n = head.shape[0] + 1
    pref = math.sin(y) / math.sin(n * y)
    z = np.empty(n)
    for l in range(n):
        prod = pref
        for m in range(1, n):
            if l + m <= n - 1:  # xi_l..xi_{l+m-1}, avoids the last coordinate
                s = np.sum(head[l : l + m])
                prod *= math.sin(s - y) / math.sin(s)
            else:  # complement xi_{l+m-n}..xi_{l-1}
                cmp = np.sum(head[l + m - n : l])
                prod *= math.sin(cmp + y) / math.sin(cmp)
        z[l] = prod
    return z


def _signed_windows(xi) -> np.ndarray:
    """W[j, l] with delta_j / delta_l = exp(2i W[j, l]); never involves xi_n."""
    head = _snap(xi)
    n = head.shape[0] + 1
    w = np.zeros((n, n))
    for j in range(n):
        for l in range(j):
            w[j, l] = np.sum(head[l:j])
            w[l, j] = -w[j, l]
    return w


def _lax_matrix(xi, vp, vm, rho, y):
    n = xi.shape[0]
    # (e^{iy} - e^{-iy}) / (e^{iy} delta_j/delta_l - e^{-iy}) = sin y e^{-iW} / sin(W + y)
    w = _signed_windows(xi)
    cauchy = math.sin(y) * np.exp(-1j * w) / np.sin(w + y)
    pref = math.sin(n * y) / math.sin(y)
    return pref * cauchy * np.outer(vp, vm * rho)


def gauge_g(xi, c: Coupling) -> np.ndarray:
    """g_y(xi) = g(v(xi, y))."""
    return g_of_v(v_of_xi(xi, c))


def reconstruct(xi, t, c: Coupling) -> GroupPair:
    """The cross-section point (g^-1 L g, g^-1 delta(xi) g) over (xi, tau)."""
    xi = np.asarray(xi, dtype=float).reshape(-1)
    if xi.shape[0] != c.n:
        raise DimensionMismatch(f"coupling is for n={c.n}")
    if not in_Ay_plus(xi, c):
        raise OutsideDomain("xi is outside A_y^+")
    vp, vm = _domain_vectors(xi, c.y, BOUNDARY_Z)
    lax = _lax_matrix(xi, vp, vm, np.diag(rho_of_tau(t)), c.y)
    g = g_of_v(vp)
    return GroupPair(g.T @ lax @ g, g.T @ delta(xi) @ g)


def hamiltonian(xi, thetas, c: Coupling) -> float:
    """Generalized RS Hamiltonian in Darboux coordinates (theta_0 = theta_n = 0)."""
    xi = np.asarray(xi, dtype=float).reshape(-1)
    if not in_Ay_plus(xi, c):
        raise OutsideDomain("xi is outside A_y^+")
    return rs_hamiltonian(xi, thetas, c.y)


def rs_hamiltonian(xi, thetas, y: float) -> float:
    """The RS formula itself, without the domain check."""
    xi = np.asarray(xi, dtype=float).reshape(-1)
    n = xi.shape[0]
    th = np.concatenate([[0.0], np.asarray(thetas, dtype=float).reshape(-1), [0.0]])
    s = math.copysign(1.0, math.sin(y) / math.sin(n * y))
    factors = np.abs(1.0 - math.sin(y) ** 2 / np.sin(partial_sums(xi)) ** 2)
    return float(s * np.sum(np.cos(th[1:] - th[:-1]) * np.sqrt(np.prod(factors, axis=-1))))


def diagonalizer(b, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Unitary W with W^dag B W = delta(xi), columns phase-fixed.

    Each column's largest-modulus entry is made real positive so the result
    is reproducible.
    """
    xi = spectral_xi(b, tol).xi
    n = xi.shape[0]
    d = delta_entries(xi)
    if np.min(xi) < TIE_GAP:
        raise SingularB("B has a repeated eigenvalue")
    t, z = scipy.linalg.schur(np.asarray(b, dtype=complex), output="complex")
    ev = np.diag(t)
    order = [int(np.argmin(np.abs(ev - dk))) for dk in d]
    if len(set(order)) != n:
        raise SingularB("eigenvalues of B could not be matched to delta(xi)")
    w = z[:, order]
    piv = np.argmax(np.abs(w), axis=0)
    phases = w[piv, np.arange(n)]
    w = w * (np.abs(phases) / phases)[None, :]
    return w, xi


def torus_act(t, pair: GroupPair, c: Coupling | None = None) -> GroupPair:
    """(A, B) -> (A g^-1 rho(tau) g, B) with g B g^-1 = delta(Xi(B))."""
    a, b = pair
    w, _ = diagonalizer(b)
    return GroupPair(a @ w @ rho_of_tau(t) @ w.conj().T, b)


def duality_S(pair: GroupPair | tuple) -> GroupPair:
    """S(A, B) = (B^-1, B A B^-1)."""
    a, b = pair
    binv = np.linalg.inv(b)
    return GroupPair(binv, b @ a @ binv)


def discriminant(b) -> complex:
    """Discriminant of the characteristic polynomial of b."""
    lam = np.linalg.eigvals(np.asarray(b, dtype=complex))
    i, j = np.triu_indices(lam.shape[0], 1)
    return complex(np.prod((lam[i] - lam[j]) ** 2))


def fingerprint(pair: GroupPair | tuple) -> np.ndarray:
    """Gauge-invariant data (Xi(A), Xi(B), Re tr AB, Im tr AB) as one vector."""
    a, b = pair
    tr = np.trace(a @ b)
    return np.concatenate([spectral_xi(a).xi, spectral_xi(b).xi, [tr.real, tr.imag]])


def check_pair(pair: GroupPair, tol: float = DEFAULT_TOL) -> GroupPair:
    check_unitary(pair.a, tol)
    check_unitary(pair.b, tol)
    return pair
