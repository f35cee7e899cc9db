"""The CP^{n-1} toric model for pi/n < y < pi/(n-1).

Points of CP^{n-1} are carried by representatives ``u`` with
``|u|^2 = chi0 = lam*(n*y - pi)`` whose last nonzero coordinate is real
positive.  The dense chart where no coordinate vanishes is parametrized by
(xi, tau) through ``embed_E``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .alcove import AlcovePoint
from .coupling import Coupling, InvalidCoupling
from .double import TorusElement, _tau, local_lax, rs_hamiltonian
from .errors import MismatchedParameters, OutsideChart, OutsideDomain

ZERO_COORD = 1e-14


def _y(c) -> float:
    return c.y if isinstance(c, Coupling) else float(c)


def chi0(n: int, lam: float, c: Coupling | float) -> float:
    return lam * (n * _y(c) - math.pi)


def require_new_regime(n: int, c: Coupling | float) -> float:
    """Return y after checking pi/n < y < pi/(n-1)."""
    y = _y(c)
    if n < 3 or not math.pi / n < y < math.pi / (n - 1):
        raise InvalidCoupling(f"the toric chart needs pi/n < y < pi/(n-1), got y = {y / math.pi}*pi")
    return y


@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    """[u] in CP^{n-1} through its canonical representative."""

    u: np.ndarray

    def __post_init__(self):
        u = np.array(self.u, dtype=complex).reshape(-1)
        u.setflags(write=False)
        object.__setattr__(self, "u", u)

    @classmethod
    def from_homogeneous(cls, u, chi0: float) -> "ProjectivePoint":
        """Rescale so |u|^2 = chi0 and the last nonzero coordinate is real positive."""
        u = np.asarray(u, dtype=complex).reshape(-1)
        norm = np.linalg.norm(u)
        if norm == 0:
            raise ValueError("the zero vector has no projective class")
        u = u * (math.sqrt(chi0) / norm)
        nz = np.flatnonzero(np.abs(u) > ZERO_COORD * math.sqrt(chi0))
        last = u[nz[-1]]
        return cls(u * (abs(last) / last))

    @property
    def n(self) -> int:
        return self.u.shape[0]

    def canonical(self) -> "ProjectivePoint":
        return ProjectivePoint.from_homogeneous(self.u, float(np.vdot(self.u, self.u).real))

    def close_to(self, other: "ProjectivePoint", tol: float = 1e-10) -> bool:
        return bool(np.max(np.abs(self.canonical().u - other.canonical().u)) <= tol)


def embed_E(xi, t, lam: float, c: Coupling | float, tol: float = 1e-12) -> ProjectivePoint:
    """[sqrt(lam) (conj(tau_1) sqrt(y - xi_1), ..., sqrt(y - xi_n))]."""
    xi = np.asarray(xi, dtype=float).reshape(-1)
    n = xi.shape[0]
    y = require_new_regime(n, c)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    if abs(xi.sum() - math.pi) > 1e-9:
        raise ValueError("xi does not sum to pi")
    if np.any(xi > y + tol):
        raise OutsideChart(f"some xi_k exceeds y: {xi / math.pi}*pi")
    tau = _tau(t)
    mod = np.sqrt(lam * np.clip(y - xi, 0.0, None))
    u = mod.astype(complex)
    u[:-1] *= tau.conj()
    return ProjectivePoint.from_homogeneous(u, chi0(n, lam, y))


def moment_J(pt: ProjectivePoint, lam: float, c: Coupling | float, tol: float = 1e-9) -> np.ndarray:
    """J_k = -|u_k|^2 + lam*y for k = 1..n."""
    y = _y(c)
    j = -np.abs(pt.u) ** 2 + lam * y
    if abs(j.sum() - lam * math.pi) > tol * max(1.0, lam):
        raise ValueError("representative norm is inconsistent with lambda and y")
    return j


def rotate(pt: ProjectivePoint, t) -> ProjectivePoint:
    """Rotational torus action [(conj(tau_1) u_1, ..., conj(tau_{n-1}) u_{n-1}, u_n)]."""
    tau = _tau(t)
    u = np.array(pt.u)
    u[:-1] *= tau.conj()
    return ProjectivePoint.from_homogeneous(u, float(np.vdot(pt.u, pt.u).real))


def chart_inverse(pt: ProjectivePoint, lam: float, c: Coupling | float) -> tuple[AlcovePoint, TorusElement]:
    """(xi, tau) with embed_E(xi, tau) = pt on the dense chart."""
    y = _y(c)
    u = pt.u
    scale = math.sqrt(float(np.vdot(u, u).real))
    if np.any(np.abs(u) <= ZERO_COORD * max(scale, 1.0)):
        raise OutsideChart("a homogeneous coordinate vanishes")
    u = u * (abs(u[-1]) / u[-1])
    xi = y - np.abs(u) ** 2 / lam
    tau = np.conj(u[:-1] / np.abs(u[:-1]))
    return AlcovePoint(xi), TorusElement(tau)


def global_lax(pt: ProjectivePoint, lam: float, c: Coupling) -> np.ndarray:
    """Delta(tau)^-1 L_loc(xi, tau) Delta(tau), Delta(tau) = diag(tau_1, ..., tau_{n-1}, 1)."""
    xi, t = chart_inverse(pt, lam, c)
    d = np.append(t.tau, 1.0)
    lax = local_lax(xi.xi, t, c)
    return (d.conj()[:, None] * lax) * d[None, :]


class HamiltonianComparison(NamedTuple):
    h_old: float
    h_new_closed_form: float
    h_new_substituted: float


def new_coordinates(xi_p, theta_p, lam: float, lam_p: float, y: float, y_p: float):
    """(xi, theta) from the old-chart coordinates: theta = -theta', lam(xi - y) = lam'(y' - xi')."""
    xi_p = np.asarray(xi_p, dtype=float)
    return y + (lam_p / lam) * (y_p - xi_p), -np.asarray(theta_p, dtype=float)


def old_coordinates(xi, theta, lam: float, lam_p: float, y: float, y_p: float):
    xi = np.asarray(xi, dtype=float)
    return y_p - (lam / lam_p) * (xi - y), -np.asarray(theta, dtype=float)


def compare_hamiltonians(xi_p, theta_p, lam: float, lam_p: float, y, y_p) -> HamiltonianComparison:
    """Old (0 < y' < pi/n) and new (pi/n < y < pi/(n-1)) Hamiltonians in primed coordinates.

    The new Hamiltonian is evaluated twice: from its closed form in the primed
    variables and by substituting the coordinate change into the RS formula.
    """
    xi_p = np.asarray(xi_p, dtype=float).reshape(-1)
    theta_p = np.asarray(theta_p, dtype=float).reshape(-1)
    n = xi_p.shape[0]
    y, y_p = _y(y), _y(y_p)
    mismatch = lam_p * (math.pi - n * y_p) - lam * (n * y - math.pi)
    if abs(mismatch) > 1e-12 * max(1.0, abs(lam), abs(lam_p)):
        raise MismatchedParameters(f"lam'(pi - n y') - lam(n y - pi) = {mismatch:.3g}")
    require_new_regime(n, y)
    if not 0 < y_p < math.pi / n:
        raise InvalidCoupling("need 0 < y' < pi/n")
    if np.any(xi_p <= y_p) or abs(xi_p.sum() - math.pi) > 1e-9:
        raise OutsideDomain("xi' must lie in the thick-wall alcove")

    h_old = rs_hamiltonian(xi_p, theta_p, y_p)

    r = lam_p / lam
    th = np.concatenate([[0.0], theta_p, [0.0]])
    total = 0.0
    for j in range(1, n + 1):
        prod = 1.0
        for k in range(j + 1, j + n):
            window = sum(xi_p[(m - 1) % n] for m in range(j, k))
            arg = (j - k) * (y + r * y_p) + r * window
            prod *= abs(1.0 - math.sin(y) ** 2 / math.sin(arg) ** 2)
        total += math.cos(th[j] - th[j - 1]) * math.sqrt(prod)
    h_closed = -total

    xi, theta = new_coordinates(xi_p, theta_p, lam, lam_p, y, y_p)
    h_sub = rs_hamiltonian(xi, theta, y)
    return HamiltonianComparison(h_old, h_closed, h_sub)
