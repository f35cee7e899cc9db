"""Alcove coordinates on SU(n) conjugacy classes.

A point of the alcove is a vector ``xi`` with nonnegative entries summing to
pi.  It labels the conjugacy class of the diagonal matrix ``delta(xi)`` whose
consecutive eigenvalues differ by the phases ``exp(2j*xi_k)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotUnitary

DEFAULT_TOL = 1e-9
# eigenvalue-argument gaps below this are exact ties
TIE_GAP = 1e-12


@dataclass(frozen=True, eq=False)
class AlcovePoint:
    """Validated alcove coordinates (radians)."""

    xi: np.ndarray

    def __post_init__(self):
        xi = np.array(self.xi, dtype=float).reshape(-1)
        xi.setflags(write=False)
        object.__setattr__(self, "xi", xi)

    @classmethod
    def validated(cls, xi, tol: float = DEFAULT_TOL) -> "AlcovePoint":
        pt = cls(xi)
        if pt.n < 1:
            raise DimensionMismatch("empty alcove point")
        if np.any(pt.xi < -tol):
            raise ValueError(f"negative alcove component in {pt.xi}")
        if abs(pt.xi.sum() - np.pi) > tol:
            raise ValueError(f"alcove components sum to {pt.xi.sum()}, not pi")
        return pt

    @property
    def n(self) -> int:
        return self.xi.shape[0]

    def regular(self, tol: float = 0.0) -> bool:
        return bool(np.all(self.xi > tol))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.xi, dtype=dtype)

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.xi)

    def __repr__(self):
        return f"AlcovePoint({np.array2string(self.xi / np.pi, precision=6)}*pi)"


def as_xi(xi, n: int | None = None, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Coerce to a float vector and check the alcove conditions."""
    arr = np.asarray(xi, dtype=float).reshape(-1)
    if n is not None and arr.shape[0] != n:
        raise DimensionMismatch(f"expected {n} components, got {arr.shape[0]}")
    if np.any(arr < -tol) or abs(arr.sum() - np.pi) > tol:
        raise ValueError(f"not an alcove point: {arr}")
    return arr


def xi_star(n: int) -> AlcovePoint:
    """The symmetric point with all components pi/n."""
    return AlcovePoint(np.full(n, np.pi / n))


def is_special_unitary(U, tol: float = DEFAULT_TOL, check_det: bool = True) -> bool:
    U = np.asarray(U)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        return False
    eye = np.eye(U.shape[0])
    if np.max(np.abs(U.conj().T @ U - eye)) > tol:
        return False
    return not check_det or abs(np.linalg.det(U) - 1.0) <= tol


def check_unitary(U, tol: float = DEFAULT_TOL, check_det: bool = True) -> np.ndarray:
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {U.shape}")
    if not is_special_unitary(U, tol, check_det):
        raise NotUnitary("matrix is not in SU(n) within tolerance")
    return U


def delta_entries(xi) -> np.ndarray:
    """Diagonal of delta(xi) as a complex vector."""
    xi = np.asarray(xi, dtype=float)
    n = xi.shape[-1]
    j = np.arange(1, n + 1)
    phase1 = (2.0 / n) * np.sum(j * xi, axis=-1)
    # phases of delta_k relative to delta_1: 2*(xi_1 + ... + xi_{k-1})
    rel = 2.0 * np.concatenate(
        [np.zeros(xi.shape[:-1] + (1,)), np.cumsum(xi[..., :-1], axis=-1)], axis=-1
    )
    return np.exp(1j * (phase1[..., None] + rel))


def delta(xi, tol: float = DEFAULT_TOL) -> np.ndarray:
    """The diagonal SU(n) representative of the class labelled by ``xi``."""
    xi = as_xi(xi, tol=tol)
    return np.diag(delta_entries(xi))


def spectral_xi(U, tol: float = DEFAULT_TOL) -> AlcovePoint:
    """Alcove label of the conjugacy class of ``U``.

    Eigenvalue arguments are sorted counter-clockwise; each of the n cyclic
    starting positions gives a candidate xi (half the consecutive gaps), and
    the candidate whose first diagonal entry of ``delta`` reproduces the
    starting eigenvalue is returned.
    """
    U = check_unitary(U, tol)
    n = U.shape[0]
    lam = np.linalg.eigvals(U)
    lam = lam / np.abs(lam)
    args = np.sort(np.mod(np.angle(lam), 2 * np.pi))
    lam_sorted = np.exp(1j * args)
    if n == 1:
        return AlcovePoint(np.array([np.pi]))

    best, best_err = None, np.inf
    for start in range(n):
        # unrolled counter-clockwise walk from args[start] once around the circle
        walk = np.concatenate([args[start:], args[:start] + 2 * np.pi, [args[start] + 2 * np.pi]])
        gaps = np.diff(walk)
        gaps[gaps < TIE_GAP] = 0.0
        cand = gaps / 2.0
        cand *= np.pi / cand.sum()
        d1 = delta_entries(cand)[0]
        err = abs(d1 - lam_sorted[start])
        if err < best_err:
            best, best_err = cand, err
    if best_err > max(tol, 1e-6):
        raise NotUnitary(f"no consistent alcove label (mismatch {best_err:.3g})")
    return AlcovePoint(best)


def sigma(xi) -> AlcovePoint:
    """Cyclic shift ``sigma(xi)_k = xi_{k+1}`` (centre action)."""
    return AlcovePoint(np.roll(np.asarray(xi, dtype=float), -1))


def nu(xi) -> AlcovePoint:
    """Partial reflection ``nu(xi)_k = xi_{n-k}`` for k < n, last entry fixed."""
    xi = np.asarray(xi, dtype=float)
    return AlcovePoint(np.append(xi[-2::-1], xi[-1]))
