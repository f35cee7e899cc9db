"""Seeded sampling of alcove points and torus elements."""

from __future__ import annotations

import numpy as np

from .coupling import Coupling, Verdict, classify
from .errors import SamplingExhausted
from .zpolytope import b_simplex_vertices, z_raw

RESAMPLE_CAP = 10**6
# sum |z_l| bound for points used to test sum(z) = 1 at 1e-9
COND_CAP = 1e5


def rng_for(seed: int, index: int = 0) -> np.random.Generator:
    """Independent PCG64 stream for (master seed, index)."""
    return np.random.default_rng(np.random.SeedSequence([seed & (2**64 - 1), index]))


def uniform_alcove(rng: np.random.Generator, n: int, size: int) -> np.ndarray:
    """Uniform (Dirichlet(1, ..., 1)) points of the alcove, radians."""
    return np.pi * rng.dirichlet(np.ones(n), size=size)


def well_conditioned_alcove(
    c: Coupling,
    size: int,
    rng: np.random.Generator,
    cond_cap: float = COND_CAP,
    cap: int = RESAMPLE_CAP,
) -> np.ndarray:
    """Uniform regular alcove points with sum_l |z_l(xi, y)| <= cond_cap.

    Near the walls the z_l blow up and cancel in sum(z) = 1, which then holds
    only to about eps * sum|z_l| in double precision (even exact arithmetic on
    the rounded xi misses by more, since sum(xi) = pi is itself rounded).
    """
    out, drawn = [], 0
    batch = max(256, 2 * size)
    while sum(len(o) for o in out) < size:
        if drawn >= cap:
            raise SamplingExhausted(f"fewer than {size} acceptances after {cap} draws")
        m = min(batch, cap - drawn)
        xi = uniform_alcove(rng, c.n, m)
        drawn += m
        with np.errstate(all="ignore"):
            cond = np.sum(np.abs(z_raw(xi, c.y)), axis=1)
        out.append(xi[np.all(xi > 0, axis=1) & (cond <= cond_cap)])
    return np.concatenate(out)[:size]


def sample_Ay_plus(
    c: Coupling,
    size: int,
    rng: np.random.Generator,
    margin: float = 1e-8,
    cap: int = RESAMPLE_CAP,
) -> np.ndarray:
    """Rejection sample ``size`` points of A_y^+ with every z_l(xi, y) > margin.

    Proposals are uniform on the alcove, or uniform on the simplex A_y itself
    for type (i) couplings, whose simplex can be a tiny corner of the alcove.
    """
    propose = _proposal(c)
    out, drawn = [], 0
    batch = max(256, 4 * size)
    while sum(len(o) for o in out) < size:
        if drawn >= cap:
            raise SamplingExhausted(f"fewer than {size} acceptances after {cap} draws")
        m = min(batch, cap - drawn)
        xi = propose(rng, m)
        drawn += m
        zp = z_raw(xi, c.y)
        zm = z_raw(xi, -c.y)
        ok = np.all(xi > 0, axis=1) & np.all(zp > margin, axis=1) & np.all(zm > 0, axis=1)
        out.append(xi[ok])
    return np.concatenate(out)[:size]


def _proposal(c: Coupling):
    cl = classify(c)
    if cl.verdict is Verdict.TYPE_I:
        verts = np.pi * np.array(b_simplex_vertices(c.n, cl.p, c), dtype=float)
        return lambda rng, m: rng.dirichlet(np.ones(c.n), size=m) @ verts
    return lambda rng, m: uniform_alcove(rng, c.n, m)


def sample_torus(rng: np.random.Generator, n: int, size: int) -> np.ndarray:
    """Uniform angles theta_1..theta_{n-1}."""
    return rng.uniform(-np.pi, np.pi, size=(size, n - 1))
