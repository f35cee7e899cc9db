"""The z-functions, the moment polytope A_y and its combinatorics.

Polytope data live on the hyperplane ``sum(xi) = pi`` and are stored in
units of pi: a vertex ``(2/5, 1/5, 1/5, 1/5)`` means ``xi = (2pi/5, ...)``.
Exact couplings give Fraction data throughout; float couplings give floats.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .alcove import AlcovePoint
from .coupling import Coupling, is_regular
from .errors import (
    DegenerateSimplex,
    DimensionMismatch,
    EnumerationCap,
    IrregularCoupling,
    NearPole,
    NotCoprime,
    SingularAlcovePoint,
    Unbounded,
)

ZERO_CLAMP = 1e-12
NEGATIVE_Z = 1e-9
POLE_TOL = 1e-14
ENUM_CAP = 8
DEDUP_TOL = 1e-10
FEAS_TOL = 1e-9


# --------------------------------------------------------------------------
# z-functions


def partial_sums(xi) -> np.ndarray:
    """``S[..., l, m-1] = xi_l + ... + xi_{l+m-1}`` (cyclic), m = 1..n-1."""
    xi = np.asarray(xi)
    if xi.dtype != np.longdouble:
        xi = xi.astype(float)
    n = xi.shape[-1]
    # summed term by term from each start, so rounding commutes with the cyclic shift
    out = np.empty(xi.shape[:-1] + (n, n - 1), dtype=xi.dtype)
    acc = np.array(xi)
    out[..., 0] = acc
    for m in range(1, n - 1):
        acc = acc + np.roll(xi, -m, axis=-1)
        out[..., m] = acc
    return out


def z_raw(xi, y: float) -> np.ndarray:
    """Product-of-sines form of z_l(xi, y); broadcasts over leading axes."""
    # extended precision where the platform has it; near a pole the z_l are
    # large and cancel in sum(z) = 1, so only the final rounding should remain
    xi = np.asarray(xi, dtype=np.longdouble)
    n = xi.shape[-1]
    y = np.longdouble(y)
    s = partial_sums(xi)
    # windows past pi/2 go through their complement c = pi - s, which keeps
    # sin(s) accurate near s = pi; the choice commutes with the cyclic shift
    m = np.arange(1, n)
    comp = s[..., (np.arange(n)[:, None] + m[None, :]) % n, (n - m - 1)[None, :]]
    pref = np.sin(y) / np.sin(n * y)
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = np.sin(s - y) / np.sin(s)
        via_comp = np.sin(comp + y) / np.sin(comp)
        z = pref * np.prod(np.where(s <= 0.5 * math.pi, direct, via_comp), axis=-1)
    return z.astype(float)


def _y_of(c) -> float:
    return c.y if isinstance(c, Coupling) else float(c)


def z_vector(xi, c: Coupling | float) -> np.ndarray:
    """z_l(xi, y) for l = 1..n at a regular alcove point."""
    xi = np.asarray(xi, dtype=float).reshape(-1)
    if isinstance(c, Coupling) and c.n != xi.shape[0]:
        raise DimensionMismatch(f"coupling is for n={c.n}, point has {xi.shape[0]} components")
    if np.any(xi <= 0.0):
        raise SingularAlcovePoint(f"z is undefined at the singular point {xi}")
    if np.min(np.abs(np.sin(partial_sums(xi)))) < POLE_TOL:
        raise NearPole("a cyclic partial sum of xi is too close to a multiple of pi")
    return z_raw(xi, _y_of(c))


def clamp_z(z: np.ndarray) -> np.ndarray:
    z = np.array(z, dtype=float)
    z[np.abs(z) <= ZERO_CLAMP] = 0.0
    return z


def in_Ay_plus(xi, c: Coupling) -> bool:
    """True iff xi is regular and every z_l(xi, y) is strictly positive."""
    xi = np.asarray(xi, dtype=float).reshape(-1)
    if np.any(xi <= 0.0):
        return False
    try:
        z = clamp_z(z_vector(xi, c))
    except NearPole:
        return False
    return bool(np.all(z > 0.0))


def cyclic_window_sums(xi, length: int) -> np.ndarray:
    """``xi_l + ... + xi_{l+length-1}`` for every l (cyclic)."""
    xi = np.asarray(xi, dtype=float)
    out = np.zeros_like(xi)
    for i in range(length):
        out = out + np.roll(xi, -i, axis=-1)
    return out


def in_Ay_plus_inequalities(xi, c: Coupling) -> bool:
    """Membership in A_y^+ via the linear window inequalities with k = floor(ny/pi)."""
    xi = np.asarray(xi, dtype=float).reshape(-1)
    if np.any(xi <= 0.0):
        return False
    n, y, k = c.n, c.y, c.k
    ok = True
    if k >= 1:
        ok &= bool(np.all(cyclic_window_sums(xi, k) < y))
    if k <= n - 2:
        ok &= bool(np.all(cyclic_window_sums(xi, k + 1) > y))
    return ok


def membership_margin(xi, c: Coupling) -> float:
    """Smallest slack of the window inequalities (negative when violated)."""
    xi = np.asarray(xi, dtype=float).reshape(-1)
    n, y, k = c.n, c.y, c.k
    slacks = [xi.min()]
    if k >= 1:
        slacks.append(np.min(y - cyclic_window_sums(xi, k)))
    if k <= n - 2:
        slacks.append(np.min(cyclic_window_sums(xi, k + 1) - y))
    return float(min(slacks))


# --------------------------------------------------------------------------
# H-representation and vertex enumeration


@dataclass(frozen=True)
class Inequality:
    """``normal . (xi/pi) <= bound`` with an integer normal."""

    normal: tuple[int, ...]
    bound: Fraction | float
    label: str = ""

    def slack(self, x) -> Fraction | float:
        return self.bound - sum(a * b for a, b in zip(self.normal, x))


def _exact_solve(rows: list[tuple[int, ...]], rhs: list) -> list[Fraction] | None:
    """Gauss-Jordan elimination over the rationals; None if singular."""
    m = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    size = len(m)
    for col in range(size):
        piv = next((r for r in range(col, size) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [v / pv for v in m[col]]
        for r in range(size):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [row[-1] for row in m]


@dataclass(frozen=True, eq=False)
class Polytope:
    """Polytope in the affine hyperplane ``sum(xi) = pi`` (units of pi).

    ``vertex_rows`` optionally restricts candidate generation to a subset of
    rows known to determine every vertex; feasibility is always checked
    against the full inequality list.
    """

    n: int
    inequalities: tuple[Inequality, ...]
    exact: bool = True
    vertex_rows: tuple[int, ...] | None = None
    coupling: Coupling | None = field(default=None, compare=False)
    # True when xi >= 0 is among the rows, so boundedness needs no LP
    bounded: bool = False

    @cached_property
    def normals(self) -> np.ndarray:
        return np.array([iq.normal for iq in self.inequalities], dtype=float)

    @cached_property
    def bounds(self) -> np.ndarray:
        return np.array([float(iq.bound) for iq in self.inequalities])

    def contains(self, x, tol: float = FEAS_TOL) -> bool:
        """Membership of a point given in units of pi."""
        x = np.asarray(x, dtype=float)
        return bool(abs(x.sum() - 1) <= tol and np.all(self.normals @ x <= self.bounds + tol))

    def is_bounded(self) -> bool:
        """No nonzero recession direction d with sum(d)=0 and N d <= 0."""
        if self.bounded:
            return True
        from scipy.optimize import linprog

        n = self.n
        a_eq = np.ones((1, n))
        for i in range(n):
            for sign in (1.0, -1.0):
                cost = np.zeros(n)
                cost[i] = -sign
                res = linprog(cost, A_ub=self.normals, b_ub=np.zeros(len(self.inequalities)),
                              A_eq=a_eq, b_eq=[0.0], bounds=[(-1, 1)] * n, method="highs")
                if res.status == 0 and -res.fun > 1e-9:
                    return False
        return True

    @cached_property
    def vertices(self) -> list[tuple]:
        """Vertices in units of pi, sorted; Fractions when exact."""
        if self.n > ENUM_CAP:
            raise EnumerationCap(f"vertex enumeration is capped at n <= {ENUM_CAP}, got n={self.n}")
        return _enumerate_vertices(self)

    def vertices_rad(self) -> list[np.ndarray]:
        return [np.pi * np.array([float(v) for v in vert]) for vert in self.vertices]

    def active_set(self, vertex, tol: float = FEAS_TOL) -> frozenset[int]:
        out = set()
        for i, iq in enumerate(self.inequalities):
            s = iq.slack(vertex)
            if (s == 0) if self.exact else (abs(float(s)) <= tol):
                out.add(i)
        return frozenset(out)


def _enumerate_vertices(poly: Polytope) -> list[tuple]:
    n = poly.n
    rows = list(poly.vertex_rows) if poly.vertex_rows is not None else list(range(len(poly.inequalities)))
    # identical hyperplanes give identical candidate systems
    seen, uniq = set(), []
    for r in rows:
        key = (poly.inequalities[r].normal, poly.inequalities[r].bound)
        if key not in seen:
            seen.add(key)
            uniq.append(r)
    rows = uniq
    normals, bounds = poly.normals, poly.bounds
    found: dict[tuple, tuple[int, ...]] = {}
    combos = itertools.combinations(rows, n - 1)
    while True:
        chunk = np.array(list(itertools.islice(combos, 20000)), dtype=int)
        if chunk.size == 0:
            break
        chunk = chunk.reshape(-1, n - 1)
        mats = np.empty((len(chunk), n, n))
        mats[:, :-1, :] = normals[chunk]
        mats[:, -1, :] = 1.0
        rhs = np.empty((len(chunk), n))
        rhs[:, :-1] = bounds[chunk]
        rhs[:, -1] = 1.0
        # integer matrices: nonsingular iff |det| >= 1
        keep = np.abs(np.linalg.det(mats)) > 0.5
        if not np.any(keep):
            continue
        sol = np.linalg.solve(mats[keep], rhs[keep][..., None])[..., 0]
        feas = np.all(sol @ normals.T <= bounds + FEAS_TOL, axis=1)
        for x, combo in zip(sol[feas], chunk[keep][feas]):
            key = tuple(np.round(x / DEDUP_TOL).astype(np.int64))
            found.setdefault(key, tuple(combo))
    verts = []
    if poly.exact:
        exact_seen = set()
        for combo in found.values():
            sys_rows = [poly.inequalities[i].normal for i in combo] + [(1,) * n]
            sys_rhs = [poly.inequalities[i].bound for i in combo] + [Fraction(1)]
            x = _exact_solve(sys_rows, sys_rhs)
            if x is None or any(iq.slack(x) < 0 for iq in poly.inequalities):
                continue
            t = tuple(x)
            if t not in exact_seen:
                exact_seen.add(t)
                verts.append(t)
    else:
        pts = []
        for combo in found.values():
            a = np.vstack([normals[list(combo)], np.ones(n)])
            b = np.append(bounds[list(combo)], 1.0)
            x = np.linalg.solve(a, b)
            if not any(np.max(np.abs(x - p)) <= DEDUP_TOL for p in pts):
                pts.append(x)
        verts = [tuple(float(v) for v in p) for p in pts]
    return sorted(verts)


def _ratio(c: Coupling) -> Fraction | float:
    return c.ratio if c.is_exact else c.radians / math.pi


def _window(n: int, start: int, length: int, sign: int = 1) -> tuple[int, ...]:
    v = [0] * n
    for i in range(length):
        v[(start + i) % n] = sign
    return tuple(v)


def ay_polytope(n: int, c: Coupling) -> Polytope:
    """H-representation of A_y = B(k, y) ∩ B(k+1, y) plus xi >= 0."""
    if c.n != n:
        raise DimensionMismatch(f"coupling is for n={c.n}")
    if not is_regular(c):
        raise IrregularCoupling(f"{c} violates the regularity condition")
    t = _ratio(c)
    k = c.k
    ineqs, window_rows = [], []
    for l in range(n):
        if k >= 1:
            window_rows.append(len(ineqs))
            ineqs.append(Inequality(_window(n, l, k), t, f"sum[{l + 1}:+{k}] <= y"))
        if k <= n - 2:
            window_rows.append(len(ineqs))
            ineqs.append(Inequality(_window(n, l, k + 1, -1), -t, f"sum[{l + 1}:+{k + 1}] >= y"))
    zero = Fraction(0) if c.is_exact else 0.0
    for l in range(n):
        e = [0] * n
        e[l] = -1
        ineqs.append(Inequality(tuple(e), zero, f"xi_{l + 1} >= 0"))
    # nonnegativity rows are implied by (and, when tight, spanned by) the window rows
    return Polytope(n, tuple(ineqs), exact=c.is_exact, vertex_rows=tuple(window_rows), coupling=c, bounded=True)


def b_polytope(n: int, p: int, c: Coupling) -> Polytope:
    """The polyhedron B(p, y): n cyclic window constraints of length p containing xi*."""
    t = _ratio(c)
    centre = Fraction(p, n)
    if t == centre:
        raise DegenerateSimplex("y = p*pi/n")
    sign = 1 if t > centre else -1
    ineqs = tuple(Inequality(_window(n, l, p, sign), sign * t, f"window {l + 1}") for l in range(n))
    return Polytope(n, ineqs, exact=c.is_exact, coupling=c)


def b_simplex_vertices(n: int, p: int, c: Coupling) -> list[tuple]:
    """The n vertices of the simplex B(p, y), in units of pi."""
    if math.gcd(n, p) != 1 or not 1 <= p <= n - 1:
        raise NotCoprime(f"need 1 <= p <= n-1 with gcd(n, p) = 1, got n={n}, p={p}")
    t = _ratio(c)
    q = pow(p, -1, n)
    if c.is_exact:
        yt = t - Fraction(p, n)
        if yt == 0:
            raise DegenerateSimplex("y = p*pi/n collapses B(p, y) to xi*")
        a = Fraction(1, n) + q * yt
        b = Fraction(1, n) - (n - q) * yt
    else:
        yt = t - p / n
        if abs(yt) * math.pi <= 1e-12:
            raise DegenerateSimplex("y = p*pi/n collapses B(p, y) to xi*")
        a = 1 / n + q * yt
        b = 1 / n - (n - q) * yt
    a_slots = {(j * p - 1) % n for j in range(1, n - q + 1)}
    base = [a if i in a_slots else b for i in range(n)]
    return [tuple(base[(i + s) % n] for i in range(n)) for s in range(n)]


# --------------------------------------------------------------------------
# combinatorics


def edge_graph(poly: Polytope) -> dict[int, set[int]]:
    """Vertex adjacency from the facet-incidence data."""
    verts = poly.vertices
    n = poly.n
    active = [poly.active_set(v) for v in verts]
    adj: dict[int, set[int]] = {i: set() for i in range(len(verts))}
    for i, j in itertools.combinations(range(len(verts)), 2):
        common = sorted(active[i] & active[j])
        if len(common) < n - 2:
            continue
        mat = np.vstack([poly.normals[common], np.ones(n)]) if common else np.ones((1, n))
        if np.linalg.matrix_rank(mat) == n - 1:
            adj[i].add(j)
            adj[j].add(i)
    return adj


def delzant_edge_counts(poly: Polytope) -> list[tuple[tuple, int]]:
    """Number of edges at every vertex."""
    if not poly.is_bounded():
        raise Unbounded("polytope has a recession direction")
    adj = edge_graph(poly)
    return [(v, len(adj[i])) for i, v in enumerate(poly.vertices)]


def is_delzant_candidate(poly: Polytope) -> bool:
    """Every vertex meets exactly dim = n-1 edges."""
    return all(cnt == poly.n - 1 for _, cnt in delzant_edge_counts(poly))


def fixed_points(n: int, c: Coupling, tol: float = 1e-9) -> list[AlcovePoint]:
    """Regular vertices of A_y at which z is a standard basis vector."""
    poly = ay_polytope(n, c)
    out = []
    for x in poly.vertices_rad():
        if np.any(x <= tol):
            continue
        z = z_vector(x, c)
        k = int(np.argmax(z))
        target = np.zeros(n)
        target[k] = 1.0
        if np.max(np.abs(z - target)) <= tol:
            out.append(AlcovePoint(x))
    return out


def char_poly_residual(xi, y: float, x, weights=None) -> np.ndarray:
    """Residual of the characteristic-polynomial identity at points x, relative
    to the largest summand.

    Compares prod(delta_j - x) with the spectrum of mu_v delta(xi) expanded
    using |v_k|^2 = weights (default: z(xi, y)).  Broadcasts: xi has shape
    (..., n) and x shape (..., m); the result has shape (..., m).
    """
    from .alcove import delta_entries

    xi = np.asarray(xi, dtype=float)
    n = xi.shape[-1]
    d = delta_entries(xi)[..., None, :]
    w = (z_raw(xi, y) if weights is None else np.asarray(weights))[..., None, :]
    x = np.asarray(x, dtype=complex)[..., :, None]
    e2 = np.exp(2j * y)
    lhs = np.prod(d - x, axis=-1)
    shifted = d * e2 - x
    full = np.prod(shifted, axis=-1)
    others = np.stack([np.prod(np.delete(shifted, k, axis=-1), axis=-1) for k in range(n)], axis=-1)
    terms = (np.exp(2j * (1 - n) * y) - e2) * (w * d * others)
    rhs = full + np.sum(terms, axis=-1)
    # relative to the size of the summands, which cancel when some |z_k| is large
    scale = np.maximum(np.maximum(1.0, np.abs(lhs)), np.maximum(np.abs(full), np.sum(np.abs(terms), axis=-1)))
    return np.abs(lhs - rhs) / scale
