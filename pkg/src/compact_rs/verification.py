"""Randomized invariant suites behind the ``verify`` command."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .alcove import delta, spectral_xi
from .coupling import Coupling, Verdict, classify
from .double import (
    TorusElement,
    discriminant,
    duality_S,
    fingerprint,
    hamiltonian,
    local_lax,
    moment,
    mu0,
    reconstruct,
    torus_act,
    v_of_xi,
)
from .errors import InvalidCoupling
from .sampling import rng_for, sample_Ay_plus, sample_torus, well_conditioned_alcove
from .toric import (
    chart_inverse,
    chi0,
    compare_hamiltonians,
    embed_E,
    global_lax,
    moment_J,
    old_coordinates,
    rotate,
)
from .zpolytope import char_poly_residual, membership_margin, partial_sums, z_raw, z_vector

SUITES = ("zsum", "lax", "moment", "duality", "toric")


@dataclass
class Check:
    name: str
    tol: float
    max_residual: float = 0.0
    worst_sample: dict | None = None
    skipped: str | None = None

    def record(self, value: float, sample: dict) -> None:
        value = float(value)
        if not np.isfinite(value):
            value = math.inf
        if self.worst_sample is None or value > self.max_residual:
            self.max_residual = max(self.max_residual, value)
            self.worst_sample = sample

    @property
    def passed(self) -> bool:
        return self.skipped is not None or self.max_residual <= self.tol

    def as_dict(self) -> dict:
        out = {"name": self.name, "tol": self.tol, "max_residual": self.max_residual, "passed": self.passed}
        if self.skipped is not None:
            out["skipped"] = self.skipped
        elif not self.passed:
            out["failing_sample"] = self.worst_sample
        return out


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _sample(xi, theta) -> dict:
    return {"xi": [float(v) for v in xi], "theta": [float(v) for v in theta]}


def _points(c: Coupling, samples: int, seed: int, stream: int):
    rng = rng_for(seed, stream)
    xs = sample_Ay_plus(c, samples, rng)
    ts = sample_torus(rng, c.n, samples)
    return xs, ts


def suite_zsum(c: Coupling, samples: int, seed: int, tol: float) -> SuiteReport:
    rep = SuiteReport("zsum")
    zsum = Check("z_sum_equals_one", tol)
    shift = Check("z_sigma_equivariance", min(tol, 1e-12))
    cp = Check("char_poly_identity_relative", max(tol * 10, 1e-8))
    rng = rng_for(seed, 100)
    xs = well_conditioned_alcove(c, samples, rng)
    for x in xs[:1]:
        z_vector(x, c)  # dimension and domain checks
    z = z_raw(xs, c.y)
    sums = np.array([abs(math.fsum(row) - 1.0) for row in z])
    shifts = np.max(np.abs(z_raw(np.roll(xs, -1, axis=1), c.y) - np.roll(z, -1, axis=1)), axis=1)
    pts = rng.normal(size=(samples, 20)) + 1j * rng.normal(size=(samples, 20))
    cps = np.max(char_poly_residual(xs, c.y, pts), axis=1)
    for check, vals in ((zsum, sums), (shift, shifts), (cp, cps)):
        i = int(np.argmax(vals))
        check.record(vals[i], _sample(xs[i], []))
    rep.checks += [zsum, shift, cp]
    return rep


def suite_lax(c: Coupling, samples: int, seed: int, tol: float) -> SuiteReport:
    rep = SuiteReport("lax")
    unit = Check("lax_unitarity", tol)
    det = Check("lax_det_minus_one", tol)
    ham = Check("re_trace_equals_hamiltonian", tol)
    exch = Check("exchange_relation", tol)
    n, y = c.n, c.y
    xs, ts = _points(c, samples, seed, 1)
    for x, th in zip(xs, ts):
        smp = _sample(x, th)
        lax = local_lax(x, TorusElement.from_angles(th), c)
        unit.record(np.max(np.abs(lax.conj().T @ lax - np.eye(n))), smp)
        det.record(abs(np.linalg.det(lax) - 1.0), smp)
        ham.record(abs(np.trace(lax).real - hamiltonian(x, th, c)), smp)
        v = v_of_xi(x, c)
        mu_v = np.exp(2j * y) * np.eye(n) + (np.exp(2j * (1 - n) * y) - np.exp(2j * y)) * np.outer(v, v)
        d = delta(x)
        exch.record(np.max(np.abs(lax @ d @ lax.conj().T - mu_v @ d)), smp)
    rep.checks += [unit, det, ham, exch]
    return rep


def suite_moment(c: Coupling, samples: int, seed: int, tol: float) -> SuiteReport:
    rep = SuiteReport("moment")
    res = Check("moment_residual", tol)
    beta = Check("spectral_xi_of_B_equals_xi", tol)
    alpha = Check("spectral_xi_of_A_in_Ay", tol)
    disc = Check("discriminant_matches_eigenvalue_gaps_relative", 1e-6)
    xs, ts = _points(c, samples, seed, 2)
    target = mu0(c.n, c)
    for x, th in zip(xs, ts):
        smp = _sample(x, th)
        pair = reconstruct(x, TorusElement.from_angles(th), c)
        res.record(np.max(np.abs(moment(pair) - target)), smp)
        beta.record(np.max(np.abs(spectral_xi(pair.b).xi - x)), smp)
        alpha.record(max(0.0, -membership_margin(spectral_xi(pair.a).xi, c)), smp)
        s = partial_sums(x)
        expected = np.prod(4 * np.sin(s) ** 2) ** 0.5  # each unordered pair appears twice
        got = abs(discriminant(pair.b))
        disc.record(abs(got - expected) / expected if expected > 0 else math.inf, smp)
    rep.checks += [res, beta, alpha, disc]
    return rep


def suite_duality(c: Coupling, samples: int, seed: int, tol: float) -> SuiteReport:
    rep = SuiteReport("duality")
    ab = Check("alpha_equals_beta_after_S", tol)
    spow = Check("moment_residual_under_S_powers", tol)
    act_res = Check("torus_action_moment_residual", tol)
    act_b = Check("torus_action_B_unchanged", 0.0)
    comp = Check("torus_action_composition", tol)
    xs, ts = _points(c, samples, seed, 3)
    rng = rng_for(seed, 4)
    target = mu0(c.n, c)
    for x, th in zip(xs, ts):
        smp = _sample(x, th)
        pair = reconstruct(x, TorusElement.from_angles(th), c)
        cur = pair
        for _ in range(4):
            nxt = duality_S(cur)
            ab.record(np.max(np.abs(spectral_xi(cur.a).xi - spectral_xi(nxt.b).xi)), smp)
            spow.record(np.max(np.abs(moment(nxt) - target)), smp)
            cur = nxt
        t1 = TorusElement.from_angles(rng.uniform(-np.pi, np.pi, c.n - 1))
        t2 = TorusElement.from_angles(rng.uniform(-np.pi, np.pi, c.n - 1))
        acted = torus_act(t1, pair, c)
        act_res.record(np.max(np.abs(moment(acted) - target)), smp)
        act_b.record(np.max(np.abs(acted.b - pair.b)), smp)
        twice = torus_act(t2, acted, c)
        once = torus_act(t1 * t2, pair, c)
        comp.record(np.max(np.abs(fingerprint(twice) - fingerprint(once))), smp)
    rep.checks += [ab, spow, act_res, act_b, comp]
    return rep


def toric_partner(c: Coupling) -> tuple[float, float, float, float] | None:
    """(y_new, y_old, lam_ratio, sign) for a p in {1, n-1} type (i) coupling, else None.

    y_new lies in (pi/n, pi/(n-1)) and y_old in (0, pi/n), matched by
    lam'(pi - n y') = lam(n y - pi); lam_ratio is lam'/lam.  For p = n-1 the
    conjugate coupling pi - y is used (same moment polytope).
    """
    n = c.n
    if n < 3:
        return None
    cl = classify(c)
    if cl.verdict is not Verdict.TYPE_I or cl.p not in (1, n - 1):
        return None
    y = c.y if cl.p == 1 else math.pi - c.y
    lo, hi = math.pi / n, math.pi / (n - 1)
    if lo < y < hi:
        y_new, y_old = y, 2 * math.pi / n - y
    else:
        y_new, y_old = 0.5 * (lo + hi), y
    ratio = (n * y_new - math.pi) / (math.pi - n * y_old)
    return y_new, y_old, ratio, 1.0


def suite_toric(c: Coupling, samples: int, seed: int, tol: float, lam: float = 1.0) -> SuiteReport:
    rep = SuiteReport("toric")
    partner = toric_partner(c)
    names = [
        ("moment_J_of_E_equals_lambda_xi", min(tol, 1e-12)),
        ("norm_equals_chi0", min(tol, 1e-12)),
        ("chart_round_trip", max(tol, 1e-10)),
        ("global_lax_unitarity", tol),
        ("global_lax_trace_matches_local", tol),
        ("rotation_preserves_J", min(tol, 1e-12)),
        ("hamiltonian_closed_form_vs_substitution", tol),
    ]
    checks = [Check(nm, t) for nm, t in names]
    rep.checks += checks
    if partner is None:
        for ch in checks:
            ch.skipped = "needs a type (i) coupling with p in {1, n-1} and n >= 3"
        return rep
    y_new, y_old, ratio, _ = partner
    cn = Coupling.rad(c.n, y_new)
    lam_p = ratio * lam
    xs, ts = _points(cn, samples, seed, 5)
    rng = rng_for(seed, 6)
    jE, nrm, rt, gu, gt, rot, ham = checks
    for x, th in zip(xs, ts):
        smp = _sample(x, th)
        t = TorusElement.from_angles(th)
        pt = embed_E(x, t, lam, cn)
        jE.record(np.max(np.abs(moment_J(pt, lam, cn) - lam * x)), smp)
        nrm.record(abs(np.vdot(pt.u, pt.u).real - chi0(c.n, lam, cn)), smp)
        xi_b, t_b = chart_inverse(pt, lam, cn)
        rt.record(max(np.max(np.abs(xi_b.xi - x)), np.max(np.abs(t_b.tau - t.tau))), smp)
        gl = global_lax(pt, lam, cn)
        gu.record(max(np.max(np.abs(gl.conj().T @ gl - np.eye(c.n))), abs(np.linalg.det(gl) - 1)), smp)
        gt.record(abs(np.trace(gl) - np.trace(local_lax(x, t, cn))), smp)
        t2 = TorusElement.from_angles(rng.uniform(-np.pi, np.pi, c.n - 1))
        rot.record(np.max(np.abs(moment_J(rotate(pt, t2), lam, cn) - moment_J(pt, lam, cn))), smp)
        xp, thp = old_coordinates(x, th, lam, lam_p, y_new, y_old)
        if np.all(xp > y_old):
            h = compare_hamiltonians(xp, thp, lam, lam_p, y_new, y_old)
            ham.record(abs(h.h_new_closed_form - h.h_new_substituted), smp)
    return rep


def run_suite(name: str, c: Coupling, samples: int, seed: int, tol: float, lam: float = 1.0) -> list[SuiteReport]:
    if name == "all":
        return [run_suite(s, c, samples, seed, tol, lam)[0] for s in SUITES]
    if name == "toric":
        return [suite_toric(c, samples, seed, tol, lam)]
    fn = {"zsum": suite_zsum, "lax": suite_lax, "moment": suite_moment, "duality": suite_duality}.get(name)
    if fn is None:
        raise InvalidCoupling(f"unknown suite {name!r}")
    return [fn(c, samples, seed, tol)]
