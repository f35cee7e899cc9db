import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from compact_rs.coupling import Coupling, Verdict, classify, is_regular, type_one_intervals
from compact_rs.errors import AmbiguousClassification, InvalidCoupling


def oracle_regular(n, t):
    # exp(2imy) = 1  <=>  m*y/pi is an integer
    return all((m * t).denominator != 1 for m in range(1, n + 1))


def oracle_intervals(n):
    """Intervals through m_p = (pq-1)/n: a = m_p/q, b = (p - m_p)/(n - q); q by search."""
    out = []
    for p in range(1, n):
        if math.gcd(p, n) != 1:
            continue
        q = next(q for q in range(1, n + 1) if (p * q) % n == 1 % n)
        m_p = (p * q - 1) // n
        out.append((p, q, Fraction(m_p, q), Fraction(p - m_p, n - q)))
    return out


def oracle_classify(n, t):
    if not oracle_regular(n, t):
        return Verdict.IRREGULAR, None
    hits = [p for p, q, a, b in oracle_intervals(n) if a < t < b]
    assert len(hits) <= 1
    return (Verdict.TYPE_I, hits[0]) if hits else (Verdict.TYPE_II, None)


@pytest.mark.parametrize("n", range(2, 13))
def test_classify_matches_brute_force_oracle(n):
    for s in range(2, 201):
        for r in range(1, s):
            if math.gcd(r, s) != 1:
                continue
            t = Fraction(r, s)
            cl = classify(Coupling(n, ratio=t))
            verdict, p = oracle_classify(n, t)
            assert cl.verdict is verdict, (n, t)
            if verdict is Verdict.TYPE_I:
                assert cl.p == p
                assert (cl.p * cl.q) % n == 1 % n
                assert cl.interval.a < t < cl.interval.b


@pytest.mark.parametrize("n", range(2, 13))
def test_interval_endpoints(n):
    ivs = type_one_intervals(n)
    assert [iv.p for iv in ivs] == sorted(iv.p for iv in ivs)
    by_p = {iv.p: iv for iv in ivs}
    for (p, q, a, b), iv in zip(oracle_intervals(n), ivs):
        assert (iv.p, iv.q, iv.a, iv.b) == (p, q, a, b)
        assert iv.a == Fraction(p, n) - Fraction(1, n * q)
        assert iv.b == Fraction(p, n) + Fraction(1, n * (n - q))
        assert iv.a < Fraction(p, n) < iv.b
        assert by_p[n - p].a == 1 - iv.b
        # interior endpoints are never regular couplings
        for end in (iv.a, iv.b):
            if 0 < end < 1:
                assert not is_regular(Coupling(n, ratio=end))


def test_small_n_tables():
    assert [(i.p, i.q, i.a, i.b) for i in type_one_intervals(3)] == [
        (1, 1, 0, Fraction(1, 2)),
        (2, 2, Fraction(1, 2), 1),
    ]
    assert [(i.p, i.q, i.a, i.b) for i in type_one_intervals(4)] == [
        (1, 1, 0, Fraction(1, 3)),
        (3, 3, Fraction(2, 3), 1),
    ]


def test_regularity_examples():
    assert not is_regular(Coupling.exact(4, 1, 4))
    assert is_regular(Coupling.exact(4, 2, 5))
    assert is_regular(Coupling.rad(3, 0.123456))


def test_classify_examples():
    assert classify(Coupling.exact(4, 2, 5)).verdict is Verdict.TYPE_II
    assert classify(Coupling.exact(5, 3, 10)).verdict is Verdict.TYPE_II
    cl = classify(Coupling.exact(5, 9, 20))
    assert (cl.verdict, cl.p, cl.q) == (Verdict.TYPE_I, 2, 3)
    assert classify(Coupling.exact(4, 1, 4)).verdict is Verdict.IRREGULAR
    for n in range(3, 10):
        mid = (Fraction(1, n) + Fraction(1, n - 1)) / 2
        cl = classify(Coupling(n, ratio=mid))
        assert (cl.verdict, cl.p, cl.q) == (Verdict.TYPE_I, 1, 1)


@pytest.mark.parametrize("n", [2, 3])
def test_no_type_two_for_small_n(n):
    for s in range(n + 1, 80):
        for r in range(1, s):
            if math.gcd(r, s) == 1:
                assert classify(Coupling.exact(n, r, s)).verdict is Verdict.TYPE_I


@given(n=st.integers(2, 12), s=st.integers(2, 300), r=st.integers(1, 299))
def test_conjugation_symmetry(n, s, r):
    if not r < s:
        return
    c = Coupling.exact(n, r, s)
    a, b = classify(c), classify(c.conjugate())
    assert a.verdict is b.verdict
    if a.verdict is Verdict.TYPE_I:
        assert b.p == n - a.p


def test_float_near_endpoint_is_ambiguous():
    with pytest.raises(AmbiguousClassification):
        classify(Coupling.rad(4, math.pi / 3 + 1e-14))
    # exact input at the same place is decided
    assert classify(Coupling.exact(4, 1, 3)).verdict is Verdict.IRREGULAR


def test_float_and_exact_agree_away_from_endpoints():
    rng = np.random.default_rng(5)
    for _ in range(300):
        n = int(rng.integers(2, 10))
        t = Fraction(int(rng.integers(1, 997)), 997)
        assert classify(Coupling(n, ratio=t)).verdict is classify(Coupling.rad(n, math.pi * float(t))).verdict


def test_parse_and_validation():
    assert Coupling.parse(4, "2/5").ratio == Fraction(2, 5)
    assert Coupling.parse(4, "rad:1.25").radians == 1.25
    for bad in ("3/2", "0", "x", "1/0"):
        with pytest.raises(InvalidCoupling):
            Coupling.parse(4, bad)
    with pytest.raises(InvalidCoupling):
        Coupling.rad(3, 4.0)
