"""Coupling parameter y: regularity and the type (i) / type (ii) dichotomy.

Exact couplings are stored as the rational ``y/pi`` so that every
classification decision reduces to integer arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import AmbiguousClassification, InvalidCoupling

TOL_ANGLE = 1e-12


@dataclass(frozen=True)
class Coupling:
    """The coupling ``y`` attached to SU(n).

    Exactly one of ``ratio`` (y/pi as a Fraction) and ``radians`` is set.
    """

    n: int
    ratio: Fraction | None = None
    radians: float | None = None

    def __post_init__(self):
        if self.n < 1:
            raise InvalidCoupling(f"n must be positive, got {self.n}")
        if (self.ratio is None) == (self.radians is None):
            raise InvalidCoupling("give exactly one of ratio or radians")
        if self.ratio is not None:
            r = Fraction(self.ratio)
            object.__setattr__(self, "ratio", r)
            if not 0 < r < 1:
                raise InvalidCoupling(f"need 0 < y/pi < 1, got {r}")
        else:
            y = float(self.radians)
            object.__setattr__(self, "radians", y)
            if not 0.0 < y < math.pi:
                raise InvalidCoupling(f"need 0 < y < pi, got {y}")

    @classmethod
    def exact(cls, n: int, r: int, s: int = 1) -> "Coupling":
        """y = (r/s)*pi."""
        return cls(n, ratio=Fraction(r, s))

    @classmethod
    def rad(cls, n: int, y: float) -> "Coupling":
        return cls(n, radians=y)

    @classmethod
    def parse(cls, n: int, text: str) -> "Coupling":
        """Parse ``"r/s"`` as (r/s)*pi or ``"rad:x"`` as x radians."""
        text = text.strip()
        if text.startswith("rad:"):
            return cls.rad(n, float(text[4:]))
        try:
            return cls(n, ratio=Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidCoupling(f"cannot parse coupling {text!r}") from exc

    @property
    def is_exact(self) -> bool:
        return self.ratio is not None

    @property
    def y(self) -> float:
        """The coupling in radians."""
        if self.ratio is not None:
            return math.pi * self.ratio.numerator / self.ratio.denominator
        return self.radians

    @property
    def y_over_pi(self) -> Fraction | float:
        return self.ratio if self.ratio is not None else self.radians / math.pi

    @property
    def k(self) -> int:
        """The integer k with k*pi/n < y < (k+1)*pi/n."""
        if self.ratio is not None:
            return math.floor(self.n * self.ratio)
        return math.floor(self.n * self.radians / math.pi)

    def conjugate(self) -> "Coupling":
        """The coupling pi - y (complex conjugation of the double)."""
        if self.ratio is not None:
            return Coupling(self.n, ratio=1 - self.ratio)
        return Coupling(self.n, radians=math.pi - self.radians)

    def label(self) -> str:
        if self.ratio is not None:
            return f"{self.ratio.numerator}/{self.ratio.denominator}"
        return f"rad:{self.radians!r}"

    def __str__(self):
        return f"Coupling(n={self.n}, y={self.label()}{'' if self.radians is not None else '*pi'})"


@dataclass(frozen=True)
class TypeOneInterval:
    """Open interval (a*pi, b*pi) of type (i) couplings around p*pi/n."""

    n: int
    p: int
    q: int
    a: Fraction
    b: Fraction

    @property
    def centre(self) -> Fraction:
        return Fraction(self.p, self.n)

    def contains(self, t) -> bool:
        """Strict membership of y/pi."""
        return self.a < t < self.b


class Verdict(str, enum.Enum):
    IRREGULAR = "irregular"
    TYPE_I = "type_i"
    TYPE_II = "type_ii"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    p: int | None = None
    q: int | None = None
    interval: TypeOneInterval | None = None


def _angle_to_lattice(x: float, period: float) -> float:
    r = math.fmod(x, period)
    if r < 0:
        r += period
    return min(r, period - r)


def is_regular(c: Coupling, tol_angle: float = TOL_ANGLE) -> bool:
    """True iff exp(2imy) != 1 for m = 1..n."""
    if c.ratio is not None:
        # y = (r/s)pi in lowest terms: exp(2imy) = 1 iff s | m
        return c.ratio.denominator > c.n
    return all(_angle_to_lattice(2 * m * c.radians, 2 * math.pi) > tol_angle for m in range(1, c.n + 1))


def type_one_intervals(n: int) -> list[TypeOneInterval]:
    """All type (i) intervals for SU(n), sorted by p."""
    if n < 2:
        raise ValueError("need n >= 2")
    out = []
    for p in range(1, n):
        if math.gcd(n, p) != 1:
            continue
        q = pow(p, -1, n)
        a = Fraction(p, n) - Fraction(1, n * q)
        b = Fraction(p, n) + Fraction(1, n * (n - q))
        out.append(TypeOneInterval(n, p, q, a, b))
    return out


def classify(c: Coupling, tol_angle: float = TOL_ANGLE) -> Classification:
    intervals = type_one_intervals(c.n) if c.n >= 2 else []
    if c.ratio is None:
        t = c.radians / math.pi
        tol = tol_angle / math.pi
        for iv in intervals:
            for end in (iv.a, iv.b):
                if 0 < end < 1 and abs(t - float(end)) <= tol:
                    raise AmbiguousClassification(
                        f"y/pi = {t!r} is within {tol_angle} rad of the endpoint {end}"
                    )
    else:
        t = c.ratio
    if not is_regular(c, tol_angle):
        return Classification(Verdict.IRREGULAR)
    for iv in intervals:
        if iv.contains(t):
            return Classification(Verdict.TYPE_I, iv.p, iv.q, iv)
    return Classification(Verdict.TYPE_II)
