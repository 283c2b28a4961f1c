"""Exact scalar fields: a prime field GF(q) and the rationals.

Elements of GF(q) are stored as the symmetric representative in
``(-q/2, q/2]`` so that structural coefficients +1/-1 keep their sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

DEFAULT_PRIME = 32749


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    q: int = DEFAULT_PRIME

    def __post_init__(self):
        if not _is_prime(self.q):
            raise ValueError(f"field order {self.q} is not prime")

    @property
    def name(self) -> str:
        return f"gf:{self.q}"

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            return self.div(x.numerator, x.denominator)
        r = int(x) % self.q
        return r - self.q if r > self.q // 2 else r

    def inv(self, x) -> int:
        x = int(x) % self.q
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self(pow(x, self.q - 2, self.q))

    def div(self, x, y) -> int:
        return self(int(x) * self.inv(y))


@dataclass(frozen=True)
class RationalField:
    @property
    def name(self) -> str:
        return "rational"

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def inv(self, x) -> Fraction:
        return 1 / Fraction(x)

    def div(self, x, y) -> Fraction:
        return Fraction(x) / Fraction(y)


Field = PrimeField | RationalField

GF = PrimeField(DEFAULT_PRIME)
QQ = RationalField()


def parse_field(spec: str) -> Field:
    """Parse a selector such as ``gf:32749`` or ``rational``."""
    s = spec.strip().lower()
    if s in ("rational", "q", "qq"):
        return QQ
    if s.startswith("gf:"):
        try:
            q = int(s[3:])
        except ValueError:
            raise ValueError(f"bad field selector {spec!r}") from None
        return PrimeField(q)
    raise ValueError(f"bad field selector {spec!r}; expected gf:<q> or rational")
