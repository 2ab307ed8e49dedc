"""Numerical Grothendieck group of P^3.

Classes are stored as Chern characters ``(ch0, ch1, ch2, ch3)`` in the
basis ``ch_i . H^(3-i)``; every coordinate is an exact ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple, Sequence, Union

RationalLike = Union[int, str, Fraction]

# Todd class of P^3 read backwards: chi(v) = ch0 + 11/6 ch1 + 2 ch2 + ch3
_TODD = (Fraction(1), Fraction(11, 6), Fraction(2), Fraction(1))


class KGroupError(ValueError):
    pass


class NonIntegral(KGroupError):
    """The class is not the Chern character of an honest bundle."""


class ZeroRank(KGroupError):
    pass


def to_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def format_fraction(x: Fraction) -> str:
    # Fraction.__str__ already omits a unit denominator
    return str(x)


class ChernCharacter(NamedTuple):
    ch0: Fraction
    ch1: Fraction
    ch2: Fraction
    ch3: Fraction

    @classmethod
    def of(cls, *coords: RationalLike) -> "ChernCharacter":
        if len(coords) == 1 and not isinstance(coords[0], (int, str, Fraction)):
            coords = tuple(coords[0])
        if len(coords) != 4:
            raise ValueError(f"a Chern character has 4 coordinates, got {len(coords)}")
        return cls(*(to_fraction(c) for c in coords))

    def __add__(self, other: "ChernCharacter") -> "ChernCharacter":  # type: ignore[override]
        return ChernCharacter(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ChernCharacter(*(a - b for a, b in zip(self, other)))

    def __neg__(self) -> "ChernCharacter":
        return ChernCharacter(*(-a for a in self))

    def __mul__(self, k: RationalLike) -> "ChernCharacter":  # type: ignore[override]
        k = to_fraction(k)
        return ChernCharacter(*(k * a for a in self))

    __rmul__ = __mul__

    @property
    def rank(self) -> Fraction:
        return self.ch0

    def to_json(self) -> list[str]:
        return [format_fraction(c) for c in self]

    @classmethod
    def from_json(cls, data: Sequence[RationalLike]) -> "ChernCharacter":
        return cls.of(*data)

    def __str__(self) -> str:
        return "(" + ", ".join(format_fraction(c) for c in self) + ")"


class ChernClasses(NamedTuple):
    c1: int
    c2: int
    c3: int


ZERO = ChernCharacter.of(0, 0, 0, 0)


def ch_line(n: int) -> ChernCharacter:
    """Chern character of the line bundle O(n)."""
    n = Fraction(n)
    return ChernCharacter(Fraction(1), n, n**2 / 2, n**3 / 6)


def twist(v: ChernCharacter, t: int) -> ChernCharacter:
    """Tensor with O(t), i.e. multiply by exp(tH)."""
    if t == 0:
        return v
    t = Fraction(t)
    c0, c1, c2, c3 = v
    return ChernCharacter(
        c0,
        c1 + t * c0,
        c2 + t * c1 + t**2 / 2 * c0,
        c3 + t * c2 + t**2 / 2 * c1 + t**3 / 6 * c0,
    )


def dual(v: ChernCharacter) -> ChernCharacter:
    return ChernCharacter(v.ch0, -v.ch1, v.ch2, -v.ch3)


def euler_chi(v: ChernCharacter) -> Fraction:
    return sum((t * c for t, c in zip(_TODD, v)), Fraction(0))


def euler_pair(a: ChernCharacter, b: ChernCharacter) -> Fraction:
    """chi(a, b) = chi(b tensor a^dual), expanded by Hirzebruch-Riemann-Roch."""
    e0, e1, e2, e3 = a
    f0, f1, f2, f3 = b
    return (
        f0 * e0
        + Fraction(11, 6) * (f1 * e0 - e1 * f0)
        + 2 * (f2 * e0 - f1 * e1 + e2 * f0)
        + f3 * e0 - f2 * e1 + e2 * f1 - e3 * f0
    )


def slope(v: ChernCharacter) -> Fraction:
    if v.ch0 == 0:
        raise ZeroRank(f"slope undefined for rank-zero class {v}")
    return v.ch1 / v.ch0


def chern_classes(v: ChernCharacter) -> ChernClasses:
    """Invert the Newton relations; raise NonIntegral unless c1, c2, c3 are integers."""
    c0, c1, ch2, ch3 = v
    if c0.denominator != 1 or c1.denominator != 1:
        raise NonIntegral(f"rank and degree must be integers: {v}")
    c2 = (c1**2 - 2 * ch2) / 2
    # ch3 = (c1^3 - 3 c1 c2 + 3 c3) / 6
    c3 = 2 * ch3 - c1**3 / 3 + c1 * c2
    if c2.denominator != 1 or c3.denominator != 1:
        raise NonIntegral(f"non-integral Chern classes c2={c2}, c3={c3} for {v}")
    return ChernClasses(int(c1), int(c2), int(c3))


def chern_character_from_classes(rank: int, c: ChernClasses) -> ChernCharacter:
    c1, c2, c3 = (Fraction(x) for x in c)
    return ChernCharacter(
        Fraction(rank), c1, (c1**2 - 2 * c2) / 2, (c1**3 - 3 * c1 * c2 + 3 * c3) / 6
    )


def is_candidate_exceptional(v: ChernCharacter) -> bool:
    """Numerical shadow of exceptionality: chi(v, v) = 1 plus integrality."""
    if v.ch0 <= 0 or v.ch0.denominator != 1 or v.ch1.denominator != 1:
        return False
    if euler_pair(v, v) != 1:
        return False
    if gcd(int(v.ch0), int(v.ch1)) != 1:
        return False
    try:
        chern_classes(v)
    except NonIntegral:
        return False
    return True


def parse_ch(text: str) -> ChernCharacter:
    """Read ``(3,1,-1/2,1/6)``, ``3,1,-1/2,1/6`` or the JSON form ``["3","1","-1/2","1/6"]``."""
    import json

    text = text.strip()
    if text.startswith("["):
        return ChernCharacter.from_json(json.loads(text))
    text = text.strip("()")
    parts = [p for p in text.replace(" ", "").split(",") if p]
    return ChernCharacter.of(*parts)


def sum_ch(items: Iterable[ChernCharacter]) -> ChernCharacter:
    total = ZERO
    for v in items:
        total = total + v
    return total
