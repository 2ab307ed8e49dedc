"""Exceptional slopes and the stability boundary on P^2.

Exceptional slopes are produced from the integers by the dot operator,
indexed by dyadic rationals.  ``P(x) = (x + 1)(x + 2) / 2`` is the Hilbert
polynomial of O_{P^2}; with it chi = r (P(mu) - Delta) on P^2.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional, Union


class PoleInDot(ZeroDivisionError):
    pass


class NonIntegralCharacter(ValueError):
    pass


def hilbert_p(x: Fraction) -> Fraction:
    return (x + 1) * (x + 2) / 2


def rank_of(alpha: Fraction) -> int:
    return Fraction(alpha).denominator


def discriminant_of(alpha: Fraction) -> Fraction:
    r = rank_of(alpha)
    return (1 - Fraction(1, r * r)) / 2


class P2SlopeData(NamedTuple):
    alpha: Fraction
    r: int
    delta: Fraction
    chi: Fraction


def slope_data(alpha: Union[int, Fraction, str]) -> P2SlopeData:
    alpha = Fraction(alpha)
    r = rank_of(alpha)
    delta = discriminant_of(alpha)
    return P2SlopeData(alpha, r, delta, r * (hilbert_p(alpha) - delta))


def dot(alpha: Fraction, beta: Fraction) -> Fraction:
    alpha, beta = Fraction(alpha), Fraction(beta)
    denom = 3 + alpha - beta
    if denom == 0:
        raise PoleInDot(f"dot({alpha}, {beta}) has a pole")
    return (alpha + beta) / 2 + (discriminant_of(beta) - discriminant_of(alpha)) / denom


@dataclass(frozen=True, order=True)
class DyadicRational:
    p: int
    q: int = 0

    def __post_init__(self):
        if self.q < 0 or (self.q > 0 and self.p % 2 == 0):
            raise ValueError(f"{self.p}/2^{self.q} is not normalized")

    @classmethod
    def from_fraction(cls, x) -> "DyadicRational":
        x = Fraction(x)
        d = x.denominator
        if d & (d - 1):
            raise ValueError(f"{x} is not dyadic")
        return cls(x.numerator, d.bit_length() - 1)

    @classmethod
    def parse(cls, text: str) -> "DyadicRational":
        text = text.strip().replace(" ", "")
        m = re.fullmatch(r"([+-]?\d+)/2\^(\d+)", text)
        if m:
            return cls.from_fraction(Fraction(int(m.group(1)), 2 ** int(m.group(2))))
        return cls.from_fraction(Fraction(text))

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, 2**self.q)

    def __str__(self) -> str:
        return str(self.value)


@lru_cache(maxsize=None)
def _eps(p: int, q: int) -> Fraction:
    if q == 0:
        return Fraction(p)
    # p = 2a + 1 at order q: parents a / 2^(q-1) and (a + 1) / 2^(q-1)
    a = (p - 1) // 2
    return dot(_eps_any(a, q - 1), _eps_any(a + 1, q - 1))


def _eps_any(p: int, q: int) -> Fraction:
    while q > 0 and p % 2 == 0:
        p //= 2
        q -= 1
    return _eps(p, q)


def epsilon_p2(t) -> Fraction:
    """Exceptional slope on P^2 indexed by the dyadic rational ``t``."""
    if not isinstance(t, DyadicRational):
        t = DyadicRational.parse(t) if isinstance(t, str) else DyadicRational.from_fraction(t)
    return _eps(t.p, t.q)


def dyadics_between(lo: int, hi: int, cutoff: int) -> list[Fraction]:
    """All dyadics of order <= cutoff in the closed interval [lo, hi]."""
    n = 2**cutoff
    return [Fraction(k, n) for k in range(lo * n, hi * n + 1)]


def min_rank_of_order(q: int) -> int:
    """Smallest rank of an exceptional slope of order exactly ``q``."""
    if q == 0:
        return 1
    return min(rank_of(_eps(p, q)) for p in range(1, 2**q, 2))


class DeltaBound(NamedTuple):
    lower: Fraction  # max over the enumerated exceptional slopes
    upper: Fraction  # bound covering every exceptional slope not enumerated
    certified: bool
    witness: Fraction  # slope attaining ``lower``
    rank_bound: int  # every slope beyond the cutoff has at least this rank


def _term(alpha: Fraction, mu: Fraction) -> Fraction:
    return hilbert_p(-abs(alpha - mu)) - discriminant_of(alpha)


def delta_bounds(mu, cutoff: int) -> DeltaBound:
    """Two-sided bound on delta(mu) from exceptional slopes of order <= cutoff.

    Exceptional slopes of higher order have rank >= ``rank_bound`` (ranks grow
    down the dyadic tree), hence discriminant >= (1 - 1/R^2)/2, and lie in
    the open gaps between consecutive enumerated slopes.  On each gap
    P(-|alpha - mu|) is convex in alpha, so its sup sits at a gap endpoint.
    """
    mu = Fraction(mu)
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    lo, hi = math.floor(mu) - 3, math.ceil(mu) + 3
    alphas = [epsilon_p2(t) for t in dyadics_between(lo, hi, cutoff)]
    inside = [a for a in alphas if abs(a - mu) < 3]
    best, witness = max((_term(a, mu), a) for a in inside)

    rank_bound = min_rank_of_order(cutoff + 1)
    d_far = (1 - Fraction(1, rank_bound**2)) / 2
    upper = best
    for a, b in zip(alphas, alphas[1:]):
        if b <= mu - 3 or a >= mu + 3:
            continue
        da, db = abs(a - mu), abs(b - mu)
        dmin = Fraction(0) if a < mu < b else min(da, db)
        dmax = min(max(da, db), Fraction(3))
        bound = max(hilbert_p(-dmin), hilbert_p(-dmax)) - d_far
        upper = max(upper, bound)
    return DeltaBound(best, upper, upper == best, witness, rank_bound)


def delta_of_mu(mu, order_cutoff: int) -> Fraction:
    """max of P(-|alpha - mu|) - Delta(alpha) over exceptional alpha of order <= cutoff."""
    return delta_bounds(mu, order_cutoff).lower


def _exceptional_index(mu: Fraction, cutoff: int) -> Optional[Fraction]:
    n = math.floor(mu)
    for t in dyadics_between(n, n + 1, cutoff):
        if epsilon_p2(t) == mu:
            return t
    return None


def is_stable_character_p2(r: int, mu, delta, cutoff: int) -> str:
    """Classify (r, mu, Delta) as exceptional, stable, unstable or undecided."""
    mu, delta = Fraction(mu), Fraction(delta)
    if r < 1:
        raise ValueError("rank must be positive")
    c1 = r * mu
    ch2 = r * (mu * mu / 2 - delta)
    c2 = c1 * c1 / 2 - ch2
    chi = r * (hilbert_p(mu) - delta)
    for name, x in (("c1", c1), ("c2", c2), ("chi", chi)):
        if x.denominator != 1:
            raise NonIntegralCharacter(f"{name} = {x} is not an integer")
    if _exceptional_index(mu, cutoff) is not None:
        data = slope_data(mu)
        if (r, delta) == (data.r, data.delta):
            return "exceptional"
    bound = delta_bounds(mu, cutoff)
    if delta >= bound.upper:
        return "stable"
    if delta < bound.lower:
        return "unstable"
    return "undecided"
