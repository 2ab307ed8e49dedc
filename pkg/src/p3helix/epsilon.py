"""The bijection between 3-adic rationals and constructive exceptional bundles.

Indices in (0, 1) sit on the admissible-mutation tree rooted at the helix of
line bundles with foundation (O(-1), O, O(1), O(2)).  A numerator ``m`` with
``m = 1 mod 3`` is produced by a right mutation (the new bundle sits at
position 1 of its foundation) and ``m = 2 mod 3`` by a left mutation
(position 2).  Every other index is reached by twisting.
"""

from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import NamedTuple, Optional, Union

from .helix import (
    Foundation,
    MarkedFoundation,
    MutationMove,
    apply_move,
    left_mutation,
    right_mutation,
    standard_foundation,
)
from .kgroup import (
    ChernCharacter,
    ChernClasses,
    ch_line,
    chern_classes,
    euler_chi,
    euler_pair,
    slope,
    twist,
)
from .perp import perp


class InvalidIndex(ValueError):
    pass


class NotFound(LookupError):
    pass


@total_ordering
@dataclass(frozen=True)
class ThreeAdicRational:
    """``p / 3**q`` in normalized form (q == 0 or 3 does not divide p)."""

    p: int
    q: int = 0

    def __post_init__(self):
        if self.q < 0:
            raise InvalidIndex("negative order")
        if self.q > 0 and self.p % 3 == 0:
            raise InvalidIndex(f"{self.p}/3^{self.q} is not normalized")

    @classmethod
    def make(cls, p: int, q: int = 0) -> "ThreeAdicRational":
        while q > 0 and p % 3 == 0:
            p //= 3
            q -= 1
        return cls(p, q)

    @classmethod
    def from_fraction(cls, x: Union[Fraction, int]) -> "ThreeAdicRational":
        x = Fraction(x)
        d, q = x.denominator, 0
        while d % 3 == 0:
            d //= 3
            q += 1
        if d != 1:
            raise InvalidIndex(f"{x} is not a 3-adic rational")
        return cls(x.numerator, q)

    @classmethod
    def parse(cls, text: str) -> "ThreeAdicRational":
        """Read ``p/3^q``, ``p/27`` or a plain integer."""
        text = text.strip().replace(" ", "")
        m = re.fullmatch(r"([+-]?\d+)/3\^(\d+)", text)
        if m:
            return cls.make(int(m.group(1)), int(m.group(2)))
        try:
            value = Fraction(text)
        except ValueError:
            raise InvalidIndex(f"cannot parse 3-adic index {text!r}") from None
        return cls.from_fraction(value)

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, 3**self.q)

    def __lt__(self, other: "ThreeAdicRational") -> bool:
        return self.value < other.value

    def __str__(self) -> str:
        return str(self.value)

    def floor(self) -> int:
        return math.floor(self.value)

    def frac(self) -> "ThreeAdicRational":
        return ThreeAdicRational.from_fraction(self.value - self.floor())


Index = ThreeAdicRational


def _as_index(t) -> ThreeAdicRational:
    if isinstance(t, ThreeAdicRational):
        return t
    if isinstance(t, str):
        return ThreeAdicRational.parse(t)
    return ThreeAdicRational.from_fraction(t)


def order(t) -> int:
    return _as_index(t).q


def indices_of_order(q: int) -> list[ThreeAdicRational]:
    """Normalized indices in (0, 1) of order exactly ``q``."""
    if q == 0:
        return []
    return [ThreeAdicRational(m, q) for m in range(1, 3**q) if m % 3]


def indices_up_to(max_order: int) -> list[ThreeAdicRational]:
    out = [t for q in range(1, max_order + 1) for t in indices_of_order(q)]
    return sorted(out)


def tree_parent(t) -> tuple[Optional[ThreeAdicRational], MutationMove]:
    """The helix that ``t`` is mutated out of, and the admissible move used.

    Returns ``(None, move)`` when the parent is the standard helix.
    """
    t = _as_index(t)
    if not 0 < t.value < 1:
        raise InvalidIndex(f"{t} is not in (0, 1)")
    m, q = t.p, t.q
    if q == 1:
        return None, (MutationMove.R1 if m == 1 else MutationMove.L1)
    if m % 3 == 1:
        # nearest lower-order index below t, unless it is of even lower order
        base = (m - 1) // 3
        if base % 3 == 1:
            return ThreeAdicRational(base, q - 1), MutationMove.R1
        if base % 3 == 2:
            return ThreeAdicRational(base, q - 1), MutationMove.R2
        return ThreeAdicRational(base + 1, q - 1), MutationMove.R0
    base = (m + 1) // 3
    if base % 3 == 1:
        return ThreeAdicRational(base, q - 1), MutationMove.L0
    if base % 3 == 2:
        return ThreeAdicRational(base, q - 1), MutationMove.L1
    return ThreeAdicRational(base - 1, q - 1), MutationMove.L2


def mutation_path(t) -> list[MutationMove]:
    """Moves leading from the standard helix to the distinguished helix of ``t``."""
    path = []
    cur: Optional[ThreeAdicRational] = _as_index(t)
    while cur is not None:
        cur, move = tree_parent(cur)
        path.append(move)
    return path[::-1]


_FOUNDATION_CACHE: dict[tuple[int, int], MarkedFoundation] = {}
_cache_lock = threading.Lock()


def clear_cache() -> None:
    with _cache_lock:
        _FOUNDATION_CACHE.clear()


def distinguished_foundation(t) -> MarkedFoundation:
    """Marked foundation of the distinguished helix of ``epsilon(t)``, 0 < t < 1."""
    t = _as_index(t)
    key = (t.p, t.q)
    hit = _FOUNDATION_CACHE.get(key)
    if hit is not None:
        return hit
    parent, move = tree_parent(t)
    base = standard_foundation() if parent is None else distinguished_foundation(parent).foundation
    result = MarkedFoundation(apply_move(base, move), move.new_position)
    with _cache_lock:
        return _FOUNDATION_CACHE.setdefault(key, result)


def epsilon(t) -> ChernCharacter:
    t = _as_index(t)
    n = t.floor()
    if t.q == 0:
        return ch_line(n)
    return twist(distinguished_foundation(t.frac()).bundle, n)


def perp_of_marked(mf: MarkedFoundation) -> ChernCharacter:
    """perp(E1, E2, E3) for the marked bundle's neighbours."""
    return perp(*mf.neighbours())


def epsilon_by_perp(t) -> ChernCharacter:
    """ch of ``t`` via perp applied to the three other members of its foundation."""
    t = _as_index(t)
    if t.q == 0:
        return ch_line(t.floor())
    return twist(perp_of_marked(distinguished_foundation(t.frac())), t.floor())


def index_of_slope(mu, max_order: int) -> ThreeAdicRational:
    """Index ``t`` of order <= max_order whose bundle has slope ``mu``.

    Uses that slope(epsilon(t)) is strictly increasing in t: at each order the
    target slope falls into one of three sub-intervals.
    """
    mu = Fraction(mu)
    n = math.floor(mu)
    if mu == n:
        return ThreeAdicRational(n)
    target = mu - n
    lo = Fraction(0)
    for q in range(1, max_order + 1):
        step = Fraction(1, 3**q)
        for x in (lo + step, lo + 2 * step):
            s = slope(epsilon(ThreeAdicRational.from_fraction(x)))
            if s == target:
                return ThreeAdicRational.from_fraction(x + n)
            if s > target:
                break
            lo = x
    raise NotFound(f"no exceptional slope {mu} up to order {max_order}")


def epsilon_inverse(v: ChernCharacter, max_order: int) -> ThreeAdicRational:
    """Index ``t`` of order <= max_order with epsilon(t) == v, or raise NotFound."""
    if v.ch0 <= 0:
        raise NotFound(f"{v} has non-positive rank")
    t = index_of_slope(slope(v), max_order)
    if epsilon(t) != v:
        raise NotFound(f"slope of {v} belongs to index {t}, whose class differs")
    return t


def parents(t) -> tuple[ThreeAdicRational, ThreeAdicRational]:
    """Indices of the bundles directly left and right of the marked one."""
    t = _as_index(t)
    if not 0 < t.value < 1:
        raise InvalidIndex(f"{t} is not in (0, 1)")
    mf = distinguished_foundation(t)
    return (
        epsilon_inverse(mf.left(), t.q),
        epsilon_inverse(mf.right(), t.q),
    )


def is_globally_generated(t) -> bool:
    """Global generation as guaranteed for slope >= 0; False means not covered."""
    return _as_index(t).value >= 0


class WBNProfile(NamedTuple):
    degree: int
    dimension: int
    conjectural: bool = True


def wbn_profile(v: ChernCharacter) -> WBNProfile:
    """Conjectured single nonzero cohomology group (i, h^i) of an exceptional bundle."""
    mu = slope(v)
    chi = euler_chi(v)
    if chi.denominator != 1:
        raise ValueError(f"non-integral Euler characteristic {chi}")
    chi = int(chi)
    if mu >= 0:
        return WBNProfile(0, chi)
    if mu > -4:
        return WBNProfile(1, -chi) if chi < 0 else WBNProfile(2, chi)
    return WBNProfile(3, -chi)


class ResolutionDescriptor(NamedTuple):
    """``0 -> sub -> middle^multiplicity -> quotient -> 0``."""

    multiplicity: int
    sub: ChernCharacter
    middle: ChernCharacter
    quotient: ChernCharacter
    orientation: str  # "sub" or "quotient": where the bundle itself sits

    def is_additive(self) -> bool:
        return self.sub + self.quotient == self.multiplicity * self.middle

    def to_json(self) -> dict:
        return {
            "multiplicity": self.multiplicity,
            "sub": self.sub.to_json(),
            "middle": self.middle.to_json(),
            "quotient": self.quotient.to_json(),
            "orientation": self.orientation,
        }


# helix positions (relative to the parent foundation) of the mutated pair
_RIGHT_PAIR = {MutationMove.R0: -1, MutationMove.R1: 0, MutationMove.R2: 1}
_LEFT_PAIR = {MutationMove.L0: 1, MutationMove.L1: 2, MutationMove.L2: 3}


def _resolutions_from(base: Foundation, move: MutationMove):
    h = base.helix_element
    if move.is_right:
        i = _RIGHT_PAIR[move]
        x, y, z, w = h(i), h(i + 1), h(i + 2), h(i + 3)
        new = right_mutation(x, y)
        first = ResolutionDescriptor(int(euler_pair(x, y)), x, y, new, "quotient")
        # R_y x = L_z L_w x(4)
        other = left_mutation(w, twist(x, 4))
        second = ResolutionDescriptor(int(euler_pair(z, other)), new, z, other, "sub")
        return new, first, second
    i = _LEFT_PAIR[move]
    x, y, p1, p2 = h(i), h(i + 1), h(i - 1), h(i - 2)
    new = left_mutation(x, y)
    first = ResolutionDescriptor(int(euler_pair(x, y)), new, x, y, "sub")
    # L_x y = R_p1 R_p2 y(-4)
    other = right_mutation(twist(y, -4), p2)
    second = ResolutionDescriptor(int(euler_pair(other, p1)), other, p1, new, "quotient")
    return new, first, second


def standard_resolutions(t) -> tuple[ResolutionDescriptor, ResolutionDescriptor]:
    """The defining presentation of epsilon(t) and the one from the helix relation."""
    t = _as_index(t)
    if t.q < 1:
        raise InvalidIndex("line bundles have no standard resolutions")
    n = t.floor()
    f = t.frac()
    parent, move = tree_parent(f)
    base = standard_foundation() if parent is None else distinguished_foundation(parent).foundation
    new, first, second = _resolutions_from(base, move)
    if new != distinguished_foundation(f).bundle:
        raise AssertionError(f"resolution of {f} disagrees with its foundation")
    if n:
        first, second = (
            ResolutionDescriptor(
                r.multiplicity, twist(r.sub, n), twist(r.middle, n), twist(r.quotient, n), r.orientation
            )
            for r in (first, second)
        )
    return first, second


@dataclass(frozen=True)
class BundleRecord:
    index: ThreeAdicRational
    order: int
    ch: ChernCharacter
    rank: int
    slope: Fraction
    chern_classes: ChernClasses
    chi: int
    foundation: Optional[MarkedFoundation]
    wbn: WBNProfile
    globally_generated: bool
    resolutions: tuple

    def to_json(self) -> dict:
        return {
            "index": str(self.index),
            "order": self.order,
            "ch": self.ch.to_json(),
            "rank": self.rank,
            "slope": str(self.slope),
            "c": list(self.chern_classes),
            "chi": self.chi,
            "wbn": {"i": self.wbn.degree, "h": self.wbn.dimension, "conjectural": True},
            "gg": self.globally_generated,
            "foundation": self.foundation.foundation.to_json() if self.foundation else None,
            "mark": self.foundation.mark if self.foundation else None,
            "resolutions": [r.to_json() for r in self.resolutions],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BundleRecord":
        mf = None
        if data["foundation"] is not None:
            mf = MarkedFoundation(Foundation.from_json(data["foundation"]), data["mark"])
        res = tuple(
            ResolutionDescriptor(
                r["multiplicity"],
                ChernCharacter.from_json(r["sub"]),
                ChernCharacter.from_json(r["middle"]),
                ChernCharacter.from_json(r["quotient"]),
                r["orientation"],
            )
            for r in data["resolutions"]
        )
        return cls(
            index=ThreeAdicRational.parse(data["index"]),
            order=data["order"],
            ch=ChernCharacter.from_json(data["ch"]),
            rank=data["rank"],
            slope=Fraction(data["slope"]),
            chern_classes=ChernClasses(*data["c"]),
            chi=data["chi"],
            foundation=mf,
            wbn=WBNProfile(data["wbn"]["i"], data["wbn"]["h"]),
            globally_generated=data["gg"],
            resolutions=res,
        )


def bundle_record(t) -> BundleRecord:
    t = _as_index(t)
    v = epsilon(t)
    n = t.floor()
    if t.q:
        mf = distinguished_foundation(t.frac())
        if n:
            mf = MarkedFoundation(mf.foundation.twist(n), mf.mark)
        res = standard_resolutions(t)
    else:
        mf = MarkedFoundation(standard_foundation().twist(n), 1)
        res = ()
    return BundleRecord(
        index=t,
        order=t.q,
        ch=v,
        rank=int(v.ch0),
        slope=slope(v),
        chern_classes=chern_classes(v),
        chi=int(euler_chi(v)),
        foundation=mf,
        wbn=wbn_profile(v),
        globally_generated=is_globally_generated(t),
        resolutions=res,
    )
