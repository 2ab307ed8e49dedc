"""Foundations of helices on P^3 and mutations at the level of Chern characters.

A foundation ``(E, F, G, H)`` determines the periodic helix
``..., H(-4), E, F, G, H, E(4), F(4), ...``.  All hom-counts are read off as
Euler pairings, which is valid because higher Ext groups vanish on
exceptional pairs sitting inside a helix.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .kgroup import (
    ChernCharacter,
    KGroupError,
    euler_pair,
    is_candidate_exceptional,
    slope,
    twist,
)

PERIOD = 4


class MutationError(KGroupError):
    pass


class NonPositiveHom(MutationError):
    pass


class InvalidFoundation(MutationError):
    pass


def _hom(e: ChernCharacter, f: ChernCharacter) -> int:
    k = euler_pair(e, f)
    if k <= 0 or k.denominator != 1:
        raise NonPositiveHom(f"chi({e}, {f}) = {k} is not a positive integer")
    return int(k)


def right_mutation(e: ChernCharacter, f: ChernCharacter) -> ChernCharacter:
    """ch(R_f e) from 0 -> e -> f^k -> R_f e -> 0 with k = chi(e, f)."""
    return _hom(e, f) * f - e


def left_mutation(e: ChernCharacter, f: ChernCharacter) -> ChernCharacter:
    """ch(L_e f) from 0 -> L_e f -> e^k -> f -> 0 with k = chi(e, f)."""
    return _hom(e, f) * e - f


def foundation_problems(bundles: Sequence[ChernCharacter]) -> list[str]:
    """Return the violated foundation invariants (empty when valid)."""
    problems = []
    if len(bundles) != PERIOD:
        return [f"expected {PERIOD} bundles, got {len(bundles)}"]
    for i, b in enumerate(bundles):
        if not is_candidate_exceptional(b):
            problems.append(f"entry {i} {b} is not numerically exceptional")
    if problems:
        return problems
    slopes = [slope(b) for b in bundles]
    if any(a >= b for a, b in zip(slopes, slopes[1:])):
        problems.append(f"slopes not strictly increasing: {[str(s) for s in slopes]}")
    for i in range(PERIOD):
        for j in range(i):
            x = euler_pair(bundles[i], bundles[j])
            if x != 0:
                problems.append(f"chi(entry {i}, entry {j}) = {x} != 0")
    return problems


@dataclass(frozen=True)
class Foundation:
    bundles: tuple[ChernCharacter, ChernCharacter, ChernCharacter, ChernCharacter]

    @classmethod
    def of(cls, *bundles: ChernCharacter, check: bool = True) -> "Foundation":
        if len(bundles) == 1 and not isinstance(bundles[0], ChernCharacter):
            bundles = tuple(bundles[0])
        f = cls(tuple(bundles))  # type: ignore[arg-type]
        if check:
            problems = foundation_problems(f.bundles)
            if problems:
                raise InvalidFoundation("; ".join(problems))
        return f

    def __iter__(self):
        return iter(self.bundles)

    def __getitem__(self, i: int) -> ChernCharacter:
        return self.bundles[i]

    def __len__(self) -> int:
        return PERIOD

    def helix_element(self, i: int) -> ChernCharacter:
        """The i-th bundle of the helix, where 0..3 index this foundation."""
        k, r = divmod(i, PERIOD)
        return twist(self.bundles[r], PERIOD * k)

    def rotate(self, k: int) -> "Foundation":
        """The foundation starting at helix position ``k``."""
        return Foundation(tuple(self.helix_element(k + i) for i in range(PERIOD)))  # type: ignore[arg-type]

    def slopes(self) -> list[Fraction]:
        return [slope(b) for b in self.bundles]

    def helix_key(self) -> tuple:
        """Canonical key of the helix: its elements twisted into slope [0, 4)."""
        reps = []
        for b in self.bundles:
            s = slope(b)
            n = -PERIOD * (s // PERIOD)
            reps.append(twist(b, int(n)))
        return tuple(sorted(reps, key=slope))

    def twist(self, t: int) -> "Foundation":
        return Foundation(tuple(twist(b, t) for b in self.bundles))  # type: ignore[arg-type]

    def to_json(self) -> list[list[str]]:
        return [b.to_json() for b in self.bundles]

    @classmethod
    def from_json(cls, data, check: bool = True) -> "Foundation":
        return cls.of(*(ChernCharacter.from_json(b) for b in data), check=check)


@dataclass(frozen=True)
class MarkedFoundation:
    foundation: Foundation
    mark: int

    def __post_init__(self):
        if not 0 <= self.mark < PERIOD:
            raise ValueError(f"mark {self.mark} out of range")

    @property
    def bundle(self) -> ChernCharacter:
        return self.foundation[self.mark]

    def neighbours(self) -> tuple[ChernCharacter, ChernCharacter, ChernCharacter]:
        """(E1, E2, E3) with (E1, marked, E2, E3) a foundation of the same helix."""
        f = self.foundation
        return (
            f.helix_element(self.mark - 1),
            f.helix_element(self.mark + 1),
            f.helix_element(self.mark + 2),
        )

    def left(self) -> ChernCharacter:
        return self.foundation.helix_element(self.mark - 1)

    def right(self) -> ChernCharacter:
        return self.foundation.helix_element(self.mark + 1)


class MutationMove(enum.Enum):
    R0 = "R0"
    L0 = "L0"
    R1 = "R1"
    L1 = "L1"
    R2 = "R2"
    L2 = "L2"

    @property
    def is_right(self) -> bool:
        return self.value[0] == "R"

    @property
    def new_position(self) -> int:
        """Position of the newly created bundle in the resulting foundation."""
        return 1 if self.is_right else 2

    def __str__(self) -> str:
        return self.value


RIGHT_MOVES = (MutationMove.R0, MutationMove.L0, MutationMove.R1)
LEFT_MOVES = (MutationMove.L1, MutationMove.R2, MutationMove.L2)


def _move_result(f: Foundation, m: MutationMove) -> tuple[ChernCharacter, ...]:
    e, ff, g, h = f.bundles
    if m is MutationMove.R0:
        return (e, right_mutation(twist(h, -4), e), ff, g)
    if m is MutationMove.R1:
        return (ff, right_mutation(e, ff), g, h)
    if m is MutationMove.R2:
        return (g, right_mutation(ff, g), h, twist(e, 4))
    if m is MutationMove.L0:
        return (twist(h, -4), e, left_mutation(ff, g), ff)
    if m is MutationMove.L1:
        return (e, ff, left_mutation(g, h), g)
    if m is MutationMove.L2:
        return (ff, g, left_mutation(h, twist(e, 4)), h)
    raise ValueError(m)


def apply_move(f: Foundation, m: MutationMove | str) -> Foundation:
    m = MutationMove(str(m))
    return Foundation.of(*_move_result(f, m))


class Mutation(NamedTuple):
    label: str
    foundation: Foundation
    new_bundle: ChernCharacter


# the eight mutations of a helix, written on its foundation (E, F, G, H)
MUTATION_LABELS = (
    "L(E,F)",
    "R(H(-4),E)",
    "L(F,G)",
    "R(E,F)",
    "L(G,H)",
    "R(F,G)",
    "L(H,E(4))",
    "R(G,H)",
)

# the admissible moves as members of the eight
MOVE_LABEL = {
    MutationMove.R0: "R(H(-4),E)",
    MutationMove.L0: "L(F,G)",
    MutationMove.R1: "R(E,F)",
    MutationMove.L1: "L(G,H)",
    MutationMove.R2: "R(F,G)",
    MutationMove.L2: "L(H,E(4))",
}


def enumerate_mutations(f: Foundation) -> list[Mutation]:
    """All 8 mutations of the helix of ``f``, ordered by slope of the new bundle."""
    e, ff, g, h = f.bundles
    out = []

    def add(label, bundles, new):
        out.append(Mutation(label, Foundation.of(*bundles), new))

    n = left_mutation(e, ff)
    add("L(E,F)", (n, e, g, h), n)
    n = right_mutation(twist(h, -4), e)
    add("R(H(-4),E)", (e, n, ff, g), n)
    n = left_mutation(ff, g)
    add("L(F,G)", (e, n, ff, h), n)
    n = right_mutation(e, ff)
    add("R(E,F)", (ff, n, g, h), n)
    n = left_mutation(g, h)
    add("L(G,H)", (e, ff, n, g), n)
    n = right_mutation(ff, g)
    add("R(F,G)", (e, g, n, h), n)
    n = left_mutation(h, twist(e, 4))
    add("L(H,E(4))", (ff, g, n, h), n)
    n = right_mutation(g, h)
    add("R(G,H)", (e, ff, h, n), n)
    return out


class MutationClass(enum.Enum):
    COMMUTING = "commuting"
    ADMISSIBLE = "admissible"
    EXTRANEOUS = "extraneous"


# Keyed by the direction of the mutation that produced tau.  Labels refer to
# tau's foundation laid out as in the move table: new bundle at position 1
# (F) after a right mutation, at position 2 (G) after a left one.
_CLASSIFICATION = {
    "R": {
        MutationClass.COMMUTING: ("R(G,H)", "L(G,H)"),
        MutationClass.ADMISSIBLE: ("R(E,F)", "L(F,G)", "R(H(-4),E)"),
        MutationClass.EXTRANEOUS: ("L(E,F)", "R(F,G)", "L(H,E(4))"),
    },
    "L": {
        MutationClass.COMMUTING: ("R(E,F)", "L(E,F)"),
        MutationClass.ADMISSIBLE: ("L(G,H)", "R(F,G)", "L(H,E(4))"),
        MutationClass.EXTRANEOUS: ("R(G,H)", "L(F,G)", "R(H(-4),E)"),
    },
}


def classify_mutation(direction: str, label: str) -> MutationClass:
    """Classify one of the eight mutations of tau relative to the mutation gamma.

    ``direction`` is "R" or "L" (the direction of gamma); ``label`` is one of
    MUTATION_LABELS written on tau's foundation in move-table layout.
    """
    direction = direction.upper()[0]
    for cls, labels in _CLASSIFICATION[direction].items():
        if label in labels:
            return cls
    raise ValueError(f"unknown mutation label {label!r}")


def helix_relation_sides(f: Foundation) -> list[tuple[ChernCharacter, ChernCharacter]]:
    """Both sides of the two helix-relation identities on ``f``.

    R(E,F) = L(G, L_H(E(4))) o L(H, E(4))      compares R_F E with L_G L_H E(4)
    L(G,H) = R(R_{E(4)} H, F(4)) o R(H, E(4))  compares L_G H with R_F R_E H(-4)
    """
    e, ff, g, h = f.bundles
    first = (right_mutation(e, ff), left_mutation(g, left_mutation(h, twist(e, 4))))
    second = (left_mutation(g, h), right_mutation(right_mutation(twist(h, -4), e), ff))
    return [first, second]


def verify_helix_relation(f: Foundation) -> bool:
    try:
        sides = helix_relation_sides(f)
    except MutationError:
        return False
    return all(a == b for a, b in sides)


STANDARD_FOUNDATION_TWISTS = (-1, 0, 1, 2)


def standard_foundation() -> Foundation:
    from .kgroup import ch_line

    return Foundation.of(*(ch_line(n) for n in STANDARD_FOUNDATION_TWISTS))
