"""The perp operator: the class cut out by three orthogonality conditions.

Given classes ``e, g, h`` we look for ``v`` with

    chi(v, e) = chi(g, v) = chi(h, v) = 0,

which is a line in K(P^3)_Q.  Dividing by ``ch0`` turns it into a 3x3 system
in the slope coordinates ``(ch1/ch0, ch2/ch0, ch3/ch0)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

from .kgroup import ChernCharacter, KGroupError, euler_pair, is_candidate_exceptional

Matrix = list[list[Fraction]]

_BASIS = tuple(
    ChernCharacter.of(*(1 if i == j else 0 for j in range(4))) for i in range(4)
)


class PerpError(KGroupError):
    pass


class SingularSystem(PerpError):
    pass


class LineAtInfinity(PerpError):
    pass


class NonExceptionalLift(PerpError):
    pass


class SlopePoint(NamedTuple):
    x1: Fraction
    x2: Fraction
    x3: Fraction


def rank_exact(rows: Sequence[Sequence[Fraction]]) -> int:
    m = [list(map(Fraction, r)) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(rank + 1, len(m)):
            f = m[i][col] / m[rank][col]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def solve_exact(a: Matrix, b: Sequence[Fraction]) -> list[Fraction]:
    """Solve the square system ``a x = b`` over Q.

    Pivot is the first nonzero entry in the column; with exact arithmetic the
    choice only affects speed.  Raises ZeroDivisionError when ``a`` is singular.
    """
    n = len(a)
    m = [list(row) + [bi] for row, bi in zip(a, b)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        for i in range(col + 1, n):
            f = m[i][col] / m[col][col]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    x = [Fraction(0)] * n
    for i in reversed(range(n)):
        s = m[i][n] - sum((m[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        x[i] = s / m[i][i]
    return x


def orthogonality_rows(e: ChernCharacter, g: ChernCharacter, h: ChernCharacter) -> Matrix:
    """Coefficient rows of the three linear conditions in the ch-basis."""
    return [
        [euler_pair(b, e) for b in _BASIS],
        [euler_pair(g, b) for b in _BASIS],
        [euler_pair(h, b) for b in _BASIS],
    ]


def solve_orthogonality(e: ChernCharacter, g: ChernCharacter, h: ChernCharacter) -> SlopePoint:
    if rank_exact([e, g, h]) < 3:
        raise SingularSystem(f"classes {e}, {g}, {h} are linearly dependent")
    rows = orthogonality_rows(e, g, h)
    if rank_exact(rows) < 3:
        raise SingularSystem("the orthogonality conditions do not cut out a line")
    a = [row[1:] for row in rows]
    b = [-row[0] for row in rows]
    try:
        x = solve_exact(a, b)
    except ZeroDivisionError:
        raise LineAtInfinity("solution line lies in ch0 = 0") from None
    return SlopePoint(*x)


def lift(point: SlopePoint) -> ChernCharacter:
    """Scale to the integral class whose rank is the denominator of ch1/ch0."""
    r = Fraction(point.x1.denominator)
    return ChernCharacter(r, r * point.x1, r * point.x2, r * point.x3)


def perp(e: ChernCharacter, g: ChernCharacter, h: ChernCharacter) -> ChernCharacter:
    v = lift(solve_orthogonality(e, g, h))
    if not is_candidate_exceptional(v):
        raise NonExceptionalLift(f"lifted class {v} is not numerically exceptional")
    # cheap re-substitution guard
    assert euler_pair(v, e) == 0 and euler_pair(g, v) == 0 and euler_pair(h, v) == 0
    return v
