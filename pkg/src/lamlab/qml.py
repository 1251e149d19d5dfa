"""Minor leaves: Lavaurs pairing, the partial order, limbs, mateability, tuning.

Periodic angles under doubling are paired into companion endpoints of minor
leaves by Lavaurs' inductive construction: process periods in increasing
order, and within one period connect each smallest unpaired angle to the
smallest unpaired angle it can reach without crossing any earlier chord.
"""

from __future__ import annotations

import functools
from bisect import bisect_left, bisect_right, insort
from dataclasses import dataclass
from fractions import Fraction

from .circle import (
    Angle,
    Leaf,
    angle,
    conjugate_leaf,
    crosses,
    fmt_angle,
    in_open_arc,
    leaf_length,
    period_under_doubling,
)
from .errors import (
    DegenerateMinorError,
    DomainError,
    InternalConsistencyError,
    check_period_cap,
)

ZERO = angle(0)


def exact_period_angles(n: int, cap: int | None = None) -> list[Angle]:
    """All angles of exact period n under doubling, sorted.

    For n >= 2 these are the j/(2^n - 1) whose reduced denominator has
    multiplicative order exactly n; n = 1 gives just the fixed point 0.
    """
    if n < 1:
        raise DomainError("period must be >= 1")
    check_period_cap(n, cap)
    if n == 1:
        return [ZERO]
    den = 2**n - 1
    out = []
    for j in range(1, den):
        x = Fraction(j, den)
        if period_under_doubling(x)[1] == n:
            out.append(x)
    return out


@dataclass(frozen=True)
class MinorLeaf:
    """A QML minor: companion endpoint pair, its period, and limb-minimality."""

    leaf: Leaf
    period: int
    is_minimal: bool

    def to_json(self) -> dict:
        return {
            "leaf": [fmt_angle(self.leaf.a), fmt_angle(self.leaf.b)],
            "period": self.period,
            "minimal": self.is_minimal,
        }


@dataclass(frozen=True)
class LimbId:
    root_minor: MinorLeaf

    def __post_init__(self):
        if not self.root_minor.is_minimal:
            raise DomainError("limb root must be a minimal minor")


class _ChordIndex:
    """Chords with endpoint bisection: fast 'does candidate cross anything'."""

    def __init__(self):
        self.points: list[Angle] = []
        self.partner: dict[Angle, Angle] = {}

    def add(self, a: Angle, b: Angle) -> None:
        insort(self.points, a)
        insort(self.points, b)
        self.partner[a] = b
        self.partner[b] = a

    def blocked(self, a: Angle, b: Angle) -> bool:
        """True iff some chord has exactly one endpoint strictly inside (a, b)."""
        lo, hi = bisect_right(self.points, a), bisect_left(self.points, b)
        for p in self.points[lo:hi]:
            q = self.partner[p]
            if not (a < q < b):
                return True
        return False


@functools.lru_cache(maxsize=None)
def _lavaurs_chords(n: int) -> tuple[tuple[Leaf, int], ...]:
    """Lavaurs chords of periods 2..n in creation order, with their periods."""
    check_period_cap(n)
    if n < 2:
        return ()
    prior = list(_lavaurs_chords(n - 1))
    index = _ChordIndex()
    for lf, _ in prior:
        index.add(lf.a, lf.b)
    angles = exact_period_angles(n)
    unpaired = list(angles)
    for x in list(unpaired):
        if x not in unpaired:
            continue
        mate = None
        for y in unpaired:
            if y <= x:
                continue
            if not index.blocked(x, y):
                mate = y
                break
        if mate is None:
            raise InternalConsistencyError(
                f"Lavaurs pairing left {fmt_angle(x)} unpaired at period {n}"
            )
        unpaired.remove(x)
        unpaired.remove(mate)
        index.add(x, mate)
        prior.append((Leaf(x, mate), n))
    if unpaired:
        raise InternalConsistencyError(f"unpaired angles remain at period {n}")
    return tuple(prior)


def separates_from_zero(m1: Leaf, m2: Leaf) -> bool:
    """The order mu_1 < mu_2: m1 separates m2 from angle 0.

    True iff both endpoints of m2 lie strictly in the component of the circle
    minus m1's endpoints that does not contain 0.
    """
    if m1 == m2:
        return False
    if crosses(m1, m2):
        raise DomainError(f"leaves {m1} and {m2} cross")
    if ZERO in m1:
        raise DomainError("order undefined for a leaf with endpoint 0")
    return m1.a < m2.a < m1.b and m1.a < m2.b < m1.b


def pairing_of_period(n: int) -> list[MinorLeaf]:
    """All minors of period 2..n with minimality flags, deterministic order."""
    if n < 2:
        raise DomainError("pairing starts at period 2")
    chords = _lavaurs_chords(n)
    minors = []
    for lf, k in chords:
        minimal = not any(
            separates_from_zero(other, lf) for other, _ in chords if other != lf
        )
        minors.append(MinorLeaf(lf, k, minimal))
    return minors


def companion(x: Angle) -> Angle:
    """The second endpoint of the minor leaf at x."""
    x = angle(x)
    if x == ZERO:
        raise DegenerateMinorError("main cardioid: degenerate minor")
    if x.denominator % 2 == 0:
        raise DomainError(f"{fmt_angle(x)} has even denominator, not periodic")
    _, k = period_under_doubling(x)
    for lf, period in _lavaurs_chords(k):
        if period == k and x in lf:
            return lf.b if x == lf.a else lf.a
    raise InternalConsistencyError(f"{fmt_angle(x)} missing from period-{k} pairing")


def minor_leaf_of(x: Angle) -> Leaf:
    return Leaf(angle(x), companion(x))


def minimal_minor_below(x: Angle) -> MinorLeaf:
    """The limb root of mu_x: mu_x itself if minimal, else the unique minimal
    minor separating it from 0.  Searches periods <= period(x) only."""
    x = angle(x)
    mx = minor_leaf_of(x)
    _, k = period_under_doubling(x)
    minors = pairing_of_period(k)
    separating = [m for m in minors if m.leaf != mx and separates_from_zero(m.leaf, mx)]
    if not separating:
        return MinorLeaf(mx, k, True)
    roots = [m for m in separating if m.is_minimal]
    if len(roots) != 1:
        raise InternalConsistencyError(
            f"{len(roots)} minimal minors separate {mx} from 0; limb decomposition violated"
        )
    return roots[0]


def is_mateable(p: Angle, q: Angle) -> bool:
    """Theorem condition: p and q must not sit in conjugate combinatorial limbs.

    Angle 0 (main cardioid, empty lamination) is mateable with everything.
    """
    p, q = angle(p), angle(q)
    for x in (p, q):
        if x.denominator % 2 == 0:
            raise DomainError(f"{fmt_angle(x)} has even denominator")
    if p == ZERO or q == ZERO:
        return True
    root_p = minimal_minor_below(p).leaf
    root_q = minimal_minor_below(q).leaf
    return conjugate_leaf(root_q) != root_p


def _binary_block(x: Angle, k: int) -> str:
    """The k-bit repeating binary block of an angle of period dividing k."""
    den = 2**k - 1
    if den % x.denominator != 0:
        raise DomainError(f"{fmt_angle(x)} has no period-{k} block")
    val = x.numerator * (den // x.denominator)
    return format(val, f"0{k}b")


def is_tuning(x: Angle) -> tuple[MinorLeaf, int] | None:
    """Douady block substitution test.

    Returns (root minor, inner period) when the k-bit block of x splits into
    k/k' chunks each equal to a block of one endpoint of a period-k' minor,
    for a proper divisor 1 < k' < k.  Lowest-period root wins.
    """
    x = angle(x)
    if x == ZERO:
        raise DegenerateMinorError("main cardioid: degenerate minor")
    if x.denominator % 2 == 0:
        raise DomainError(f"{fmt_angle(x)} has even denominator")
    _, k = period_under_doubling(x)
    block = _binary_block(x, k)
    for kp in range(2, k):
        if k % kp != 0:
            continue
        for m in pairing_of_period(kp):
            if m.period != kp:
                continue
            blocks = {_binary_block(m.leaf.a, kp), _binary_block(m.leaf.b, kp)}
            chunks = [block[i : i + kp] for i in range(0, k, kp)]
            if all(c in blocks for c in chunks):
                return m, k // kp
    return None


def wake_contains(m: Leaf, x: Angle) -> bool:
    """Is x inside the open wake arc of the minor m (the non-zero side)?"""
    return in_open_arc(x, m.a, m.b)


def minor_report(x: Angle) -> dict:
    """JSON-friendly summary used by the CLI."""
    x = angle(x)
    if x == ZERO:
        return {"minor": [fmt_angle(ZERO)], "period": 1, "degenerate": True}
    comp = companion(x)
    _, k = period_under_doubling(x)
    root = minimal_minor_below(x)
    tuning = is_tuning(x)
    return {
        "minor": [fmt_angle(min(x, comp)), fmt_angle(max(x, comp))],
        "period": k,
        "limb_root": [fmt_angle(root.leaf.a), fmt_angle(root.leaf.b)],
        "tuning": None
        if tuning is None
        else {
            "root": [fmt_angle(tuning[0].leaf.a), fmt_angle(tuning[0].leaf.b)],
            "root_period": tuning[0].period,
            "inner_period": tuning[1],
        },
    }
