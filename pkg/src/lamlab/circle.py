"""Exact arithmetic on circle angles, chords and arcs.

Angles are rational points of R/Z kept as `fractions.Fraction` in canonical
reduced form with 0 <= x < 1.  The dynamics everywhere is the doubling map
x -> 2x mod 1, the combinatorial model of z -> z^2 on the unit circle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

Angle = Fraction

HALF = Fraction(1, 2)


def angle(num: int | str | Fraction, den: int | None = None) -> Angle:
    """Build a canonical angle (reduced, 0 <= x < 1)."""
    x = Fraction(num) if den is None else Fraction(num, den)
    return x % 1


def parse_angle(text: str) -> Angle:
    """Parse "num/den" (decimal input is deliberately rejected)."""
    if "/" not in text:
        if not text.lstrip("+-").isdigit():
            raise DomainError(f"angle must be given as num/den, got {text!r}")
        return angle(int(text))
    num, _, den = text.partition("/")
    try:
        return angle(int(num), int(den))
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"bad angle {text!r}: {exc}") from None


def fmt_angle(x: Angle) -> str:
    return f"{x.numerator}/{x.denominator}"


def double(x: Angle) -> Angle:
    """One step of the doubling map."""
    return (2 * x) % 1


def preimages(x: Angle) -> tuple[Angle, Angle]:
    """The two halved angles; doubling either returns x."""
    h = x / 2
    return h, (h + HALF) % 1


def conjugate(x: Angle) -> Angle:
    """The involution x -> -x mod 1 (0 is fixed)."""
    return (-x) % 1


def multiplicative_order(base: int, modulus: int) -> int:
    if modulus == 1:
        return 1
    t, k = base % modulus, 1
    while t != 1:
        t = (t * base) % modulus
        k += 1
    return k


def period_under_doubling(x: Angle) -> tuple[int, int]:
    """(preperiod, period) of x under doubling.

    Writing the denominator as 2^e * d with d odd, the preperiod is exactly e
    and the period is the multiplicative order of 2 mod d (1 when d = 1).
    """
    den = x.denominator
    e = 0
    while den % 2 == 0:
        den //= 2
        e += 1
    return e, multiplicative_order(2, den)


def orbit(x: Angle) -> list[Angle]:
    """Forward orbit of x through preperiod + one full cycle."""
    pre, per = period_under_doubling(x)
    out = []
    cur = x
    for _ in range(pre + per):
        out.append(cur)
        cur = double(cur)
    return out


@dataclass(frozen=True, order=True)
class Leaf:
    """A chord of the disc: an unordered pair of distinct angles, stored sorted."""

    a: Angle
    b: Angle

    def __post_init__(self):
        if self.a == self.b:
            raise DomainError(f"degenerate leaf at {fmt_angle(self.a)}")
        if self.a > self.b:
            lo, hi = self.b, self.a
            object.__setattr__(self, "a", lo)
            object.__setattr__(self, "b", hi)

    def endpoints(self) -> tuple[Angle, Angle]:
        return self.a, self.b

    def __contains__(self, x: Angle) -> bool:
        return x == self.a or x == self.b

    def __str__(self) -> str:
        return f"{{{fmt_angle(self.a)}, {fmt_angle(self.b)}}}"


def leaf(x, y=None) -> Leaf:
    """Leaf from two angles or two "num/den" strings."""
    if y is None:
        x, y = x
    if isinstance(x, str):
        x = parse_angle(x)
    if isinstance(y, str):
        y = parse_angle(y)
    return Leaf(angle(x), angle(y))


def leaf_length(l: Leaf) -> Fraction:
    """min(b-a, 1-(b-a)): the shorter arc between the endpoints, always <= 1/2."""
    d = l.b - l.a
    return min(d, 1 - d)


def double_leaf(l: Leaf) -> Leaf:
    """Image chord {2a, 2b}; a diameter (length exactly 1/2) has no image chord."""
    ia, ib = double(l.a), double(l.b)
    if ia == ib:
        raise DomainError(f"leaf {l} is a diameter, image degenerates")
    return Leaf(ia, ib)


def conjugate_leaf(l: Leaf) -> Leaf:
    return Leaf(conjugate(l.a), conjugate(l.b))


def in_open_arc(x: Angle, start: Angle, end: Angle) -> bool:
    """Membership in the open arc traversed counterclockwise from start to end."""
    if start < end:
        return start < x < end
    return x > start or x < end


def crosses(l1: Leaf, l2: Leaf) -> bool:
    """True iff the chords cross transversally; shared endpoints do not count."""
    if l1.a in l2 or l1.b in l2:
        return False
    return (l1.a < l2.a < l1.b) != (l1.a < l2.b < l1.b)


def assert_noncrossing(leaves) -> None:
    """O(n log n) check that a family of chords is pairwise non-crossing.

    Chords as intervals (a, b) with a < b cross iff they properly overlap:
    a1 < a2 < b1 < b2.  Shared endpoints are allowed.
    """
    from .errors import InternalConsistencyError

    ivs = sorted({(l.a, l.b) for l in leaves}, key=lambda t: (t[0], -t[1]))
    stack: list[Fraction] = []
    for lo, hi in ivs:
        while stack and stack[-1] <= lo:
            stack.pop()
        if stack and stack[-1] < hi:
            raise InternalConsistencyError(
                f"crossing chords near ({lo}, {hi}) vs endpoint {stack[-1]}"
            )
        stack.append(hi)


@dataclass(frozen=True)
class Arc:
    """Set of angles traversed counterclockwise from start to end."""

    start: Angle
    end: Angle
    closed_start: bool = False
    closed_end: bool = False

    def __post_init__(self):
        if self.start == self.end:
            raise DomainError("arc endpoints must differ")


def arc(start, end, closed_start=False, closed_end=False) -> Arc:
    if isinstance(start, str):
        start = parse_angle(start)
    if isinstance(end, str):
        end = parse_angle(end)
    return Arc(angle(start), angle(end), closed_start, closed_end)


def arc_contains(a: Arc, x: Angle) -> bool:
    if x == a.start:
        return a.closed_start
    if x == a.end:
        return a.closed_end
    return in_open_arc(x, a.start, a.end)
