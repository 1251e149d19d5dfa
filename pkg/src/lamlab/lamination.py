"""Invariant laminations of periodic angles: membership, classes, pullback.

The lamination L_p of an odd-denominator angle p is queried through symbolic
itineraries.  The circle is cut at the four endpoints of the major leaf and
its antipode; two angles are in the same leaf/gap class iff their full
eventually periodic itineraries agree, with a cut-point hit recorded as its
own symbol.  Word equality is cross-checked against the finite pullback
approximation: a chord of the approximation that separates two angles proves
they are in different classes, which weeds out word collisions between
distinct classes at high periods.

The pullback construction doubles as a renderer witness: `build` starts from
the forward orbit of the minor and repeatedly takes preimage chords, always
choosing the pairing compatible with the critical diameter.
"""

from __future__ import annotations

import functools
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .circle import (
    Angle,
    HALF,
    Leaf,
    angle,
    assert_noncrossing,
    arc_contains,
    Arc,
    double,
    double_leaf,
    fmt_angle,
    in_open_arc,
    leaf_length,
    period_under_doubling,
)
from .errors import (
    DomainError,
    InternalConsistencyError,
    check_period_cap,
)
from .qml import companion, minor_leaf_of

STAR = 4  # itinerary symbol for an exact cut-point hit

SEPARATION_DEPTH = 7  # pullback depth backing the word-collision check

ONE_THIRD = Fraction(1, 3)


def _orbit_leaves(minor: Leaf) -> list[Leaf]:
    """Forward leaf orbit of a periodic minor, minor first."""
    out = [minor]
    cur = double_leaf(minor)
    while cur != minor:
        out.append(cur)
        cur = double_leaf(cur)
    return out


def major_of(minor: Leaf) -> Leaf:
    """The long preimage leaf of a minor: length 1/2 - len(minor)/2.

    Of the two long preimage chords, the one on the forward orbit of the
    minor is returned; for the period-2 minor {1/3, 2/3}, whose orbit leaf is
    the minor itself, the other one ({1/6, 5/6}) is used.
    """
    if leaf_length(minor) == HALF:
        raise DomainError("degenerate minor of length 1/2 has no major")
    a, b = minor.endpoints()
    long1 = Leaf(a / 2, (b / 2 + HALF) % 1)
    long2 = Leaf((a / 2 + HALF) % 1, b / 2)
    want = HALF - leaf_length(minor) / 2
    candidates = [l for l in (long1, long2) if leaf_length(l) == want]
    if len(candidates) != 2:
        raise InternalConsistencyError(f"preimage pair of {minor} has wrong lengths")
    if minor.a.denominator % 2 == 1:
        orbit = _orbit_leaves(minor)
        on_orbit = [l for l in candidates if l in orbit and l != minor]
        if on_orbit:
            return on_orbit[0]
        others = [l for l in candidates if l != minor]
        return others[0]
    return candidates[0]


@dataclass(frozen=True)
class LaminationSpec:
    """Minor/major data of L_p plus the itinerary cut points."""

    p: Angle
    minor: Leaf
    major: Leaf
    period: int
    cuts: tuple[Angle, Angle, Angle, Angle]
    minor_region: int

    def __str__(self) -> str:
        return f"L_{fmt_angle(self.p)}"


@functools.lru_cache(maxsize=None)
def spec_for(p: Angle) -> LaminationSpec:
    p = angle(p)
    if p == 0:
        raise DomainError("angle 0 has the empty lamination")
    if p.denominator % 2 == 0:
        raise DomainError(f"{fmt_angle(p)} has even denominator, not periodic")
    minor = minor_leaf_of(p)
    major = major_of(minor)
    if not (ONE_THIRD <= leaf_length(major) <= HALF):
        raise InternalConsistencyError(f"major {major} of {minor} has bad length")
    if double_leaf(major) != minor:
        raise InternalConsistencyError(f"major {major} does not map onto {minor}")
    _, period = period_under_doubling(p)
    anti = Leaf((major.a + HALF) % 1, (major.b + HALF) % 1)
    cuts = tuple(sorted((major.a, major.b, anti.a, anti.b)))
    mid = (minor.a + minor.b) / 2
    minor_region = _region_of(cuts, mid)
    return LaminationSpec(p, minor, major, period, cuts, minor_region)


def _region_of(cuts, x: Angle) -> int:
    """Index of the open arc of the cut partition containing x, 4 on a cut."""
    if x in cuts:
        return STAR
    count = sum(x > c for c in cuts)
    return count % 4  # below cuts[0] and above cuts[3] are the same wrap arc


def symbol_of(spec: LaminationSpec, x: Angle) -> int:
    return _region_of(spec.cuts, x)


# --- itinerary words ---------------------------------------------------------


def _canonical_word(pre: list[int], per: list[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Shortest (preperiod, period) form of an eventually periodic word.

    A cut hit (STAR) in the preperiod is a one-time ambiguity and is never
    absorbed into the period block.
    """
    n = len(per)
    for d in range(1, n + 1):
        if n % d == 0 and per == per[:d] * (n // d):
            per = per[:d]
            break
    pre = list(pre)
    per = list(per)
    while pre and pre[-1] == per[-1] and per[-1] != STAR:
        pre.pop()
        per = [per[-1]] + per[:-1]
    return tuple(pre), tuple(per)


Word = tuple[tuple[int, ...], tuple[int, ...]]


def _slot_at(word: Word, j: int) -> tuple[tuple, int]:
    pre, per = word
    if j < len(pre):
        return ("p", j), pre[j]
    return ("q", (j - len(pre)) % len(per)), per[(j - len(pre)) % len(per)]


def words_compatible(wx: Word, wy: Word) -> bool:
    """Can the cut-hit symbols be resolved to make the infinite words equal?

    Each STAR slot of a canonical word gets one resolution, applied to every
    repetition of its period block.  Decided by slot union-find over a window
    of max preperiod + lcm of the block lengths.
    """
    window = max(len(wx[0]), len(wy[0])) + lcm(len(wx[1]), len(wy[1]))
    parent: dict = {}
    value: dict = {}

    def find(s):
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    def union(s, t) -> bool:
        rs, rt = find(s), find(t)
        if rs == rt:
            return True
        if value[rs] is not None and value[rt] is not None and value[rs] != value[rt]:
            return False
        parent[rt] = rs
        if value[rs] is None:
            value[rs] = value[rt]
        return True

    for j in range(window):
        (slot_x, vx), (slot_y, vy) = _slot_at(wx, j), _slot_at(wy, j)
        sx, sy = ("x",) + slot_x, ("y",) + slot_y
        for s, v in ((sx, vx), (sy, vy)):
            if s not in parent:
                parent[s] = s
                value[s] = None if v == STAR else v
        if not union(sx, sy):
            return False
    return True


@functools.lru_cache(maxsize=65536)
def full_word(spec: LaminationSpec, x: Angle) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Canonical eventually periodic itinerary of x in the cut partition."""
    pre, per = period_under_doubling(x)
    syms = []
    cur = x
    for _ in range(pre + per):
        syms.append(symbol_of(spec, cur))
        cur = double(cur)
    return _canonical_word(syms[:pre], syms[pre:])


@dataclass(frozen=True)
class ItineraryWord:
    """Two-sided coding by the closed arcs cut by the major leaf.

    'A' is the side containing the minor, 'B' the other, '*' an exact hit of
    a major endpoint.  `preperiod`/`period` describe the full infinite word.
    """

    symbols: tuple[str, ...]
    preperiod: int
    period: int


def itinerary(x: Angle, spec: LaminationSpec, length: int | str = "full") -> ItineraryWord:
    x = angle(x)
    pre, per = period_under_doubling(x)
    n = pre + per if length == "full" else int(length)
    if length != "full" and n < 1:
        raise DomainError("itinerary length must be >= 1")
    syms = []
    cur = x
    m1, m2 = spec.major.endpoints()
    minor_inside = in_open_arc((spec.minor.a + spec.minor.b) / 2, m1, m2)
    for _ in range(n):
        if cur == m1 or cur == m2:
            syms.append("*")
        elif in_open_arc(cur, m1, m2) == minor_inside:
            syms.append("A")
        else:
            syms.append("B")
        cur = double(cur)
    return ItineraryWord(tuple(syms), pre, per)


# --- pullback construction ---------------------------------------------------


class _SeparationIndex:
    """Chord index answering 'does any chord separate the circle points u, v'.

    A chord separates iff exactly one endpoint lies strictly inside the arc
    (u, v).  Counting instead of scanning: with E endpoints strictly inside,
    F chords entirely inside, and S inside-endpoints of chords touching u or
    v, some chord separates iff E - S > 2F.  F is a dominance count served
    by a static merge-sort tree over the chords sorted by left endpoint.
    """

    def __init__(self, leaves: tuple[Leaf, ...]):
        self.leaves = leaves
        self.positions = sorted(p for l in leaves for p in l.endpoints())
        self.incident: dict[Angle, list[Leaf]] = {}
        for l in leaves:
            self.incident.setdefault(l.a, []).append(l)
            self.incident.setdefault(l.b, []).append(l)
        chords = sorted((l.a, l.b) for l in leaves)
        self.lefts = [c[0] for c in chords]
        n = len(chords)
        self.tree: list[list[Angle]] = [[]] * (2 * n) if n else []
        if n:
            size = 1
            while size < n:
                size *= 2
            self.size = size
            self.tree = [[] for _ in range(2 * size)]
            for i, c in enumerate(chords):
                self.tree[size + i] = [c[1]]
            for i in range(size - 1, 0, -1):
                left, right = self.tree[2 * i], self.tree[2 * i + 1]
                merged, li, ri = [], 0, 0
                while li < len(left) and ri < len(right):
                    if left[li] <= right[ri]:
                        merged.append(left[li])
                        li += 1
                    else:
                        merged.append(right[ri])
                        ri += 1
                merged.extend(left[li:])
                merged.extend(right[ri:])
                self.tree[i] = merged
        else:
            self.size = 0

    def _chords_inside(self, lo: Angle, hi: Angle) -> int:
        """Chords with lo < a and b < hi (both endpoints strictly inside)."""
        start = bisect_right(self.lefts, lo)
        stop = bisect_left(self.lefts, hi)
        if start >= stop:
            return 0
        count = 0
        lo_node, hi_node = start + self.size, stop + self.size
        while lo_node < hi_node:
            if lo_node & 1:
                count += bisect_left(self.tree[lo_node], hi)
                lo_node += 1
            if hi_node & 1:
                hi_node -= 1
                count += bisect_left(self.tree[hi_node], hi)
            lo_node //= 2
            hi_node //= 2
        return count

    def separates(self, u: Angle, v: Angle) -> bool:
        lo, hi = (u, v) if u < v else (v, u)
        inside = bisect_left(self.positions, hi) - bisect_right(self.positions, lo)
        if inside == 0:
            return False
        touching = 0
        for pt in (lo, hi):
            for l in self.incident.get(pt, ()):
                other = l.b if pt == l.a else l.a
                if lo < other < hi:
                    touching += 1
        return inside - touching > 2 * self._chords_inside(lo, hi)


def _pullback_pair(spec: LaminationSpec, l: Leaf, existing: list[Leaf]) -> list[Leaf]:
    """The two preimage chords of a leaf, chosen per the critical diameter."""
    if l == spec.minor:
        anti = Leaf((spec.major.a + HALF) % 1, (spec.major.b + HALF) % 1)
        return [spec.major, anti]
    a, b = l.endpoints()
    pa, pa2 = a / 2, (a / 2 + HALF) % 1
    pb, pb2 = b / 2, (b / 2 + HALF) % 1
    pairings = [
        (Leaf(pa, pb), Leaf(pa2, pb2)),
        (Leaf(pa, pb2), Leaf(pa2, pb)),
    ]
    survivors = []
    for pair in pairings:
        if any(_crosses_any(c, existing) for c in pair):
            continue
        survivors.append(pair)
    if len(survivors) == 1:
        return list(survivors[0])
    if not survivors:
        raise InternalConsistencyError(f"no consistent preimage pairing for {l}")
    # both pairings cross nothing yet: split by the critical diameter
    c1, c2 = spec.p / 2, (spec.p / 2 + HALF) % 1
    if any(pt in (c1, c2) for pt in (pa, pa2, pb, pb2)):
        raise InternalConsistencyError(f"ambiguous preimage pairing for {l}")
    same_half = in_open_arc(pa, c1, c2) == in_open_arc(pb, c1, c2)
    return list(pairings[0]) if same_half else list(pairings[1])


def _crosses_any(c: Leaf, existing: list[Leaf]) -> bool:
    from .circle import crosses

    return any(crosses(c, l) for l in existing)


@dataclass(frozen=True)
class LaminationApprox:
    spec: LaminationSpec
    depth: int
    leaves: tuple[Leaf, ...]

    def to_json(self, polygons=()) -> dict:
        return {
            "p": fmt_angle(self.spec.p),
            "minor": [fmt_angle(self.spec.minor.a), fmt_angle(self.spec.minor.b)],
            "major": [fmt_angle(self.spec.major.a), fmt_angle(self.spec.major.b)],
            "depth": self.depth,
            "leaves": [[fmt_angle(l.a), fmt_angle(l.b)] for l in sorted(self.leaves)],
            "polygons": [p.to_json() for p in polygons],
        }


@functools.lru_cache(maxsize=256)
def build(spec: LaminationSpec, depth: int) -> LaminationApprox:
    """Pullback approximation: minor orbit plus `depth` rounds of preimages."""
    if depth < 0:
        raise DomainError("depth must be >= 0")
    leaves = _orbit_leaves(spec.minor)
    seen = set(leaves)
    frontier = list(leaves)
    for _ in range(depth):
        new = []
        for l in frontier:
            for pre in _pullback_pair(spec, l, leaves):
                if pre not in seen:
                    seen.add(pre)
                    leaves.append(pre)
                    new.append(pre)
        assert_noncrossing(leaves)
        frontier = new
    return LaminationApprox(spec, depth, tuple(leaves))


@functools.lru_cache(maxsize=64)
def _separation_index(spec: LaminationSpec, depth: int) -> _SeparationIndex:
    return _SeparationIndex(build(spec, depth).leaves)


def _word_window(spec: LaminationSpec, x: Angle, y: Angle) -> int:
    px, kx = period_under_doubling(x)
    py, ky = period_under_doubling(y)
    return max(px, py) + lcm(kx, ky)


def separated_by_approx(
    spec: LaminationSpec, x: Angle, y: Angle, depth: int = SEPARATION_DEPTH
) -> bool:
    """A chord of the pullback approximation separates some forward pair
    (2^j x, 2^j y): definitive proof the two angles are in different classes."""
    index = _separation_index(spec, depth)
    u, v = x, y
    for _ in range(_word_window(spec, x, y)):
        if u == v:
            return False
        if index.separates(u, v):
            return True
        u, v = double(u), double(v)
    return False


def same_class(x: Angle, y: Angle, spec: LaminationSpec) -> bool:
    """Compatible itineraries and no separating chord: same leaf/gap class."""
    x, y = angle(x), angle(y)
    if x == y:
        return True
    if not words_compatible(full_word(spec, x), full_word(spec, y)):
        return False
    return not separated_by_approx(spec, x, y)


# --- periodic class scan -----------------------------------------------------


def _int_symbols(spec: LaminationSpec, den: int, values: np.ndarray) -> np.ndarray:
    """Vectorised cut-partition symbols of the angles values/den."""
    count = np.zeros(len(values), dtype=np.int8)
    star = np.zeros(len(values), dtype=bool)
    for c in spec.cuts:
        lhs = values * c.denominator
        rhs = c.numerator * den
        count += lhs > rhs
        star |= lhs == rhs
    syms = (count % 4).astype(np.int8)
    syms[star] = STAR
    return syms


_match_cache: dict = {}


def _angles_matching_block(spec: LaminationSpec, n: int, block: tuple[int, ...]) -> list[Angle]:
    """Candidates among angles of period dividing n whose word can match
    block^infinity; STAR slots on either side are left unconstrained here and
    settled exactly by `words_compatible` afterwards."""
    key = (spec.p, n, block)
    if key in _match_cache:
        return _match_cache[key]
    den = 2**n - 1
    values = np.arange(1, den, dtype=np.int64)
    cur = values.copy()
    alive = np.ones(len(values), dtype=bool)
    w = len(block)
    for j in range(n):
        want = block[j % w]
        if want != STAR:
            syms = _int_symbols(spec, den, cur)
            alive &= (syms == want) | (syms == STAR)
            if not alive.any():
                break
        cur = (cur * 2) % den
    result = [Fraction(int(v), den) for v in values[alive]]
    _match_cache[key] = result
    return result


def _refine_components(spec: LaminationSpec, members: list[Angle]) -> list[list[Angle]]:
    """Split candidates into classes: connected components of the relation
    'words compatible and not provably separated'.  A component containing a
    non-edge is ambiguous and raises instead of guessing."""
    if len(members) <= 1:
        return [list(members)]
    members = sorted(members)
    n = len(members)
    words = [full_word(spec, m) for m in members]
    adj = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            linked = words_compatible(words[i], words[j]) and not separated_by_approx(
                spec, members[i], members[j]
            )
            adj[i][j] = adj[j][i] = linked
    comps: list[list[int]] = []
    unseen = set(range(n))
    while unseen:
        root = min(unseen)
        comp, stack = [], [root]
        unseen.discard(root)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in list(unseen):
                if adj[i][j]:
                    unseen.discard(j)
                    stack.append(j)
        comp.sort()
        for i in comp:
            for j in comp:
                if i < j and not adj[i][j]:
                    raise InternalConsistencyError(
                        "inconsistent class refinement; deepen the pullback"
                    )
        comps.append(comp)
    return [[members[i] for i in comp] for comp in comps]


def class_angles(x: Angle, spec: LaminationSpec, period_bound: int) -> set[Angle]:
    """All periodic angles of period <= period_bound in the class of x.

    Brute force: enumerate the candidates j/(2^n - 1) whose itinerary word
    matches, then discard word collisions that the pullback approximation
    separates.
    """
    x = angle(x)
    if x.denominator % 2 == 0:
        raise DomainError("class_angles wants a periodic (odd denominator) angle")
    check_period_cap(period_bound)
    word = full_word(spec, x)
    if word[0]:
        raise InternalConsistencyError("periodic angle with non-empty word preperiod")
    block = word[1]
    candidates: set[Angle] = {x}
    if words_compatible(full_word(spec, angle(0)), word):
        candidates.add(angle(0))
    for n in range(2, period_bound + 1):
        for y in _angles_matching_block(spec, n, block):
            if words_compatible(full_word(spec, y), word):
                candidates.add(y)
    for group in _refine_components(spec, sorted(candidates)):
        if x in group:
            return set(group)
    raise InternalConsistencyError("query angle lost by refinement")


def leaf_in(spec: LaminationSpec, l: Leaf, period_bound: int | None = None) -> bool:
    """Is the chord a leaf of L_p?

    Same class on the endpoints, and within that class the endpoints must be
    adjacent vertices (a polygon diagonal is not a leaf).  Class size 2 is
    exactly leaf membership.
    """
    a, b = l.endpoints()
    if not same_class(a, b, spec):
        return False
    if a.denominator % 2 == 1 and b.denominator % 2 == 1:
        bound = period_bound or max(12, 2 * spec.period, period_under_doubling(a)[1])
        cls = sorted(class_angles(a, spec, bound))
    else:
        cls = sorted(_local_class_sample(spec, l))
    if len(cls) < 3:
        return True
    i, j = cls.index(a), cls.index(b)
    return (j - i) % len(cls) in (1, len(cls) - 1)


def _local_class_sample(spec: LaminationSpec, l: Leaf, depth: int = SEPARATION_DEPTH) -> set[Angle]:
    """Class vertices around a chord, sampled from pullback leaves that share
    one of its endpoints (the clean axiom makes those polygon sides)."""
    a, b = l.endpoints()
    target = full_word(spec, a)
    out = {a, b}
    incident = _separation_index(spec, depth).incident
    for pt0 in (a, b):
        for built in incident.get(pt0, ()):
            for pt in built.endpoints():
                if pt in out:
                    continue
                if words_compatible(full_word(spec, pt), target) and not separated_by_approx(
                    spec, a, pt
                ):
                    out.add(pt)
    return out


@dataclass(frozen=True)
class Polygon:
    """Finite-sided gap: >= 3 vertices in circular order, canonical rotation."""

    vertices: tuple[Angle, ...]
    period: int | None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))

    def sides(self) -> list[Leaf]:
        v = self.vertices
        return [Leaf(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def to_json(self) -> dict:
        return {
            "vertices": [fmt_angle(v) for v in self.vertices],
            "period": self.period,
        }


def _set_period(support: frozenset[Angle], bound: int = 64) -> int | None:
    cur = support
    for t in range(1, bound + 1):
        cur = frozenset(double(v) for v in cur)
        if cur == support:
            return t
    return None


@functools.lru_cache(maxsize=128)
def _class_table(spec: LaminationSpec, bound: int) -> tuple[tuple[Angle, ...], ...]:
    """All classes of size >= 2 among angles of period <= bound."""
    check_period_cap(bound)
    groups: dict[tuple, list[Angle]] = {}
    zero_word = _canonical_word([], [symbol_of(spec, angle(0))])
    groups.setdefault((len(zero_word[1]), bytes(zero_word[1])), []).append(angle(0))
    for n in range(2, bound + 1):
        den = 2**n - 1
        values = np.arange(1, den, dtype=np.int64)
        cur = values.copy()
        syms = np.empty((n, len(values)), dtype=np.int8)
        for j in range(n):
            syms[j] = _int_symbols(spec, den, cur)
            cur = (cur * 2) % den
        exact = np.ones(len(values), dtype=bool)
        for d in range(1, n):
            if n % d == 0:
                exact &= (values * (2**d)) % den != values
        min_per = np.full(len(values), n, dtype=np.int32)
        for d in range(1, n):
            if n % d:
                continue
            ok = np.ones(len(values), dtype=bool)
            for j in range(d, n):
                ok &= syms[j] == syms[j - d]
            min_per = np.where(ok & (min_per == n), d, min_per)
        rows = np.ascontiguousarray(syms.T)
        for idx in np.nonzero(exact)[0]:
            w = int(min_per[idx])
            key = (w, rows[idx, :w].tobytes())
            groups.setdefault(key, []).append(Fraction(int(values[idx]), den))
    blobs = _merge_star_groups(spec, groups)
    classes = []
    for members in blobs:
        if len(members) < 2:
            continue
        for part in _refine_components(spec, members):
            if len(part) >= 2:
                classes.append(tuple(sorted(part)))
    classes.sort()
    return tuple(classes)


def _merge_star_groups(
    spec: LaminationSpec, groups: dict[tuple, list[Angle]]
) -> list[list[Angle]]:
    """Join literal word groups whose cut-hit symbols admit a common resolution.

    Only groups containing a STAR can merge with anything; orbits through the
    cut points are rare, so this stays cheap.
    """
    keys = list(groups)
    star_keys = [k for k in keys if STAR in k[1]]
    parent = {k: k for k in keys}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for sk in star_keys:
        w_star = full_word(spec, groups[sk][0])
        for other in keys:
            if other == sk:
                continue
            if words_compatible(w_star, full_word(spec, groups[other][0])):
                parent[find(sk)] = find(other)
    merged: dict[tuple, list[Angle]] = {}
    for k in keys:
        merged.setdefault(find(k), []).extend(groups[k])
    return [sorted(m) for m in merged.values()]


def periodic_leaves(spec: LaminationSpec, n: int) -> list[list[Leaf]]:
    """Leaves with both endpoints of period dividing n, grouped into orbits.

    Sides of polygon classes count as leaves; polygon diagonals do not.
    """
    check_period_cap(n)
    leaves = set()
    for cls in _class_table(spec, n):
        members = [x for x in cls if n % period_under_doubling(x)[1] == 0]
        if len(members) < 2:
            continue
        if len(members) == 2:
            leaves.add(Leaf(members[0], members[1]))
        else:
            leaves.update(Polygon(tuple(members), None).sides())
    orbits: list[list[Leaf]] = []
    remaining = set(leaves)
    while remaining:
        l0 = min(remaining)
        orbit = [l0]
        remaining.discard(l0)
        cur = double_leaf(l0)
        while cur != l0 and cur in remaining:
            orbit.append(cur)
            remaining.discard(cur)
            cur = double_leaf(cur)
        orbits.append(orbit)
    return orbits


def polygons_of(spec: LaminationSpec, bound: int) -> list[Polygon]:
    """Finite-sided gaps from equal-itinerary classes of size >= 3."""
    out = []
    for cls in _class_table(spec, bound):
        if len(cls) >= 3:
            out.append(Polygon(tuple(cls), _set_period(frozenset(cls))))
    return sorted(out, key=lambda p: p.vertices)


def polygons_of_approx(approx: LaminationApprox) -> list[Polygon]:
    """Finite gaps of a pullback approximation via endpoint-sharing cycles."""
    adj: dict[Angle, set[Angle]] = {}
    for l in approx.leaves:
        adj.setdefault(l.a, set()).add(l.b)
        adj.setdefault(l.b, set()).add(l.a)
    seen: set[Angle] = set()
    out = []
    for start in sorted(adj):
        if start in seen:
            continue
        comp, stack = set(), [start]
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(adj[v] - comp)
        seen |= comp
        if len(comp) < 3:
            continue
        if any(len(adj[v] & comp) != 2 for v in comp):
            continue  # not a closed cycle of leaves
        verts = sorted(comp)
        if all(verts[(i + 1) % len(verts)] in adj[verts[i]] for i in range(len(verts))):
            periodic = all(v.denominator % 2 == 1 for v in verts)
            out.append(
                Polygon(tuple(verts), _set_period(frozenset(verts)) if periodic else None)
            )
    return out


def arc_clear_of_periodic_leaves(spec: LaminationSpec, a: Arc, max_period: int) -> bool:
    """True iff no periodic leaf of period <= max_period has an endpoint in the arc."""
    for orbit in periodic_leaves(spec, max_period):
        for l in orbit:
            if arc_contains(a, l.a) or arc_contains(a, l.b):
                return False
    return True
