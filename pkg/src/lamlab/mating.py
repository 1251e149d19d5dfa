"""The mating equivalence relation on L_p united with the inverted L_q.

Classes are grown by seed-driven saturation: starting from an angle or leaf,
alternately attach the p-side class of every support angle and the inverted
q-side class of its conjugate, until stable.  All q-side data is kept in
mating coordinates, i.e. already pushed through x -> -x.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .circle import (
    Angle,
    Leaf,
    angle,
    conjugate,
    double,
    fmt_angle,
    orbit,
)
from .errors import DomainError
from .lamination import (
    LaminationSpec,
    Polygon,
    _orbit_leaves,
    _set_period,
    class_angles,
    spec_for,
)
from .qml import is_mateable, is_tuning

CLASS_SIZE_CAP = 64
CLASS_PERIOD_BOUND_CAP = 15

# machine-readable finding codes
NOT_MATEABLE = "NOT_MATEABLE"
SHARED_ORBIT = "SHARED_ORBIT"
OVERSIZED_CLASS = "OVERSIZED_CLASS"
TUNING_P = "TUNING_P"
TUNING_Q = "TUNING_Q"
LINKED_GAPS = "LINKED_GAPS"
CLASS_CAP_HIT = "CLASS_CAP_HIT"


@dataclass(frozen=True)
class MatingSpec:
    p: Angle
    q: Angle
    p_spec: LaminationSpec
    q_spec: LaminationSpec

    def default_bound(self) -> int:
        return min(lcm(self.p_spec.period, self.q_spec.period), CLASS_PERIOD_BOUND_CAP)

    def __str__(self) -> str:
        return f"mating({fmt_angle(self.p)}, {fmt_angle(self.q)})"


@functools.lru_cache(maxsize=128)
def mating_spec(p: Angle, q: Angle) -> MatingSpec:
    p, q = angle(p), angle(q)
    for x in (p, q):
        if x == 0:
            raise DomainError("angle 0 has the empty lamination; nothing to mate")
        if x.denominator % 2 == 0:
            raise DomainError(f"{fmt_angle(x)} has even denominator")
    return MatingSpec(p, q, spec_for(p), spec_for(q))


@dataclass(frozen=True)
class EquivClass:
    """One class of the mating relation, with source-tagged members.

    q-side leaves and polygons are stored in mating coordinates (inverted).
    """

    p_leaves: frozenset[Leaf]
    q_leaves: frozenset[Leaf]
    p_polygons: tuple[Polygon, ...]
    q_polygons: tuple[Polygon, ...]
    support: frozenset[Angle]
    period: int | None
    capped: bool = False

    def object_count(self) -> int:
        return (
            len(self.p_leaves)
            + len(self.q_leaves)
            + len(self.p_polygons)
            + len(self.q_polygons)
        )

    def is_single_leaf(self) -> bool:
        return (
            self.object_count() == 1
            and not self.p_polygons
            and not self.q_polygons
        )

    def is_single_polygon(self) -> bool:
        """One polygon; its own sides are the only leaves of that side."""
        polys = self.p_polygons + self.q_polygons
        if len(polys) != 1:
            return False
        sides = set(polys[0].sides())
        if self.p_polygons:
            return set(self.p_leaves) <= sides and not self.q_leaves
        return set(self.q_leaves) <= sides and not self.p_leaves

    def shape(self) -> tuple[int, int, int]:
        return (
            len(self.p_leaves),
            len(self.q_leaves),
            len(self.p_polygons) + len(self.q_polygons),
        )

    def to_json(self) -> dict:
        return {
            "support": [fmt_angle(x) for x in sorted(self.support)],
            "p_leaves": [[fmt_angle(l.a), fmt_angle(l.b)] for l in sorted(self.p_leaves)],
            "q_leaves": [[fmt_angle(l.a), fmt_angle(l.b)] for l in sorted(self.q_leaves)],
            "p_polygons": [p.to_json() for p in self.p_polygons],
            "q_polygons": [p.to_json() for p in self.q_polygons],
            "period": self.period,
            "capped": self.capped,
        }


def _side_class(mspec: MatingSpec, u: Angle, side: str, bound: int) -> set[Angle]:
    """Class of u in L_p, or in L_q^-1, expressed in mating coordinates."""
    if side == "p":
        return class_angles(u, mspec.p_spec, bound)
    members = class_angles(conjugate(u), mspec.q_spec, bound)
    return {conjugate(w) for w in members}


_class_cache: dict = {}


def class_of(
    mspec: MatingSpec,
    seed,
    period_bound: int | None = None,
    size_cap: int = CLASS_SIZE_CAP,
) -> EquivClass:
    """Saturate the mating class of a seed leaf or angle."""
    bound = mspec.default_bound() if period_bound is None else period_bound
    seeds = set(seed.endpoints()) if isinstance(seed, Leaf) else {angle(seed)}
    for s in seeds:
        cached = _class_cache.get((mspec.p, mspec.q, s, bound, size_cap))
        if cached is not None:
            return cached
    support: set[Angle] = set()
    pending = sorted(seeds)
    p_leaves: set[Leaf] = set()
    q_leaves: set[Leaf] = set()
    p_polygons: set[Polygon] = set()
    q_polygons: set[Polygon] = set()
    capped = False
    while pending:
        u = pending.pop()
        if u in support:
            continue
        support.add(u)
        for side, leaves, polygons in (
            ("p", p_leaves, p_polygons),
            ("q", q_leaves, q_polygons),
        ):
            members = _side_class(mspec, u, side, bound)
            if len(members) < 2:
                continue
            if len(members) == 2:
                leaves.add(Leaf(*members))
            else:
                poly = Polygon(tuple(sorted(members)), _set_period(frozenset(members)))
                polygons.add(poly)
                leaves.update(poly.sides())
            for w in members:
                if w not in support:
                    pending.append(w)
        if len(p_leaves) + len(q_leaves) + len(p_polygons) + len(q_polygons) > size_cap:
            capped = True
            break
    cls = EquivClass(
        frozenset(p_leaves),
        frozenset(q_leaves),
        tuple(sorted(p_polygons, key=lambda p: p.vertices)),
        tuple(sorted(q_polygons, key=lambda p: p.vertices)),
        frozenset(support),
        None if capped else _set_period(frozenset(support)),
        capped,
    )
    if not capped:
        for s in support:
            _class_cache[(mspec.p, mspec.q, s, bound, size_cap)] = cls
    return cls


def periodic_classes(
    mspec: MatingSpec,
    n: int,
    seed_period_max: int | None = None,
    period_bound: int | None = None,
) -> list[EquivClass]:
    """Nontrivial classes whose support has doubling period dividing n,
    deduplicated along their forward orbits."""
    from .qml import exact_period_angles

    seed_max = seed_period_max or max(n, mspec.p_spec.period, mspec.q_spec.period)
    seen_support: set[frozenset] = set()
    classes: list[EquivClass] = []
    for m in range(1, seed_max + 1):
        for x in exact_period_angles(m):
            cls = class_of(mspec, x, period_bound)
            if cls.support in seen_support:
                continue
            seen_support.add(cls.support)
            if cls.object_count() == 0:
                continue
            if cls.period is not None and n % cls.period == 0:
                classes.append(cls)
    return _dedupe_by_orbit(classes)


def _dedupe_by_orbit(classes: list[EquivClass]) -> list[EquivClass]:
    by_support = {cls.support: cls for cls in classes}
    out = []
    seen: set[frozenset] = set()
    for support in sorted(by_support, key=sorted):
        if support in seen:
            continue
        orbit_supports = {support}
        cur = frozenset(double(x) for x in support)
        while cur in by_support and cur not in orbit_supports:
            orbit_supports.add(cur)
            cur = frozenset(double(x) for x in cur)
        seen |= orbit_supports
        out.append(by_support[support])
    return out


@dataclass(frozen=True)
class Finding:
    code: str
    detail: dict

    def to_json(self) -> dict:
        return {"code": self.code, **self.detail}


@dataclass(frozen=True)
class MatingReport:
    p: Angle
    q: Angle
    mateable: bool
    thm35_ok: bool
    period_bound: int
    class_period: int
    findings: tuple[Finding, ...]
    class_histogram: dict

    def to_json(self) -> dict:
        return {
            "p": fmt_angle(self.p),
            "q": fmt_angle(self.q),
            "mateable": self.mateable,
            "thm35_ok": self.thm35_ok,
            "period_bound": self.period_bound,
            "class_period": self.class_period,
            "findings": [f.to_json() for f in self.findings],
            "class_histogram": {
                f"{k[0]}:{k[1]}:{k[2]}": v for k, v in sorted(self.class_histogram.items())
            },
        }


def _orbit_root_leaves(mspec: MatingSpec, side: str) -> frozenset[Leaf]:
    """Forward orbit of the minor: the root leaves of the periodic Fatou gaps."""
    if side == "p":
        return frozenset(_orbit_leaves(mspec.p_spec.minor))
    inverted = []
    for l in _orbit_leaves(mspec.q_spec.minor):
        inverted.append(Leaf(conjugate(l.a), conjugate(l.b)))
    return frozenset(inverted)


def detect_linked_gaps(
    mspec: MatingSpec,
    n: int | None = None,
    classes: list[EquivClass] | None = None,
) -> list[Finding]:
    """Findings for classes linking several periodic gaps of one side.

    A class holding two or more leaves of one side's minor orbit ties the
    corresponding cycle of Fatou gaps into clusters; the cluster size is the
    period of the implied tuning.  Two same-side polygons in one class are
    reported the same way.
    """
    n = n or max(mspec.p_spec.period, mspec.q_spec.period)
    if classes is None:
        classes = periodic_classes(mspec, n)
    roots = {"p": _orbit_root_leaves(mspec, "p"), "q": _orbit_root_leaves(mspec, "q")}
    periods = {"p": mspec.p_spec.period, "q": mspec.q_spec.period}
    findings = []
    for cls in classes:
        for side, leaves in (("p", cls.p_leaves), ("q", cls.q_leaves)):
            other = "q" if side == "p" else "p"
            hit = sorted(leaves & roots[side])
            if len(hit) >= 2:
                k = periods[side]
                cluster = len(hit)
                findings.append(
                    Finding(
                        LINKED_GAPS,
                        {
                            "side": side,
                            "gap_orbit_period": k,
                            "gaps_linked_per_cluster": cluster,
                            "tuning_period": cluster,
                            "critical_periods": sorted(
                                (periods[other], k // cluster if k % cluster == 0 else k)
                            ),
                            "linking_leaves": [
                                [fmt_angle(l.a), fmt_angle(l.b)] for l in hit
                            ],
                        },
                    )
                )
        for side, polys in (("p", cls.p_polygons), ("q", cls.q_polygons)):
            if len(polys) >= 2:
                findings.append(
                    Finding(
                        LINKED_GAPS,
                        {
                            "side": side,
                            "polygons": [p.to_json() for p in polys],
                            "gaps_linked_per_cluster": len(polys),
                            "tuning_period": len(polys),
                        },
                    )
                )
    return findings


def check_theorem_3_5(
    mspec: MatingSpec,
    class_period: int | None = None,
    period_bound: int | None = None,
) -> MatingReport:
    """Hypothesis checks: mateability, endpoint-orbit disjointness, classes no
    larger than one leaf or one polygon, and no tunings on either side.

    Completeness is relative to the stated period bounds, which the report
    records.
    """
    n = class_period or max(mspec.p_spec.period, mspec.q_spec.period)
    bound = period_bound or mspec.default_bound()
    findings: list[Finding] = []

    mateable = is_mateable(mspec.p, mspec.q)
    if not mateable:
        findings.append(Finding(NOT_MATEABLE, {"p": fmt_angle(mspec.p), "q": fmt_angle(mspec.q)}))

    p_orbit = set(orbit(mspec.p_spec.minor.a)) | set(orbit(mspec.p_spec.minor.b))
    q_orbit = {conjugate(x) for x in orbit(mspec.q_spec.minor.a)} | {
        conjugate(x) for x in orbit(mspec.q_spec.minor.b)
    }
    shared = sorted(p_orbit & q_orbit)
    if shared:
        findings.append(Finding(SHARED_ORBIT, {"angles": [fmt_angle(x) for x in shared]}))

    classes = periodic_classes(mspec, n, period_bound=bound)
    histogram: dict[tuple[int, int, int], int] = {}
    for cls in classes:
        histogram[cls.shape()] = histogram.get(cls.shape(), 0) + 1
        if cls.capped:
            findings.append(Finding(CLASS_CAP_HIT, {"class": cls.to_json()}))
        elif not (cls.is_single_leaf() or cls.is_single_polygon()):
            findings.append(Finding(OVERSIZED_CLASS, {"class": cls.to_json()}))

    findings.extend(detect_linked_gaps(mspec, n, classes))

    for side, code, x in ((TUNING_P, TUNING_P, mspec.p), (TUNING_Q, TUNING_Q, mspec.q)):
        t = is_tuning(x)
        if t is not None:
            findings.append(
                Finding(
                    code,
                    {
                        "angle": fmt_angle(x),
                        "root": [fmt_angle(t[0].leaf.a), fmt_angle(t[0].leaf.b)],
                        "inner_period": t[1],
                    },
                )
            )

    thm35_ok = mateable and not findings
    return MatingReport(
        mspec.p,
        mspec.q,
        mateable,
        thm35_ok,
        bound,
        n,
        tuple(findings),
        histogram,
    )
