"""Subshift counting, itinerary uniqueness, and renormalization addresses.

Transition matrices are taken as explicit data: entry (i, j) counts the
components of piece i mapping onto piece j, so admissible periodic words are
counted exactly by traces of matrix powers, and exact-period counts follow by
Moebius inversion.  The address validators hard-code the defining equalities
for the integer data (m_i, j_i, n_i, r_i) attached to a renormalization
cascade and check the six derived inequalities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import divisors, mobius

from .circle import Angle, angle, double, fmt_angle, period_under_doubling
from .errors import DomainError, check_period_cap


@dataclass(frozen=True)
class TransitionMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        rows = tuple(tuple(int(v) for v in row) for row in self.entries)
        if any(len(row) != n for row in rows):
            raise DomainError("transition matrix must be square")
        if any(v < 0 for row in rows for v in row):
            raise DomainError("transition matrix entries must be nonnegative")
        object.__setattr__(self, "entries", rows)

    @property
    def size(self) -> int:
        return len(self.entries)


def matrix(rows) -> TransitionMatrix:
    return TransitionMatrix(tuple(tuple(row) for row in rows))


def _matmul(a, b, n):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _matpow(m: TransitionMatrix, e: int):
    n = m.size
    result = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    base = m.entries
    while e:
        if e & 1:
            result = _matmul(result, base, n)
        base = _matmul(base, base, n)
        e >>= 1
    return result


def count_fixed(m: TransitionMatrix, n: int) -> int:
    """Admissible periodic words of length n: trace of the n-th power."""
    if n < 1:
        raise DomainError("period must be >= 1")
    p = _matpow(m, n)
    return sum(p[i][i] for i in range(m.size))


def count_exact_period(m: TransitionMatrix, n: int, orbits: bool = False) -> int:
    """Moebius inversion over count_fixed; orbit count divides out n."""
    if n < 1:
        raise DomainError("period must be >= 1")
    total = sum(mobius(n // d) * count_fixed(m, d) for d in divisors(n))
    total = int(total)
    if total < 0:
        raise DomainError("negative exact-period count: bad matrix data")
    if orbits:
        if total % n:
            raise DomainError("exact-period count not divisible by the period")
        return total // n
    return total


def brute_force_fixed(m: TransitionMatrix, n: int) -> int:
    """Oracle: sum over all cyclic index words of the entry products."""
    total = 0
    for word in itertools.product(range(m.size), repeat=n):
        prod = 1
        for i in range(n):
            prod *= m.entries[word[i]][word[(i + 1) % n]]
            if prod == 0:
                break
        total += prod
    return total


def component_count_from_points(points: int) -> int:
    """Type IV hyperbolic components sit two-to-one over periodic points."""
    if points < 0 or points % 2:
        raise DomainError(f"point count {points} must be even and nonnegative")
    return points // 2


def mandelbrot_component_count(m: int, cap: int | None = None) -> int:
    """Hyperbolic components of period dividing m in the Mandelbrot set."""
    if m < 1:
        raise DomainError("period must be >= 1")
    check_period_cap(m, cap)
    return 2 ** (m - 1)


def refined_itinerary_unique(x: Angle, cut_set: frozenset | set, n: int) -> bool:
    """Does the depth-n refined itinerary single out x among its period class?

    The circle is cut at the n-th preimages of cut_set; x's full periodic
    word in that partition must differ from the word of every other angle of
    the same exact period.
    """
    x = angle(x)
    cuts_in = {angle(c) for c in cut_set}
    if not cuts_in:
        raise DomainError("cut set must be nonempty")
    for c in cuts_in:
        if double(c) not in cuts_in:
            raise DomainError("cut set must be forward-invariant under doubling")
    if x.denominator % 2 == 0:
        raise DomainError("x must be periodic")
    pre, k = period_under_doubling(x)
    scale = 2**n
    cuts = sorted({(c + j) / scale % 1 for c in cuts_in for j in range(scale)})

    def word(y: Angle) -> tuple | None:
        syms = []
        cur = y
        for _ in range(k):
            if cur in cuts:
                return None
            syms.append(sum(cur > c for c in cuts) % len(cuts))
            cur = double(cur)
        return tuple(syms)

    target = word(x)
    if target is None:
        raise DomainError("orbit of x touches a cut point")
    from .qml import exact_period_angles

    for y in exact_period_angles(k):
        if y == x:
            continue
        if word(y) == target:
            return False
    return True


# --- renormalization addresses ----------------------------------------------


@dataclass(frozen=True)
class Address24:
    """Cascade data for the Markov-partition characterisation: m_1 = m, the
    escape counts j_1..j_{N-1} and periods m_1..m_N, plus the tuning flag for
    the terminal alternative m_N = j_{N-1} m_{N-1}."""

    m: int
    j: tuple[int, ...]
    m_seq: tuple[int, ...]
    tuning_tail: bool = False

    def __post_init__(self):
        object.__setattr__(self, "j", tuple(int(v) for v in self.j))
        object.__setattr__(self, "m_seq", tuple(int(v) for v in self.m_seq))
        if len(self.m_seq) < 2:
            raise DomainError("address needs N >= 2 periods")
        if len(self.j) != len(self.m_seq) - 1:
            raise DomainError("need exactly N-1 escape counts")
        if self.m_seq[0] != self.m:
            raise DomainError("m_seq must start at m")
        if self.m < 1 or any(v < 1 for v in self.j) or any(v < 1 for v in self.m_seq):
            raise DomainError("address entries must be positive")

    @property
    def N(self) -> int:
        return len(self.m_seq)

    def n_seq(self) -> list[int]:
        out, acc = [], 0
        for ji, mi in zip(self.j, self.m_seq):
            acc += ji * mi
            out.append(acc)
        return out


@dataclass(frozen=True)
class Verdict:
    valid: bool
    violations: tuple[dict, ...]

    def to_json(self) -> dict:
        return {"valid": self.valid, "violations": list(self.violations)}


def validate_thm24(a: Address24) -> Verdict:
    """Check m_{i+1} > n_i = sum j_l m_l for i <= N-2, and at the tail either
    the same inequality or the tuning alternative m_N = j_{N-1} m_{N-1}."""
    violations = []
    n_seq = a.n_seq()
    for i in range(1, a.N):
        required = n_seq[i - 1]
        m_next = a.m_seq[i]
        if m_next > required:
            continue
        if i == a.N - 1 and a.tuning_tail and m_next == a.j[i - 1] * a.m_seq[i - 1]:
            continue
        violations.append({"property": "2.4.1", "i": i})
    return Verdict(not violations, tuple(violations))


@dataclass(frozen=True)
class Address313:
    """Cascade data with re-entry offsets: r_1 = i1*m and the recursion
    n_{i+1} = j_{i+1} m_{i+1} + (n_i - r_i)."""

    m: int
    i1: int
    j: tuple[int, ...]
    m_seq: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "j", tuple(int(v) for v in self.j))
        object.__setattr__(self, "m_seq", tuple(int(v) for v in self.m_seq))
        if len(self.j) != len(self.m_seq):
            raise DomainError("j and m_seq must have equal length")
        if not self.j:
            raise DomainError("address must be nonempty")
        if self.m_seq[0] != self.m:
            raise DomainError("m_seq must start at m")
        if self.m < 1 or self.i1 < 1 or any(v < 1 for v in self.j) or any(
            v < 1 for v in self.m_seq
        ):
            raise DomainError("address entries must be positive")

    @property
    def N(self) -> int:
        return len(self.m_seq)

    def derived(self) -> tuple[list[int], list[int]]:
        """The sequences (n_i, r_i), i = 1..N.

        n_1 = j_1 m, r_1 = i1 m, and n_{i+1} = j_{i+1} m_{i+1} + (n_i - r_i)
        with the remainders fixed by
            n_2 - r_2 = j_2 m_2 - r_1,
            n_i - r_i = j_i m_i + j_{i-2} m_{i-2} - 2 r_1   (i >= 3),
        reading m_1 = m.
        """
        j, ms = self.j, self.m_seq
        r1 = self.i1 * self.m
        n = [j[0] * ms[0]]
        gap = [n[0] - r1]  # gap[i] = n_{i+1} - r_{i+1}
        for i in range(1, self.N):
            n.append(j[i] * ms[i] + gap[i - 1])
            if i == 1:
                gap.append(j[1] * ms[1] - r1)
            else:
                gap.append(j[i] * ms[i] + j[i - 2] * ms[i - 2] - 2 * r1)
        r = [n[i] - gap[i] for i in range(self.N)]
        return n, r


def _property6_bound(a: Address313, i: int) -> int:
    """Alternating sum j_i m_i + j_{i-2} m_{i-2} + ... down to index 1 or 2."""
    total = 0
    k = i
    while k >= 1:
        total += a.j[k - 1] * a.m_seq[k - 1]
        k -= 2
    return total


def validate_lemma314(a: Address313) -> Verdict:
    """Check the six properties of the derived sequences.

    Properties 1 and 6 (with j_1 > 3*i1) are generation constraints on the
    inputs; 2-5 are consequences and a failure there is a consistency alarm.
    """
    violations = []
    if a.j[0] <= 3 * a.i1:
        violations.append({"property": "j1>3*i1", "i": 1})
    j, ms = a.j, a.m_seq
    for i in range(1, a.N):
        if not ms[i] > j[i - 1] * ms[i - 1]:
            violations.append({"property": "1", "i": i})
    for i in range(3, a.N):
        if not ms[i] > _property6_bound(a, i):
            violations.append({"property": "6", "i": i})
    n, r = a.derived()
    for i in range(a.N - 1):
        if not n[i] - r[i] + ms[i + 1] > n[i]:
            violations.append({"property": "2", "i": i + 1})
    for i in range(1, a.N):
        if not r[i] < ms[i]:
            violations.append({"property": "3", "i": i + 1})
    for i in range(a.N - 1):
        if not n[i + 1] - r[i + 1] > n[i] - r[i]:
            violations.append({"property": "4", "i": i + 1})
    if a.N >= 3 and not n[2] - r[2] > n[1] - a.i1 * a.m:
        violations.append({"property": "5", "i": 3})
    for i in range(3, a.N):
        if not n[i] - r[i] > n[i - 1]:
            violations.append({"property": "5", "i": i + 1})
    for name, seq in (("m", ms), ("n", n)):
        if any(seq[i + 1] <= seq[i] for i in range(len(seq) - 1)):
            violations.append({"property": f"{name} increasing", "i": 0})
    return Verdict(not violations, tuple(violations))


def enumerate_addresses(scheme: str, bounds: dict):
    """Exhaustive, duplicate-free stream of valid addresses within bounds.

    thm24 bounds: m, N, m_max, and either fixed j or j_max.
    s313 bounds: m, i1, N, m_max, and either fixed j or j_max.
    """
    if scheme == "thm24":
        yield from _enumerate_thm24(bounds)
    elif scheme == "s313":
        yield from _enumerate_s313(bounds)
    else:
        raise DomainError(f"unknown scheme {scheme!r}")


def _j_choices(bounds: dict, count: int):
    if "j" in bounds:
        fixed = tuple(bounds["j"])
        if len(fixed) != count:
            return
        yield fixed
        return
    j_max = bounds.get("j_max", 2)
    yield from itertools.product(range(1, j_max + 1), repeat=count)


def _enumerate_thm24(bounds: dict):
    m, big_n, m_max = bounds["m"], bounds["N"], bounds["m_max"]
    if m > m_max:
        return
    for j in _j_choices(bounds, big_n - 1):
        for tail in itertools.product(range(1, m_max + 1), repeat=big_n - 1):
            m_seq = (m,) + tail
            for tuning in (False, True):
                if tuning and m_seq[-1] != j[-1] * m_seq[-2]:
                    continue
                addr = Address24(m, j, m_seq, tuning_tail=tuning)
                if validate_thm24(addr).valid:
                    yield addr


def _enumerate_s313(bounds: dict):
    m, i1, big_n, m_max = bounds["m"], bounds["i1"], bounds["N"], bounds["m_max"]
    if m > m_max:
        return
    for j in _j_choices(bounds, big_n):
        if j[0] <= 3 * i1:
            continue
        for tail in itertools.product(range(1, m_max + 1), repeat=big_n - 1):
            m_seq = (m,) + tail
            addr = Address313(m, i1, j, m_seq)
            if validate_lemma314(addr).valid:
                yield addr


def load_matrix_json(data) -> TransitionMatrix:
    """Plain JSON array-of-arrays."""
    return matrix(data)
