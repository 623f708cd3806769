"""Which tuples sit on cycles, and how the cycle set splits into orbits.

Rule-based membership verdicts cover the characterized cases: odd modulus
with odd length (everything recurs), odd modulus with even coprime length
(vanishing alternating sum), and prime moduli in general (block-wise
alternating sums).  Everything else falls back to honest simulation.
Exhaustive enumeration of small spaces provides the independent ground
truth the rules are validated against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CharacterizationInapplicable, GuardExceeded
from .numtheory import is_prime, p_adic_valuation
from .periods import detect_cycle
from .residues import ResidueTuple, alternating_sum, component_sum, sigma_profile

MEMBERSHIP_RULES = (
    "all_tuples_odd_odd",
    "sigma_zero",
    "even_mod2",
    "r_even",
    "enumeration",
)

CENSUS_GUARD = 10**6


@dataclass(frozen=True)
class MembershipVerdict:
    """Cycle-membership decision plus the rule that made it."""

    in_cycle: bool
    rule: str
    witness: dict | None = None

    def to_json_dict(self) -> dict:
        return {"in_cycle": self.in_cycle, "rule": self.rule, "witness": self.witness}


@dataclass(frozen=True)
class OrbitCensus:
    """Distribution of orbit sizes of the map acting on the cycle set."""

    m: int
    n: int
    census: dict[int, int]
    total_cycle_tuples: int

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "census": {str(size): count for size, count in sorted(self.census.items())},
            "total": self.total_cycle_tuples,
        }


def vanishes(a: ResidueTuple, step_budget: int | None = None) -> bool:
    """True when the orbit of `a` reaches the all-zero tuple."""
    report = detect_cycle(a, step_budget)
    return report.cycle_length == 1 and not any(report.cycle_entry.components)


def in_cycle(a: ResidueTuple, step_budget: int | None = None) -> MembershipVerdict:
    """Decide whether `a` lies on a cycle.

    Dispatch order: odd modulus with odd length is always on a cycle;
    modulus 2 uses block parity sums; odd prime moduli use block-wise
    alternating sums; other odd moduli with even coprime length use the
    plain alternating sum; everything else simulates until recurrence.
    """
    m, n = a.modulus, a.n
    if m % 2 == 1 and n % 2 == 1:
        return MembershipVerdict(True, "all_tuples_odd_odd")
    if m == 2:
        r = p_adic_valuation(n, 2)
        if r == 0:
            s = component_sum(a)
            return MembershipVerdict(
                s == 0, "even_mod2", None if s == 0 else {"component_sum": s}
            )
        return _block_sum_verdict(a, 2**r, "r_even")
    if m % 2 == 1 and n % 2 == 0:
        if is_prime(m):
            r = p_adic_valuation(n, m)
            if r == 0:
                return _sigma_verdict(a)
            return _block_sum_verdict(a, m**r, "r_even")
        if math.gcd(m, n) == 1:
            return _sigma_verdict(a)
    report = detect_cycle(a, step_budget)
    return MembershipVerdict(
        report.pre_period == 0, "enumeration", {"pre_period": report.pre_period}
    )


def _sigma_verdict(a: ResidueTuple) -> MembershipVerdict:
    s = alternating_sum(a)
    return MembershipVerdict(
        s == 0, "sigma_zero", None if s == 0 else {"alternating_sum": s}
    )


def _block_sum_verdict(a: ResidueTuple, block: int, rule: str) -> MembershipVerdict:
    profile = sigma_profile(a, block)
    for j, value in enumerate(profile):
        if value:
            return MembershipVerdict(False, rule, {"sigma_index": j, "sigma_value": value})
    return MembershipVerdict(True, rule)


def cycle_set_size(p: int, n: int) -> int:
    """Size of the cycle set of Z_p^n: p^(n - p^r) with r the valuation of n.

    Applicable when the odd part of n exceeds 1 (for p = 2) or when n is
    even (for odd p); other shapes raise.
    """
    if not is_prime(p):
        raise ValueError(f"need a prime, got {p!r}")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"length must be a positive integer, got {n!r}")
    r = p_adic_valuation(n, p)
    if p == 2:
        if n >> r == 1:
            raise CharacterizationInapplicable(
                "length must have an odd factor above 1 when the modulus is 2"
            )
    elif n % 2:
        raise CharacterizationInapplicable(
            "length must be even when the modulus is an odd prime"
        )
    return p ** (n - p**r)


def preimages(a: ResidueTuple) -> list[ResidueTuple]:
    """All tuples mapping onto `a`, ordered by their first component.

    Back-substitution forces every component from the first one; the wrap
    equation is the solvability condition.  For even lengths it reads
    "alternating sum is zero" and every first component works; for odd
    lengths it collapses to a linear congruence in the first component.
    """
    m, n = a.modulus, a.n
    sigma = alternating_sum(a)
    if n % 2 == 0:
        if sigma:
            return []
        starts = range(m)
    else:
        g = math.gcd(2, m)
        if sigma % g:
            return []
        mm = m // g
        x0 = (sigma // g) * pow(2 // g, -1, mm) % mm if mm > 1 else 0
        starts = [x0 + t * mm for t in range(g)]
    comps_a = a.components
    out = []
    for x0 in starts:
        comps = [x0]
        for i in range(n - 1):
            comps.append((comps_a[i] - comps[-1]) % m)
        out.append(ResidueTuple(tuple(comps), m))
    return out


def successor_table(m: int, n: int) -> np.ndarray:
    """Image of every tuple index under the map, lexicographic component order.

    Index i encodes the tuple whose components are the base-m digits of i,
    most significant digit first.
    """
    size = m**n
    idx = np.arange(size, dtype=np.int64)
    succ = np.zeros(size, dtype=np.int64)
    weights = [m ** (n - 1 - j) for j in range(n)]
    first = (idx // weights[0]) % m
    cur = first
    for j in range(n):
        nxt = (idx // weights[j + 1]) % m if j + 1 < n else first
        succ += ((cur + nxt) % m) * weights[j]
        cur = nxt
    return succ


def cycle_flags(m: int, n: int, guard: int = CENSUS_GUARD) -> np.ndarray:
    """Boolean mask over tuple indices: True exactly on the cycle set.

    Iteratively peels tuples with no remaining preimage; what survives is
    the set of tuples that recur.  This is the enumeration ground truth
    the rule-based verdicts are checked against.
    """
    if m**n > guard:
        raise GuardExceeded(f"tuple space of size {m}^{n} exceeds the guard {guard}")
    succ = successor_table(m, n)
    size = succ.shape[0]
    indeg = np.bincount(succ, minlength=size)
    alive = np.ones(size, dtype=bool)
    frontier = np.flatnonzero(indeg == 0)
    while frontier.size:
        alive[frontier] = False
        targets = succ[frontier]
        np.subtract.at(indeg, targets, 1)
        targets = np.unique(targets)
        frontier = targets[(indeg[targets] == 0) & alive[targets]]
    return alive


def index_components(idx: int, m: int, n: int) -> tuple[int, ...]:
    """Decode a tuple index back into components."""
    comps = [0] * n
    for j in range(n - 1, -1, -1):
        comps[j] = idx % m
        idx //= m
    return tuple(comps)


def orbit_census(m: int, n: int, guard: int = CENSUS_GUARD) -> OrbitCensus:
    """Partition the cycle set into orbits and tally their sizes.

    Members are visited in lexicographic order and each unvisited member
    starts a walk around its orbit, so the census is deterministic.
    """
    if not isinstance(m, int) or m < 2 or not isinstance(n, int) or n < 1:
        raise ValueError(f"need modulus >= 2 and length >= 1, got ({m!r}, {n!r})")
    alive = cycle_flags(m, n, guard)
    succ = successor_table(m, n).tolist()
    size = len(succ)
    visited = bytearray(size)
    census: dict[int, int] = {}
    total = 0
    for start in range(size):
        if not alive[start] or visited[start]:
            continue
        length = 0
        cur = start
        while True:
            visited[cur] = 1
            cur = succ[cur]
            length += 1
            if cur == start:
                break
        census[length] = census.get(length, 0) + 1
        total += length
    return OrbitCensus(m, n, census, total)
