"""Cycle detection and the period function over Z_m^n.

Two independent routes produce periods.  The brute route simulates the
orbit of (1,0,...,0) with Brent's constant-memory cycle finder running on
a packed-integer representation of the whole tuple.  The structural route
assembles the answer from prime-power building blocks: the coprime core
of the length is settled by divisor refinement of an order-derived
multiple, prime powers scale by a factor of p per exponent for odd
non-Wieferich primes, and the remaining cases (modulus a power of two,
or a Wieferich prime base) are lifted one modulus step at a time, each
step deciding between "period stays" and "period gains a factor p".

A crosscheck mode runs both routes and raises on any disagreement; that
error is the signal that one of the structural facts failed on an
instance.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .errors import (
    CrosscheckMismatch,
    GuardExceeded,
    ResourceError,
    StepBudgetExceeded,
)
from .numtheory import (
    FACTORIZATION_LIMIT,
    factorize,
    is_prime,
    is_wieferich,
    multiplicative_order,
    order_of_two,
    p_adic_valuation,
)
from .residues import MODULUS_CAP, ResidueTuple, advance, basic_tuple

DEFAULT_STEP_BUDGET = 10_000_000

# Divisor refinement needs to factor the candidate multiple; beyond what
# trial division certifies we simulate instead of factoring.
REFINE_CANDIDATE_LIMIT = FACTORIZATION_LIMIT

METHODS = ("brute", "divisor_refine", "structural", "closed_form", "crosscheck")
PERIOD_METHODS = ("auto", "brute", "structural", "crosscheck")


@dataclass(frozen=True)
class CycleReport:
    """Exact minimal pre-period and cycle length of one orbit."""

    pre_period: int
    cycle_length: int
    cycle_entry: ResidueTuple


@dataclass(frozen=True)
class PeriodRecord:
    """One computed period value and how it was obtained."""

    m: int
    n: int
    period: int
    pre_period: int | None
    method: str
    elapsed: float
    flags: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "period": self.period,
            "pre_period": self.pre_period,
            "method": self.method,
            "flags": list(self.flags),
        }


def record_from_dict(d: dict) -> PeriodRecord:
    return PeriodRecord(
        m=int(d["m"]),
        n=int(d["n"]),
        period=int(d["period"]),
        pre_period=None if d.get("pre_period") is None else int(d["pre_period"]),
        method=str(d["method"]),
        elapsed=float(d.get("elapsed", 0.0)),
        flags=tuple(d.get("flags", ())),
    )


def _make_stepper(m: int, n: int):
    """One orbit step as arithmetic on a single packed integer.

    Each component occupies a private bit slot wide enough for 2m plus a
    guard bit, so a step is two shifts, two adds, and a SWAR conditional
    subtract, with no per-component Python loop.
    """
    w = m.bit_length() + 2
    half = 1 << (w - 1)
    mask = (1 << w) - 1
    ones = 0
    for i in range(n):
        ones |= 1 << (w * i)
    bias = (half - m) * ones
    top = w * (n - 1)

    def step(a: int) -> int:
        rot = (a >> w) | ((a & mask) << top)
        s = a + rot
        return s - m * (((s + bias) >> (w - 1)) & ones)

    def pack(components) -> int:
        a = 0
        for i, c in enumerate(components):
            a |= c << (w * i)
        return a

    def unpack(a: int) -> tuple[int, ...]:
        return tuple((a >> (w * i)) & mask for i in range(n))

    return step, pack, unpack


def detect_cycle(a: ResidueTuple, step_budget: int | None = None) -> CycleReport:
    """Exact minimal (pre-period, cycle length) of the orbit of `a`.

    Brent's search finds a cycle length and the entry point; divisor
    peeling then certifies minimality.  Running past the step budget
    raises; the budget never silently truncates an answer.
    """
    budget = DEFAULT_STEP_BUDGET if step_budget is None else int(step_budget)
    m, n = a.modulus, a.n
    step, pack, unpack = _make_stepper(m, n)
    x0 = pack(a.components)

    remaining = budget
    power = lam = 1
    tortoise = x0
    hare = step(x0)
    remaining -= 1
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power <<= 1
            lam = 0
        hare = step(hare)
        lam += 1
        remaining -= 1
        if remaining < 0:
            raise StepBudgetExceeded(budget, f"cycle detection over Z_{m}^{n}")

    # entry point: one pointer jumps lam ahead, both then walk in lockstep
    tortoise = x0
    hare = pack(advance(a, lam).components)
    mu = 0
    while tortoise != hare:
        tortoise = step(tortoise)
        hare = step(hare)
        mu += 1
        remaining -= 2
        if remaining < 0:
            raise StepBudgetExceeded(budget, f"pre-period recovery over Z_{m}^{n}")

    entry = ResidueTuple(unpack(tortoise), m)
    length = refine_to_period(entry, lam)
    return CycleReport(pre_period=mu, cycle_length=length, cycle_entry=entry)


def refine_to_period(a_on_cycle: ResidueTuple, multiple: int) -> int:
    """Minimal divisor P of `multiple` with the P-th iterate fixing the tuple.

    `multiple` must itself fix the tuple, i.e. be a multiple of its cycle
    length; prime factors are peeled off one at a time.
    """
    if not isinstance(multiple, int) or multiple < 1:
        raise ValueError(f"multiple must be a positive integer, got {multiple!r}")
    if advance(a_on_cycle, multiple) != a_on_cycle:
        raise ValueError(f"{multiple} does not return the tuple to itself")
    period = multiple
    if multiple > 1:
        for q, _ in factorize(multiple).factors:
            while period % q == 0 and advance(a_on_cycle, period // q) == a_on_cycle:
                period //= q
    return period


def candidate_multiple(p: int, n: int) -> int | None:
    """A certified multiple of the period of Z_p^n, or None if p divides n.

    With K the order of p mod n, p^K - 1 always works; when K is even and
    p^(K/2) = -1 mod n, the often smaller n*(p^(K/2) - 1) works too and
    the smaller of the two is returned.
    """
    if not is_prime(p):
        raise ValueError(f"need a prime, got {p!r}")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"length must be a positive integer, got {n!r}")
    if math.gcd(p, n) != 1:
        return None
    if n <= 2:
        return max(p - 1, 1)
    k = multiplicative_order(p % n, n)
    best = p**k - 1
    if k % 2 == 0 and pow(p, k // 2, n) == n - 1:
        best = min(best, n * (p ** (k // 2) - 1))
    return best


def preperiod_bound(m: int, n: int) -> int:
    """Safe upper bound for every pre-period over Z_m^n.

    Kernel chains of a linear map over Z_{p^e}^n stabilize within e*n
    steps, and the bound combines across coprime factors as a maximum.
    """
    e_max = max(e for _, e in factorize(m).factors)
    return e_max * n


def exact_preperiod(m: int, n: int, period: int, bound: int | None = None) -> int:
    """Smallest N whose iterate the given period returns to, by binary search.

    The predicate "iterate N+period equals iterate N" is monotone in N, so
    a binary search below the safe bound recovers the minimal N exactly.
    Raises if the claimed period fails at the bound, which doubles as a
    cheap self-check of every structurally computed period.
    """
    e = basic_tuple(m, n)
    hi = preperiod_bound(m, n) if bound is None else bound
    if advance(e, hi + period) != advance(e, hi):
        raise ValueError(f"{period} is not a period of the orbit tail of Z_{m}^{n}")
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if advance(e, mid + period) == advance(e, mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def period_bruteforce(m: int, n: int, step_budget: int | None = None) -> PeriodRecord:
    """Period of Z_m^n by plain simulation of the generating orbit."""
    if isinstance(m, int) and m > MODULUS_CAP:
        raise GuardExceeded(f"simulation needs tuples mod {m}, beyond the modulus cap")
    t0 = time.perf_counter()
    report = detect_cycle(basic_tuple(m, n), step_budget)
    return PeriodRecord(
        m=m,
        n=n,
        period=report.cycle_length,
        pre_period=report.pre_period,
        method="brute",
        elapsed=time.perf_counter() - t0,
    )


def _coprime_core_period(p: int, core: int, step_budget: int | None) -> tuple[int, str]:
    # the orbit generator is on its cycle after `core` steps over Z_p
    cand = candidate_multiple(p, core)
    if cand is not None and cand <= REFINE_CANDIDATE_LIMIT:
        entry = advance(basic_tuple(p, core), core)
        return refine_to_period(entry, cand), "divisor_refine"
    report = detect_cycle(basic_tuple(p, core), step_budget)
    return report.cycle_length, "brute"


def period_prime(p, n, *, step_budget=None, cache=None) -> PeriodRecord:
    """Period of Z_p^n for prime p.

    Strips the p-part of the length (each factor of p multiplies the
    period by p), settles the coprime core by divisor refinement, and
    special-cases the vanishing orbits of Z_2 on power-of-two lengths.
    """
    if not is_prime(p):
        raise ValueError(f"need a prime modulus, got {p!r}")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"length must be a positive integer, got {n!r}")
    if p > MODULUS_CAP:
        raise GuardExceeded(f"prime modulus {p} is beyond the modulus cap")
    if cache is not None:
        hit = cache.get(p, n)
        if hit is not None:
            return hit
    t0 = time.perf_counter()
    k = p_adic_valuation(n, p)
    core = n // p**k
    flags: tuple[str, ...] = ()
    if p == 2 and core == 1:
        # every orbit reaches zero, the cycle is the fixed point at zero
        period = 1
        method = "structural"
        flags = ("vanishing",)
    else:
        base, method = _coprime_core_period(p, core, step_budget)
        period = p**k * base
    pre = exact_preperiod(p, n, period)
    rec = PeriodRecord(p, n, period, pre, method, time.perf_counter() - t0, flags)
    if cache is not None:
        cache.put(rec)
    return rec


def _lifted_period(p, e, n, step_budget, cache) -> tuple[int, tuple[str, ...]]:
    # raise the modulus one power at a time; at each step the period either
    # stays or gains exactly one factor of p, and an order test on a cycle
    # entry decides which
    if p**e > MODULUS_CAP:
        raise GuardExceeded(
            f"empirical lifting needs tuples mod {p}^{e}, beyond the modulus cap"
        )
    flags = ["empirical-lifting"]
    if p != 2 and e > 3:
        flags.append("deep-lift-unverified")
    period = period_prime(p, n, step_budget=step_budget, cache=cache).period
    for k in range(1, e):
        modulus = p ** (k + 1)
        entry = advance(basic_tuple(modulus, n), (k + 1) * n)
        if advance(entry, period) != entry:
            period *= p
    return period, tuple(flags)


def period_prime_power(p, e, n, *, step_budget=None, cache=None) -> PeriodRecord:
    """Period of Z_{p^e}^n from the base period of Z_p^n.

    Odd non-Wieferich primes scale by p per exponent.  Powers of two on
    power-of-two lengths vanish, length 3 settles at 6 from the second
    power on, and everything else (base 2 in general, Wieferich bases) is
    lifted empirically one modulus step at a time.
    """
    if not is_prime(p):
        raise ValueError(f"need a prime base, got {p!r}")
    if not isinstance(e, int) or e < 1:
        raise ValueError(f"exponent must be a positive integer, got {e!r}")
    if e == 1:
        return period_prime(p, n, step_budget=step_budget, cache=cache)
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"length must be a positive integer, got {n!r}")
    m = p**e
    if cache is not None:
        hit = cache.get(m, n)
        if hit is not None:
            return hit
    t0 = time.perf_counter()
    flags: tuple[str, ...] = ()
    if p == 2 and n & (n - 1) == 0:
        period = 1
        flags = ("vanishing",)
    elif p == 2 and n == 3:
        period = 6  # the six-step cycle shape persists for every exponent above 1
    elif p != 2 and not is_wieferich(p):
        base = period_prime(p, n, step_budget=step_budget, cache=cache).period
        period = p ** (e - 1) * base
    else:
        period, flags = _lifted_period(p, e, n, step_budget, cache)
    pre = exact_preperiod(m, n, period) if m <= MODULUS_CAP else None
    rec = PeriodRecord(m, n, period, pre, "structural", time.perf_counter() - t0, flags)
    if cache is not None:
        cache.put(rec)
    return rec


def _structural_period(m, n, step_budget, cache) -> PeriodRecord:
    t0 = time.perf_counter()
    parts = [
        period_prime_power(p, e, n, step_budget=step_budget, cache=cache)
        for p, e in factorize(m).factors
    ]
    if len(parts) == 1:
        return parts[0]
    value = math.lcm(*(r.period for r in parts))
    flags = sorted(set().union(*(r.flags for r in parts)))
    pre = exact_preperiod(m, n, value) if m <= MODULUS_CAP else None
    return PeriodRecord(
        m, n, value, pre, "structural", time.perf_counter() - t0, tuple(flags)
    )


def period(m, n, method: str = "auto", *, step_budget=None, cache=None) -> PeriodRecord:
    """The period of Z_m^n by the requested route.

    "structural" assembles prime-power parts by lcm, "brute" simulates,
    "crosscheck" runs both and raises on any disagreement, and "auto"
    prefers the structural route but falls back to simulation when a
    structural part hits a resource guard.
    """
    if not isinstance(m, int) or m < 2:
        raise ValueError(f"modulus must be an integer >= 2, got {m!r}")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"length must be a positive integer, got {n!r}")
    if method not in PERIOD_METHODS:
        raise ValueError(f"method must be one of {PERIOD_METHODS}, got {method!r}")

    if method == "brute":
        return period_bruteforce(m, n, step_budget)
    if method == "structural":
        return _structural_period(m, n, step_budget, cache)
    if method == "auto":
        try:
            return _structural_period(m, n, step_budget, cache)
        except ResourceError:
            if m > MODULUS_CAP:
                raise  # simulation cannot step in either
            return period_bruteforce(m, n, step_budget)

    t0 = time.perf_counter()
    structural = _structural_period(m, n, step_budget, cache)
    brute = period_bruteforce(m, n, step_budget)
    if structural.period != brute.period:
        raise CrosscheckMismatch("period", structural, brute)
    if structural.pre_period is not None and structural.pre_period != brute.pre_period:
        raise CrosscheckMismatch("pre_period", structural, brute)
    return PeriodRecord(
        m,
        n,
        brute.period,
        brute.pre_period,
        "crosscheck",
        time.perf_counter() - t0,
        structural.flags,
    )


def closed_form(p: int, n: int) -> tuple[int, str] | None:
    """Closed-form period value for recognized length shapes, or None.

    Recognized: lengths 1 and 2 (the order of 2), lengths p and 2p for odd
    p, and lengths p^k(p^s - 1) and p^k(p^s + 1), the latter two requiring
    s > 1 when p = 2.  Length 3 for odd p is deliberately not recognized;
    the n3-formula campaign probes that case against simulation.
    """
    if not is_prime(p):
        raise ValueError(f"need a prime, got {p!r}")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"length must be a positive integer, got {n!r}")
    if p > 2:
        if n in (1, 2):
            return order_of_two(p), "order"
        if n == p:
            return p * order_of_two(p), "p"
        if n == 2 * p:
            return p * order_of_two(p), "2p"
    k = p_adic_valuation(n, p)
    t = n // p**k
    s_min = 2 if p == 2 else 1
    s = _power_exponent(p, t + 1)
    if s is not None and s >= s_min:
        return n, "p^k(p^s-1)"
    s = _power_exponent(p, t - 1)
    if s is not None and s >= s_min:
        return p**k * (p ** (2 * s) - 1), "p^k(p^s+1)"
    return None


def _power_exponent(p: int, x: int) -> int | None:
    # e >= 1 with p^e == x, else None
    if x < p:
        return None
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e if x == 1 else None


def estimated_brute_steps(m: int, n: int, period_value: int) -> int:
    """Conservative upper estimate of the steps a brute detection will take."""
    return 4 * (period_value + preperiod_bound(m, n))
