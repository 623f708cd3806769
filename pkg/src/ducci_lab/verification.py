"""Verification campaigns.

Each campaign checks one family of structural claims on a bounded grid
and reports per-instance outcomes.  Reports are deterministic for a given
set of limits: enumeration orders are fixed and any sampling uses the
seed recorded in the report.
"""

from __future__ import annotations

import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cache import PeriodCache
from .cycles import cycle_flags, in_cycle, index_components, cycle_set_size
from .errors import CharacterizationInapplicable, StepBudgetExceeded
from .numtheory import (
    is_prime,
    is_wieferich,
    multiplicative_order,
    order_of_two,
    p_adic_valuation,
    verify_binomial_lemmas,
)
from .periods import (
    DEFAULT_STEP_BUDGET,
    closed_form,
    estimated_brute_steps,
    period,
    period_bruteforce,
)
from .residues import ResidueTuple

# full per-tuple checks through the public verdict API stop at this space
# size; larger spaces get a seeded sample on top of the vectorized sweep
API_SWEEP_LIMIT = 65536
API_SAMPLE_SIZE = 512


@dataclass
class Instance:
    claim: str
    params: dict
    expected: object
    observed: object
    passed: bool
    skipped: bool = False

    def to_json_dict(self) -> dict:
        return {
            "claim": self.claim,
            "params": self.params,
            "expected": self.expected,
            "observed": self.observed,
            "pass": self.passed,
            "skipped": self.skipped,
        }


@dataclass
class VerificationReport:
    campaign: str
    seed: int = 0
    instances: list[Instance] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def summary(self) -> dict:
        failed = sum(1 for i in self.instances if not i.passed)
        skipped = sum(1 for i in self.instances if i.skipped)
        return {
            "total": len(self.instances),
            "passed": len(self.instances) - failed - skipped,
            "failed": failed,
            "skipped": skipped,
        }

    @property
    def all_passed(self) -> bool:
        return all(i.passed for i in self.instances)

    def to_json_dict(self) -> dict:
        return {
            "campaign": self.campaign,
            "seed": self.seed,
            "summary": self.summary,
            "notes": self.notes,
            "instances": [i.to_json_dict() for i in self.instances],
        }

    def format_text(self) -> str:
        lines = [f"campaign: {self.campaign} (seed {self.seed})"]
        for inst in self.instances:
            mark = "SKIP" if inst.skipped else ("PASS" if inst.passed else "FAIL")
            params = " ".join(f"{k}={v}" for k, v in inst.params.items())
            line = f"[{mark}] {inst.claim} {params}"
            if not inst.passed or inst.skipped:
                line += f" expected={inst.expected} observed={inst.observed}"
            lines.append(line)
        lines.extend(f"note: {note}" for note in self.notes)
        s = self.summary
        lines.append(
            f"summary: {s['passed']} passed, {s['failed']} failed, {s['skipped']} skipped"
        )
        return "\n".join(lines)


def _ok(claim: str, params: dict, expected, observed) -> Instance:
    return Instance(claim, params, expected, observed, expected == observed)


# ----------------------------------------------------------------------
# binomial congruences


def campaign_binomial_lemmas(primes=(2, 3, 5, 7), k_max=4, seed=0, **_) -> VerificationReport:
    report = VerificationReport("binomial-lemmas", seed)
    for p in primes:
        for check in verify_binomial_lemmas(p, k_max):
            report.instances.append(
                Instance(
                    claim=check.lemma,
                    params=check.params,
                    expected="congruence holds",
                    observed="ok" if check.passed else check.detail,
                    passed=check.passed,
                )
            )
    return report


# ----------------------------------------------------------------------
# multiplicative order of 2 under prime-power lifting


def campaign_order_lifting(primes=(3, 5, 7, 11, 13), k_max=4, seed=0, **_) -> VerificationReport:
    report = VerificationReport("order-lifting", seed)
    for p in primes:
        orders = {k: multiplicative_order(2, p**k) for k in range(1, k_max + 3)}
        for k in range(1, k_max + 1):
            report.instances.append(
                Instance(
                    claim="order-step",
                    params={"p": p, "k": k},
                    expected=f"{orders[k]} or {p * orders[k]}",
                    observed=orders[k + 1],
                    passed=orders[k + 1] in (orders[k], p * orders[k]),
                )
            )
            if orders[k + 1] == p * orders[k]:
                report.instances.append(
                    _ok(
                        "order-escalation",
                        {"p": p, "k": k},
                        p * orders[k + 1],
                        orders[k + 2],
                    )
                )
        if not is_wieferich(p):
            for k in range(1, k_max + 2):
                report.instances.append(
                    _ok(
                        "order-power-growth",
                        {"p": p, "k": k},
                        p ** (k - 1) * orders[1],
                        orders[k],
                    )
                )
    return report


# ----------------------------------------------------------------------
# period ladder under prime-power lifting


def campaign_ladder(
    primes=(2, 3, 5), k_max=2, n_max=10, step_budget=None, seed=0, **_
) -> VerificationReport:
    report = VerificationReport("ladder", seed)
    for p in primes:
        for n in range(1, n_max + 1):
            prev = period_bruteforce(p, n, step_budget).period
            for k in range(1, k_max + 1):
                cur = period_bruteforce(p ** (k + 1), n, step_budget).period
                report.instances.append(
                    Instance(
                        claim="period-ladder-step",
                        params={"p": p, "k": k, "n": n},
                        expected=f"{prev} or {p * prev}",
                        observed=cur,
                        passed=cur in (prev, p * prev),
                    )
                )
                prev = cur
    return report


# ----------------------------------------------------------------------
# structural route against plain simulation


def _svb_cell(args):
    m, n, budget = args
    structural = period(m, n, "structural", step_budget=budget)
    est = estimated_brute_steps(m, n, structural.period)
    if est > budget:
        return (m, n, structural.period, None, None, None, f"predicted {est} steps")
    try:
        brute = period_bruteforce(m, n, budget)
    except StepBudgetExceeded:
        return (m, n, structural.period, None, None, None, "step budget hit")
    return (
        m,
        n,
        structural.period,
        brute.period,
        structural.pre_period,
        brute.pre_period,
        None,
    )


def campaign_structural_vs_brute(
    m_max=50, n_max=12, step_budget=None, jobs=None, seed=0, **_
) -> VerificationReport:
    report = VerificationReport("structural-vs-brute", seed)
    budget = DEFAULT_STEP_BUDGET if step_budget is None else step_budget
    cells = [(m, n, budget) for m in range(2, m_max + 1) for n in range(1, n_max + 1)]
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_svb_cell, cells, chunksize=16))
    else:
        rows = [_svb_cell(cell) for cell in cells]
    skipped = 0
    for m, n, structural_p, brute_p, structural_pre, brute_pre, skip_reason in rows:
        if skip_reason is not None:
            skipped += 1
            report.instances.append(
                Instance(
                    claim="structural-equals-brute",
                    params={"m": m, "n": n},
                    expected=structural_p,
                    observed=skip_reason,
                    passed=True,
                    skipped=True,
                )
            )
            continue
        report.instances.append(
            Instance(
                claim="structural-equals-brute",
                params={"m": m, "n": n},
                expected=structural_p,
                observed=brute_p,
                passed=structural_p == brute_p,
            )
        )
        report.instances.append(
            _ok(
                "pre-period-agreement",
                {"m": m, "n": n},
                structural_pre,
                brute_pre,
            )
        )
    if skipped:
        report.notes.append(f"{skipped} cells skipped as too large for the step budget")
    return report


# ----------------------------------------------------------------------
# closed-form shapes against simulation


def campaign_closed_forms(
    primes=(2, 3, 5, 7, 11, 13), n_max=30, step_budget=None, seed=0, **_
) -> VerificationReport:
    report = VerificationReport("closed-forms", seed)
    budget = DEFAULT_STEP_BUDGET if step_budget is None else step_budget
    for p in primes:
        for n in range(1, n_max + 1):
            shape = closed_form(p, n)
            if shape is None:
                continue
            value, tag = shape
            if estimated_brute_steps(p, n, value) > budget:
                report.instances.append(
                    Instance(
                        claim="closed-form-equals-brute",
                        params={"p": p, "n": n, "tag": tag},
                        expected=value,
                        observed="skipped: too large for the step budget",
                        passed=True,
                        skipped=True,
                    )
                )
                continue
            brute = period_bruteforce(p, n, budget).period
            report.instances.append(
                Instance(
                    claim="closed-form-equals-brute",
                    params={"p": p, "n": n, "tag": tag},
                    expected=value,
                    observed=brute,
                    passed=value == brute,
                )
            )
    return report


# ----------------------------------------------------------------------
# length-3 probe: gcd form against lcm form


def campaign_n3_formula(p_max=23, step_budget=None, seed=0, **_) -> VerificationReport:
    """Probe the period at length 3 for odd primes.

    Both candidate closed forms, gcd(order, 6) and lcm(order, 6), are
    reported next to the simulated value.  This campaign never fails an
    instance; the outcome is the report itself.
    """
    report = VerificationReport("n3-formula", seed)
    gcd_misses: list[int] = []
    lcm_misses: list[int] = []
    for p in range(3, p_max + 1, 2):
        if not is_prime(p):
            continue
        order = order_of_two(p)
        g = math.gcd(order, 6)
        l = math.lcm(order, 6)
        brute = period_bruteforce(p, 3, step_budget).period
        matched = []
        if brute == g:
            matched.append("gcd")
        else:
            gcd_misses.append(p)
        if brute == l:
            matched.append("lcm")
        else:
            lcm_misses.append(p)
        report.instances.append(
            Instance(
                claim="n3-period-probe",
                params={"p": p, "order": order},
                expected={"gcd": g, "lcm": l},
                observed={"period": brute, "matched": matched},
                passed=True,
            )
        )
    if not lcm_misses:
        report.notes.append("lcm(order of 2, 6) matched the simulated period for every tested prime")
    else:
        report.notes.append(f"lcm(order of 2, 6) missed for p in {lcm_misses}")
    if gcd_misses:
        report.notes.append(
            f"discrepancy: the gcd(order of 2, 6) closed form fails for p in {gcd_misses}; "
            "it only matches where gcd and lcm coincide"
        )
    else:
        report.notes.append("gcd(order of 2, 6) matched every tested prime")
    return report


# ----------------------------------------------------------------------
# membership rules against exhaustive enumeration


def _rule_flags(p: int, n: int) -> np.ndarray:
    # vectorized replica of the rule-based verdict over a whole prime space
    size = p**n
    if p % 2 == 1 and n % 2 == 1:
        return np.ones(size, dtype=bool)
    r = p_adic_valuation(n, p)
    block = p**r
    count = n // block
    idx = np.arange(size, dtype=np.int64)
    ok = np.ones(size, dtype=bool)
    for j in range(block):
        total = np.zeros(size, dtype=np.int64)
        for i in range(count):
            pos = block * i + j
            digit = (idx // p ** (n - 1 - pos)) % p
            if i & 1:
                total -= digit
            else:
                total += digit
        ok &= (total % p) == 0
    return ok


def campaign_membership(
    primes=(2, 3, 5), space_limit=10**6, seed=0, **_
) -> VerificationReport:
    report = VerificationReport("membership", seed)
    rng = random.Random(seed)
    for p in primes:
        n = 1
        while p**n <= space_limit:
            size = p**n
            oracle = cycle_flags(p, n, guard=space_limit)
            rules = _rule_flags(p, n)
            mismatches = int(np.count_nonzero(oracle != rules))
            if size <= API_SWEEP_LIMIT:
                api_indices = range(size)
                api_mode = "full"
            else:
                api_indices = sorted(rng.sample(range(size), API_SAMPLE_SIZE))
                api_mode = f"sample[{API_SAMPLE_SIZE}]"
            api_mismatches = 0
            for idx in api_indices:
                a = ResidueTuple(index_components(idx, p, n), p)
                if in_cycle(a).in_cycle != bool(rules[idx]):
                    api_mismatches += 1
            report.instances.append(
                Instance(
                    claim="rule-equals-enumeration",
                    params={"p": p, "n": n, "tuples": size, "api_checks": api_mode},
                    expected={"mismatches": 0, "api_mismatches": 0},
                    observed={"mismatches": mismatches, "api_mismatches": api_mismatches},
                    passed=mismatches == 0 and api_mismatches == 0,
                )
            )
            n += 1
    return report


# ----------------------------------------------------------------------
# cycle-set cardinality formula against enumeration


def campaign_cardinality(
    primes=(2, 3, 5), space_limit=10**6, seed=0, **_
) -> VerificationReport:
    report = VerificationReport("cardinality", seed)
    for p in primes:
        n = 1
        while p**n <= space_limit:
            try:
                formula = cycle_set_size(p, n)
            except CharacterizationInapplicable:
                n += 1
                continue
            counted = int(cycle_flags(p, n, guard=space_limit).sum())
            report.instances.append(
                _ok("cycle-set-size", {"p": p, "n": n}, formula, counted)
            )
            n += 1
    return report


# ----------------------------------------------------------------------
# divisor monotonicity and order divisibility of the period function


def campaign_divisibility(m_max=60, n_max=10, step_budget=None, seed=0, **_) -> VerificationReport:
    report = VerificationReport("divisibility", seed)
    cache = PeriodCache()
    table = {
        (m, n): period(m, n, "auto", step_budget=step_budget, cache=cache).period
        for m in range(2, m_max + 1)
        for n in range(1, n_max + 1)
    }
    for m in range(2, m_max + 1):
        divisors = [d for d in range(2, m) if m % d == 0]
        if not divisors:
            continue
        for n in range(1, n_max + 1):
            failing = [d for d in divisors if table[(m, n)] % table[(d, n)]]
            report.instances.append(
                Instance(
                    claim="divisor-period-divides",
                    params={"m": m, "n": n},
                    expected="all divisor periods divide",
                    observed="ok" if not failing else f"failing divisors {failing}",
                    passed=not failing,
                )
            )
    return report


def campaign_order_divides(m_max=60, n_max=10, step_budget=None, seed=0, **_) -> VerificationReport:
    report = VerificationReport("order-divides", seed)
    cache = PeriodCache()
    for m in range(3, m_max + 1, 2):
        order = order_of_two(m)
        for n in range(1, n_max + 1):
            value = period(m, n, "auto", step_budget=step_budget, cache=cache).period
            report.instances.append(
                Instance(
                    claim="order-divides-period",
                    params={"m": m, "n": n, "order": order},
                    expected=0,
                    observed=value % order,
                    passed=value % order == 0,
                )
            )
    return report


# ----------------------------------------------------------------------
# registry and the period table helper


CAMPAIGNS = {
    "binomial-lemmas": campaign_binomial_lemmas,
    "order-lifting": campaign_order_lifting,
    "ladder": campaign_ladder,
    "structural-vs-brute": campaign_structural_vs_brute,
    "closed-forms": campaign_closed_forms,
    "n3-formula": campaign_n3_formula,
    "membership": campaign_membership,
    "cardinality": campaign_cardinality,
    "divisibility": campaign_divisibility,
    "order-divides": campaign_order_divides,
}


def run_campaign(name: str, **options) -> VerificationReport:
    try:
        fn = CAMPAIGNS[name]
    except KeyError:
        raise ValueError(
            f"unknown campaign {name!r}; available: {', '.join(sorted(CAMPAIGNS))}"
        ) from None
    options = {k: v for k, v in options.items() if v is not None}
    return fn(**options)


def _table_cell(args):
    m, n, method, budget = args
    return period(m, n, method, step_budget=budget)


def period_table(
    m_max: int,
    n_max: int,
    method: str = "auto",
    step_budget: int | None = None,
    jobs: int | None = None,
    cache: PeriodCache | None = None,
):
    """Period records for the full grid 2 <= m <= m_max, 1 <= n <= n_max."""
    cells = [(m, n) for m in range(2, m_max + 1) for n in range(1, n_max + 1)]
    records = []
    if jobs is None:
        jobs = 1
    pending = []
    for m, n in cells:
        hit = cache.get(m, n) if cache is not None else None
        if hit is not None:
            records.append(hit)
        else:
            pending.append((m, n, method, step_budget))
    if jobs > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            computed = list(pool.map(_table_cell, pending, chunksize=16))
    else:
        computed = [_table_cell(cell) for cell in pending]
    records.extend(computed)
    if cache is not None:
        for rec in computed:
            cache.put(rec)
    records.sort(key=lambda r: (r.m, r.n))
    return records
