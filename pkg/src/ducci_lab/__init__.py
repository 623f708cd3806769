"""Cycles of sums of differences over Z_m^n: periods, membership, verification."""

from .cache import PeriodCache
from .cycles import (
    MembershipVerdict,
    OrbitCensus,
    cycle_set_size,
    in_cycle,
    orbit_census,
    preimages,
    vanishes,
)
from .errors import (
    CacheError,
    CharacterizationInapplicable,
    CrosscheckMismatch,
    DucciError,
    FactorizationLimitError,
    GuardExceeded,
    ResourceError,
    StepBudgetExceeded,
)
from .numtheory import (
    PrimePowerFactorization,
    binomial_mod,
    digit_sum_base_p,
    factorial_valuation,
    factorize,
    is_prime,
    is_wieferich,
    multiplicative_order,
    order_of_two,
    p_adic_valuation,
    verify_binomial_lemmas,
    wieferich_primes_below,
)
from .periods import (
    CycleReport,
    PeriodRecord,
    candidate_multiple,
    closed_form,
    detect_cycle,
    exact_preperiod,
    period,
    period_bruteforce,
    period_prime,
    period_prime_power,
    refine_to_period,
)
from .residues import (
    ResidueTuple,
    advance,
    alternating_sum,
    apply_H,
    apply_T,
    basic_tuple,
    component_sum,
    format_tuple,
    parse_tuple,
    sigma_profile,
)
from .verification import CAMPAIGNS, VerificationReport, period_table, run_campaign

__all__ = [
    "CAMPAIGNS",
    "CacheError",
    "CharacterizationInapplicable",
    "CrosscheckMismatch",
    "CycleReport",
    "DucciError",
    "FactorizationLimitError",
    "GuardExceeded",
    "MembershipVerdict",
    "OrbitCensus",
    "PeriodCache",
    "PeriodRecord",
    "PrimePowerFactorization",
    "ResidueTuple",
    "ResourceError",
    "StepBudgetExceeded",
    "VerificationReport",
    "advance",
    "alternating_sum",
    "apply_H",
    "apply_T",
    "basic_tuple",
    "binomial_mod",
    "candidate_multiple",
    "closed_form",
    "component_sum",
    "cycle_set_size",
    "detect_cycle",
    "digit_sum_base_p",
    "exact_preperiod",
    "factorial_valuation",
    "factorize",
    "format_tuple",
    "in_cycle",
    "is_prime",
    "is_wieferich",
    "multiplicative_order",
    "orbit_census",
    "order_of_two",
    "p_adic_valuation",
    "parse_tuple",
    "period",
    "period_bruteforce",
    "period_prime",
    "period_prime_power",
    "period_table",
    "preimages",
    "refine_to_period",
    "run_campaign",
    "sigma_profile",
    "vanishes",
    "verify_binomial_lemmas",
    "wieferich_primes_below",
]
