"""Integer-arithmetic services.

Factorization, p-adic valuations, multiplicative orders, Wieferich prime
detection, binomial coefficients mod m, and numeric verification of four
binomial-coefficient congruences that the period machinery leans on.

Everything here is a pure function; the only limits are explicit guards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import FactorizationLimitError, GuardExceeded

# Trial division tries wheel divisors up to 1e7, which certifies any
# cofactor of an input up to 1e14 as prime.  Larger inputs are rejected.
WHEEL_DIVISOR_LIMIT = 10**7
FACTORIZATION_LIMIT = WHEEL_DIVISOR_LIMIT**2

# Orders are found by direct stepping below this modulus, by group-exponent
# descent above it.  Tests drive both paths against each other.
ORDER_STEPPING_LIMIT = 10**5

SIEVE_LIMIT = 2 * 10**8

LEMMA_KMAX_GUARD = 6

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(x: int) -> bool:
    """Deterministic Miller-Rabin; the witness set covers inputs below 3.3e24."""
    if x < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if x % p == 0:
            return x == p
    d = x - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        y = pow(a, d, x)
        if y in (1, x - 1):
            continue
        for _ in range(r - 1):
            y = y * y % x
            if y == x - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimePowerFactorization:
    """m as an ordered product of prime powers."""

    factors: tuple[tuple[int, int], ...]
    value: int

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple((int(p), int(e)) for p, e in self.factors))
        prod = 1
        prev = 1
        for p, e in self.factors:
            if p <= prev or e < 1 or not is_prime(p):
                raise ValueError(f"invalid factor ({p}, {e}) in factorization of {self.value}")
            prev = p
            prod *= p**e
        if prod != self.value or self.value < 2:
            raise ValueError(f"factors multiply to {prod}, not {self.value}")

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def factorize(m: int) -> PrimePowerFactorization:
    """Unique factorization by wheel trial division.  Deterministic."""
    if not isinstance(m, int) or m < 2:
        raise ValueError(f"can only factorize integers >= 2, got {m!r}")
    if m > FACTORIZATION_LIMIT:
        raise FactorizationLimitError(
            f"{m} exceeds the trial-division limit of {FACTORIZATION_LIMIT}"
        )
    value = m
    factors = []
    for p in (2, 3, 5):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)  # steps between integers coprime to 2*3*5
    i = 0
    while d * d <= m and d <= WHEEL_DIVISOR_LIMIT:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            factors.append((d, e))
        d += wheel[i]
        i = (i + 1) & 7
    if m > 1:
        # no divisor up to 1e7 and m <= 1e14, so the cofactor is prime
        factors.append((m, 1))
    factors.sort()
    return PrimePowerFactorization(tuple(factors), value)


def p_adic_valuation(x: int, p: int) -> int:
    """Largest e with p^e dividing x.  Rejects x = 0 (the valuation is infinite)."""
    if not isinstance(x, int) or x < 1:
        raise ValueError(f"valuation needs a positive integer, got {x!r}")
    if not isinstance(p, int) or p < 2:
        raise ValueError(f"valuation base must be at least 2, got {p!r}")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def digit_sum_base_p(x: int, p: int) -> int:
    """Sum of the base-p digits of x."""
    if not isinstance(x, int) or x < 0:
        raise ValueError(f"digit sum needs a nonnegative integer, got {x!r}")
    if not isinstance(p, int) or p < 2:
        raise ValueError(f"base must be at least 2, got {p!r}")
    s = 0
    while x:
        s += x % p
        x //= p
    return s


def factorial_valuation(x: int, p: int) -> int:
    """Valuation of x! at the prime p, via the digit-sum closed form.

    Equals sum_{i>=1} floor(x / p^i); the test suite checks the two
    expressions against each other.
    """
    if not isinstance(x, int) or x < 0:
        raise ValueError(f"factorial valuation needs a nonnegative integer, got {x!r}")
    return (x - digit_sum_base_p(x, p)) // (p - 1)


def _carmichael_exponent(fac: PrimePowerFactorization) -> int:
    lam = 1
    for p, e in fac.factors:
        if p == 2:
            piece = 1 if e == 1 else 2 if e == 2 else 1 << (e - 2)
        else:
            piece = (p - 1) * p ** (e - 1)
        lam = math.lcm(lam, piece)
    return lam


def _order_by_stepping(a: int, modulus: int) -> int:
    x = a
    k = 1
    while x != 1:
        x = x * a % modulus
        k += 1
    return k


def _order_by_descent(a: int, modulus: int) -> int:
    lam = _carmichael_exponent(factorize(modulus))
    k = lam
    if lam > 1:
        for q, _ in factorize(lam).factors:
            while k % q == 0 and pow(a, k // q, modulus) == 1:
                k //= q
    return k


def multiplicative_order(a: int, modulus: int, method: str = "auto") -> int:
    """Least k >= 1 with a^k = 1 mod modulus.  Requires gcd(a, modulus) = 1."""
    if not isinstance(modulus, int) or modulus < 2:
        raise ValueError(f"modulus must be at least 2, got {modulus!r}")
    a %= modulus
    if math.gcd(a, modulus) != 1:
        raise ValueError(f"{a} is not invertible mod {modulus}")
    if method == "auto":
        method = "stepping" if modulus <= ORDER_STEPPING_LIMIT else "descent"
    if method == "stepping":
        return _order_by_stepping(a, modulus)
    if method == "descent":
        return _order_by_descent(a, modulus)
    raise ValueError(f"unknown order method {method!r}")


def order_of_two(m: int) -> int:
    """Order of 2 mod m, defined for odd m > 2."""
    if m <= 2 or m % 2 == 0:
        raise ValueError(f"order of 2 needs an odd modulus above 2, got {m!r}")
    return multiplicative_order(2, m)


def is_wieferich(p: int) -> bool:
    """True when 2^(p-1) = 1 mod p^2.  Only odd primes are accepted."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"need an odd prime, got {p!r}")
    return pow(2, p - 1, p * p) == 1


def wieferich_primes_below(limit: int) -> list[int]:
    """All Wieferich primes below `limit`, by sieve plus direct test."""
    if not isinstance(limit, int) or limit < 0:
        raise ValueError(f"limit must be a nonnegative integer, got {limit!r}")
    if limit > SIEVE_LIMIT:
        raise GuardExceeded(f"scan limit {limit} exceeds the sieve guard {SIEVE_LIMIT}")
    if limit <= 3:
        return []
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for q in range(2, math.isqrt(limit - 1) + 1):
        if sieve[q]:
            sieve[q * q :: q] = b"\x00" * len(range(q * q, limit, q))
    return [p for p in range(3, limit, 2) if sieve[p] and pow(2, p - 1, p * p) == 1]


def binomial_mod(n: int, k: int, modulus: int) -> int:
    """C(n, k) mod modulus, computed exactly."""
    if not isinstance(n, int) or not isinstance(k, int) or k < 0 or n < 0:
        raise ValueError(f"need nonnegative integers, got ({n!r}, {k!r})")
    if k > n:
        raise ValueError(f"cannot choose {k} from {n}")
    if not isinstance(modulus, int) or modulus < 1:
        raise ValueError(f"modulus must be positive, got {modulus!r}")
    return math.comb(n, k) % modulus


@dataclass(frozen=True)
class LemmaCheck:
    """Outcome of one congruence-family instance."""

    lemma: str
    params: dict
    passed: bool
    detail: str = ""


def _row_valuations(p: int, k: int) -> list[int]:
    # valuations of the full binomial row at exponent p^k, from exact entries
    pk = p**k
    vals = [0] * (pk + 1)
    c = 1
    for j in range(1, pk + 1):
        c = c * (pk - j + 1) // j
        v = 0
        t = c
        while t % p == 0:
            t //= p
            v += 1
        vals[j] = v
    return vals


def _check_row_support(p: int, k_max: int) -> list[LemmaCheck]:
    # entries of row p^k not divisible by p^s sit exactly on multiples of
    # p^(k-s+1); checked for 1 <= s <= k (s = 0 is degenerate)
    checks = []
    for k in range(1, k_max + 1):
        pk = p**k
        vals = _row_valuations(p, k)
        for s in range(1, k + 1):
            stride = p ** (k - s + 1)
            expected = list(range(0, pk + 1, stride))
            observed = [j for j, v in enumerate(vals) if v < s]
            ok = expected == observed
            checks.append(
                LemmaCheck(
                    lemma="row-support",
                    params={"p": p, "k": k, "s": s},
                    passed=ok,
                    detail="" if ok else f"expected {expected[:6]}..., got {observed[:6]}...",
                )
            )
    return checks


def _check_shift_congruence(p: int, k_max: int) -> list[LemmaCheck]:
    # C(qn, j) = C(qn/p, j/p) mod p^v_p(n), with the convention that the
    # right side is 0 when p does not divide j
    lengths = sorted({p, 2 * p, 3 * p, p * p} | ({p**3} if p**3 <= 64 else set()))
    checks = []
    for n in lengths:
        pv = p ** p_adic_valuation(n, p)
        for q in (1, 2, 3):
            if q * n > 420:
                continue
            failures = []
            for j in range(q * n + 1):
                lhs = math.comb(q * n, j) % pv
                rhs = math.comb(q * n // p, j // p) % pv if j % p == 0 else 0
                if lhs != rhs:
                    failures.append((j, lhs, rhs))
            checks.append(
                LemmaCheck(
                    lemma="shift-congruence",
                    params={"p": p, "n": n, "q": q},
                    passed=not failures,
                    detail="" if not failures else f"failing j: {failures[:4]}",
                )
            )
    return checks


def _check_row_collapse_mod_p2(p: int, k_max: int) -> list[LemmaCheck]:
    # C(p^k, m p^(k-1)) = C(p, m) mod p^2
    checks = []
    mod = p * p
    for k in range(1, k_max + 1):
        failures = []
        for m in range(p + 1):
            lhs = math.comb(p**k, m * p ** (k - 1)) % mod
            rhs = math.comb(p, m) % mod
            if lhs != rhs:
                failures.append((m, lhs, rhs))
        checks.append(
            LemmaCheck(
                lemma="collapse-mod-p2",
                params={"p": p, "k": k},
                passed=not failures,
                detail="" if not failures else f"failing m: {failures[:4]}",
            )
        )
    return checks


def _check_row_collapse_mod_p3(p: int, k_max: int) -> list[LemmaCheck]:
    # C(p^k, m p^(k-2)) = C(p^2, m) mod p^3, for k >= 2
    checks = []
    mod = p**3
    for k in range(2, k_max + 1):
        failures = []
        for m in range(p * p + 1):
            lhs = math.comb(p**k, m * p ** (k - 2)) % mod
            rhs = math.comb(p * p, m) % mod
            if lhs != rhs:
                failures.append((m, lhs, rhs))
        checks.append(
            LemmaCheck(
                lemma="collapse-mod-p3",
                params={"p": p, "k": k},
                passed=not failures,
                detail="" if not failures else f"failing m: {failures[:4]}",
            )
        )
    return checks


def verify_binomial_lemmas(p: int, k_max: int) -> list[LemmaCheck]:
    """Check the four binomial congruence families numerically.

    Exact big-integer binomials are the only arithmetic used, so a failed
    instance points at the statement, not at clever modular shortcuts.
    Failures are reported per instance instead of aborting.
    """
    if not is_prime(p):
        raise ValueError(f"need a prime, got {p!r}")
    if not 1 <= k_max <= LEMMA_KMAX_GUARD:
        raise GuardExceeded(f"k_max must be in [1, {LEMMA_KMAX_GUARD}], got {k_max}")
    checks = []
    checks += _check_row_support(p, k_max)
    checks += _check_shift_congruence(p, k_max)
    checks += _check_row_collapse_mod_p2(p, k_max)
    checks += _check_row_collapse_mod_p3(p, k_max)
    return checks
