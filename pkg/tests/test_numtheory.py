"""Number theory services: frozen values and closed-form cross-checks."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ducci_lab.errors import FactorizationLimitError, GuardExceeded
from ducci_lab.numtheory import (
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
from ducci_lab.residues import _pascal_row_mod

PRIMES_TO_50 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


# ------------------------------------------------------------ primality


def test_is_prime_small_table():
    want = set(PRIMES_TO_50)
    assert {x for x in range(51) if is_prime(x)} == want


def test_is_prime_large_values():
    assert is_prime(1000003)
    assert is_prime(10000019)
    assert not is_prime(1000003 * 10000019)
    assert is_prime(2**61 - 1)


# --------------------------------------------------------- factorization


def test_factorize_examples():
    assert factorize(10).factors == ((2, 1), (5, 1))
    assert factorize(243).factors == ((3, 5),)
    assert factorize(336).factors == ((2, 4), (3, 1), (7, 1))


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 10**6))
def test_factorize_remultiplies(m):
    fac = factorize(m)
    prod = 1
    for p, e in fac.factors:
        assert is_prime(p)
        prod *= p**e
    assert prod == m == fac.value


def test_factorize_large_semiprime():
    fac = factorize(1000003 * 10000019)
    assert fac.factors == ((1000003, 1), (10000019, 1))


def test_factorize_rejects_out_of_range():
    with pytest.raises(ValueError):
        factorize(1)
    with pytest.raises(FactorizationLimitError):
        factorize(10**14 + 1)


def test_factorization_type_validates():
    with pytest.raises(ValueError):
        PrimePowerFactorization(((5, 1), (2, 1)), 10)  # wrong order
    with pytest.raises(ValueError):
        PrimePowerFactorization(((4, 1),), 4)  # not prime
    with pytest.raises(ValueError):
        PrimePowerFactorization(((2, 1),), 6)  # wrong product


# ------------------------------------------------------------ valuations


def test_p_adic_valuation_examples():
    assert p_adic_valuation(12, 2) == 2
    assert p_adic_valuation(12, 5) == 0
    with pytest.raises(ValueError):
        p_adic_valuation(0, 2)


@given(st.integers(1, 10**9), st.integers(1, 10**9), st.sampled_from([2, 3, 5, 7, 11]))
def test_valuation_is_additive(a, b, p):
    assert p_adic_valuation(a * b, p) == p_adic_valuation(a, p) + p_adic_valuation(b, p)


def test_digit_sum_examples():
    assert digit_sum_base_p(10, 2) == 2
    assert digit_sum_base_p(0, 7) == 0
    for p in (2, 3, 5, 7):
        for k in range(1, 6):
            assert digit_sum_base_p(p**k, p) == 1


def test_factorial_valuation_examples():
    assert factorial_valuation(10, 2) == 8
    assert factorial_valuation(0, 5) == 0
    for p in (2, 3, 5, 7):
        assert factorial_valuation(p, p) == 1


def test_factorial_valuation_equals_floor_sum_exhaustively():
    for p in (2, 3, 5, 7, 11):
        for x in range(10**4 + 1):
            direct = 0
            q = p
            while q <= x:
                direct += x // q
                q *= p
            assert factorial_valuation(x, p) == direct


# ---------------------------------------------------------------- orders


def test_multiplicative_order_examples():
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(1, 12) == 1
    assert multiplicative_order(2, 9) == 6


def test_multiplicative_order_rejects_non_coprime():
    with pytest.raises(ValueError):
        multiplicative_order(6, 9)
    with pytest.raises(ValueError):
        multiplicative_order(2, 1)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 2000), st.data())
def test_order_methods_agree_and_are_minimal(modulus, data):
    from ducci_lab.numtheory import _carmichael_exponent

    a = data.draw(
        st.sampled_from([x for x in range(1, modulus) if math.gcd(x, modulus) == 1])
    )
    by_step = multiplicative_order(a, modulus, "stepping")
    by_descent = multiplicative_order(a, modulus, "descent")
    assert by_step == by_descent
    assert pow(a, by_step, modulus) == 1
    assert _carmichael_exponent(factorize(modulus)) % by_step == 0
    for q in {f for f, _ in factorize(by_step).factors} if by_step > 1 else ():
        assert pow(a, by_step // q, modulus) != 1


def test_order_of_two_requires_odd_above_two():
    assert order_of_two(7) == 3
    with pytest.raises(ValueError):
        order_of_two(8)
    with pytest.raises(ValueError):
        order_of_two(1)


def test_order_lifting_ladder():
    # one modulus power at a time the order stays or gains a factor p,
    # and once it grows it keeps growing
    for p in (3, 5, 7, 11, 13):
        orders = [multiplicative_order(2, p**k) for k in range(1, 7)]
        for k in range(len(orders) - 1):
            assert orders[k + 1] in (orders[k], p * orders[k])
        for k in range(len(orders) - 2):
            if orders[k + 1] == p * orders[k]:
                assert orders[k + 2] == p * orders[k + 1]
        if not is_wieferich(p):
            for k in range(len(orders)):
                assert orders[k] == p**k * orders[0]


# ------------------------------------------------------------- Wieferich


def test_wieferich_known_values():
    assert is_wieferich(1093)
    assert is_wieferich(3511)
    assert not is_wieferich(5)


def test_wieferich_rejects_bad_input():
    with pytest.raises(ValueError):
        is_wieferich(2)
    with pytest.raises(ValueError):
        is_wieferich(15)


def test_wieferich_equivalent_to_order_equality():
    candidates = [p for p in range(3, 300) if is_prime(p)] + [1093, 3511]
    for p in candidates:
        by_congruence = is_wieferich(p)
        by_orders = multiplicative_order(2, p) == multiplicative_order(2, p * p)
        assert by_congruence == by_orders


def test_wieferich_scan():
    assert wieferich_primes_below(10**4) == [1093, 3511]
    assert wieferich_primes_below(1093) == []
    assert wieferich_primes_below(0) == []
    with pytest.raises(GuardExceeded):
        wieferich_primes_below(10**9)


# ------------------------------------------------------------- binomials


def test_binomial_mod_examples():
    assert binomial_mod(4, 2, 10) == 6
    assert binomial_mod(9, 3, 9) == 3
    assert binomial_mod(100, 0, 17) == 1
    with pytest.raises(ValueError):
        binomial_mod(3, 5, 7)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 60), st.integers(2, 97))
def test_binomial_mod_matches_pascal_row(k, m):
    row = _pascal_row_mod(k, m)
    assert [binomial_mod(k, j, m) for j in range(k + 1)] == row


def test_row_valuation_from_lowest_digit():
    # the valuation of C(p^k, x) is k minus the lowest nonzero digit position
    for p in (2, 3, 5):
        for k in range(1, 5):
            pk = p**k
            for x in range(1, pk):
                digits = []
                t = x
                while t:
                    digits.append(t % p)
                    t //= p
                lowest = next(i for i, d in enumerate(digits) if d)
                assert p_adic_valuation(math.comb(pk, x), p) == k - lowest


# ------------------------------------------------------------ lemma suite


@pytest.mark.parametrize("p", [2, 3, 5])
def test_binomial_lemmas_all_pass(p):
    checks = verify_binomial_lemmas(p, 4)
    assert checks
    failures = [c for c in checks if not c.passed]
    assert not failures


def test_binomial_lemmas_cover_trivial_collapse():
    checks = verify_binomial_lemmas(5, 3)
    assert all(c.passed for c in checks)
    k1 = [c for c in checks if c.lemma == "collapse-mod-p2" and c.params["k"] == 1]
    assert len(k1) == 1


def test_binomial_lemmas_guards():
    with pytest.raises(GuardExceeded):
        verify_binomial_lemmas(3, 7)
    with pytest.raises(ValueError):
        verify_binomial_lemmas(4, 3)
