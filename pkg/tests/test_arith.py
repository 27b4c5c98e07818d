import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divconc.arith import (
    Factorization,
    build_sieve,
    classical,
    divisors,
    factorize,
    kernel_prefix,
    omega_below,
    regular_prime_chain,
    small_primes,
)
from divconc.errors import CapacityError

from oracles import divisors_naive, trial_division_primes


def test_sieve_small_values():
    t = build_sieve(10)
    assert t.spf[9] == 3
    assert t.spf[10] == 2
    assert t.spf[7] == 7


def test_sieve_limit_two():
    assert build_sieve(2).spf[2] == 2


def test_sieve_limit_out_of_range():
    with pytest.raises(CapacityError):
        build_sieve(1)
    with pytest.raises(CapacityError):
        build_sieve(10**8 + 1)


def test_sieve_prime_count_against_trial_division():
    t = build_sieve(10**5)
    count = int(np.count_nonzero(t.spf[2:] == np.arange(2, 10**5 + 1)))
    assert count == len(trial_division_primes(10**5))


def test_sieve_prime_count_one_million():
    t = build_sieve(10**6)
    count = int(np.count_nonzero(t.spf[2:] == np.arange(2, 10**6 + 1)))
    assert count == 78498  # frozen from the trial-division oracle


def test_factorize_basics():
    assert factorize(1).factors == ()
    assert factorize(12).factors == ((2, 2), (3, 1))
    assert factorize(2**10).factors == ((2, 10),)
    with pytest.raises(ValueError):
        factorize(0)


def test_factorize_sieve_matches_trial_division():
    t = build_sieve(10**5)
    for n in range(1, 10**5 + 1):
        assert factorize(n, t).factors == factorize(n).factors


def test_divisors_examples():
    assert divisors(factorize(12)) == [1, 2, 3, 4, 6, 12]
    assert divisors(factorize(1)) == [1]
    assert divisors(factorize(97)) == [1, 97]


def test_divisors_against_naive():
    t = build_sieve(2000)
    for n in range(1, 2001):
        assert divisors(factorize(n, t)) == divisors_naive(n)


def test_divisors_length_and_divide():
    t = build_sieve(10**4)
    for n in range(1, 10**4 + 1):
        f = factorize(n, t)
        divs = divisors(f)
        assert len(divs) == f.tau
        assert all(n % d == 0 for d in divs)
        assert divs == sorted(divs)


def test_divisors_capacity():
    primes = small_primes(100)[:21]
    n = math.prod(primes)
    f = Factorization(n=n, factors=tuple((p, 1) for p in primes))
    with pytest.raises(CapacityError):
        divisors(f)


def test_classical_examples():
    c = classical(factorize(12))
    assert (c.omega, c.big_omega, c.tau, c.mu) == (2, 3, 6, 0)
    assert (c.p_plus, c.p_minus) == (3, 2)
    c = classical(factorize(30))
    assert (c.omega, c.big_omega, c.tau, c.mu) == (3, 3, 8, -1)
    c = classical(factorize(1))
    assert (c.omega, c.big_omega, c.tau, c.mu) == (0, 0, 1, 1)
    assert (c.p_plus, c.p_minus) == (1, 1)


def test_mu_squared_iff_squarefree():
    t = build_sieve(3000)
    for n in range(1, 3001):
        f = factorize(n, t)
        assert (classical(f).mu ** 2 == 1) == f.is_squarefree


def test_kernel_prefix_examples():
    assert kernel_prefix(factorize(60), 2).value == 6
    assert kernel_prefix(factorize(30), 5).value == 30
    assert kernel_prefix(factorize(1), 3).value == 1


def test_kernel_prefix_monotone():
    t = build_sieve(2000)
    for n in range(1, 2001):
        f = factorize(n, t)
        prev = 1
        for k in range(0, f.omega + 2):
            v = kernel_prefix(f, k).value
            assert v % prev == 0
            step = v // prev
            if k >= 1 and k <= f.omega:
                assert step == f.primes[k - 1]
            else:
                assert step == 1
            prev = v
        assert kernel_prefix(f, f.omega + 5).value == f.radical


def test_omega_below():
    f = factorize(30)
    assert omega_below(f, 4) == 2
    assert omega_below(f, 1.5) == 0
    assert omega_below(f, 30) == 3


def test_regular_prime_chain_examples():
    assert not regular_prime_chain(factorize(12), 1, 10)
    assert regular_prime_chain(factorize(2 * 3 * 5), 4, 10)
    n = math.prod(small_primes(40)[:12])
    f = factorize(n)
    assert f.omega == 12
    # fifth prime is 11 and log log 11 < 1, so the chain fails at k = 5
    assert math.log(math.log(f.primes[4])) < 1.0
    assert not regular_prime_chain(f, 5, 12)


def test_regular_prime_chain_empty_range_vacuous():
    assert regular_prime_chain(factorize(6), 5, 2)
    assert not regular_prime_chain(factorize(4), 5, 2)  # still needs squarefree


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=10**12))
def test_factorize_roundtrip(n):
    f = factorize(n)
    prod = 1
    prev_p = 0
    for p, e in f.factors:
        assert p > prev_p and e >= 1
        prev_p = p
        prod *= p**e
    assert prod == n


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=10**5))
def test_divisor_product_pairing(n):
    divs = divisors(factorize(n))
    assert divs == divisors_naive(n)
