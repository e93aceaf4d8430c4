import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitsets.numthy import (
    IndexContext,
    ModulusError,
    carmichael,
    factorize,
    is_prime,
    kth_power_residue,
    mult_order,
    primes_between,
    primitive_root,
    solve_linear,
)


def naive_is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def naive_order(a, q):
    x, d = a % q, 1
    while x != 1:
        x = x * a % q
        d += 1
    return d


def test_factorize_examples():
    assert factorize(1).factors == ()
    assert factorize(240).as_pairs() == [(2, 4), (3, 1), (5, 1)]
    assert factorize(2**31 - 1).as_pairs() == [(2147483647, 1)]


def test_factorize_semiprimes_and_powers():
    p, q = 4294967291, 2147483629  # primes near 2^32 and 2^31
    assert factorize(p * q).as_pairs() == [(q, 1), (p, 1)]
    assert factorize(1000003**2).as_pairs() == [(1000003, 2)]
    assert factorize(2**62).as_pairs() == [(2, 62)]
    with pytest.raises(ValueError):
        factorize(2**63)
    with pytest.raises(ValueError):
        factorize(0)


def test_factorize_random_63_bit():
    rng = random.Random(20240601)
    for _ in range(2000):
        n = rng.randrange(1, 2**63)
        f = factorize(n)
        assert f.value() == n
        assert all(is_prime(p) for p in f.primes)
        assert f.primes == sorted(f.primes)


def test_is_prime_matches_trial_division():
    assert [n for n in range(2000) if is_prime(n)] == [n for n in range(2000) if naive_is_prime(n)]
    # strong pseudoprimes to many small bases
    assert not is_prime(3215031751)
    assert not is_prime(3825123056546413051)
    assert is_prime(2**61 - 1)


def test_primes_between():
    assert primes_between(1, 30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_between(149, 149) == [149]
    assert primes_between(24, 28) == []
    assert primes_between(10, 5) == []
    assert len(primes_between(1, 100_000)) == 9592


@pytest.mark.parametrize("p,g", [(5, 2), (7, 3), (241, 7), (13, 2), (17, 3)])
def test_primitive_root(p, g):
    assert primitive_root(p) == g
    assert naive_order(g, p) == p - 1
    assert all(naive_order(h, p) < p - 1 for h in range(2, g))


def test_primitive_root_rejects():
    for bad in (2, 9, 1, 2**31 + 11):
        with pytest.raises(ModulusError):
            primitive_root(bad)


def test_ind_examples():
    assert IndexContext(5).ind(1) == 0
    assert IndexContext(5, 2).ind(4) == 2
    assert IndexContext(7, 3).ind(6) == 3
    with pytest.raises(ValueError):
        IndexContext(5).ind(10)
    with pytest.raises(ValueError):
        IndexContext(7, 2)  # 2 has order 3


def test_ind_round_trip_exhaustive():
    for p in primes_between(3, 10_000):
        ctx = IndexContext(p)
        g = ctx.g
        x = 1
        for e in range(p - 1):
            assert ctx.ind(x) == e
            x = x * g % p
        assert x == 1


def test_ind_bsgs_path():
    for p in (10007, 65537, 1000003, 2147483647):
        ctx = IndexContext(p, full_table_limit=0)
        assert ctx.uses_bsgs
        rng = random.Random(p)
        for _ in range(50):
            b = rng.randrange(1, p)
            assert pow(ctx.g, ctx.ind(b), p) == b
    small = IndexContext(101, full_table_limit=0)
    assert all(pow(small.g, small.ind(b), 101) == b for b in range(1, 101))


def test_mult_order_examples():
    assert mult_order(1, 97) == 1
    assert mult_order(2, 241) == 24
    assert mult_order(7, 17) == 16
    with pytest.raises(ValueError):
        mult_order(6, 9)


def test_mult_order_composite_moduli():
    for q in range(2, 300):
        lam = carmichael(q)
        for a in range(1, q):
            if all(a % p for p in factorize(q).primes):
                o = mult_order(a, q)
                assert o == naive_order(a, q)
                assert lam % o == 0


def test_modulus_bound():
    with pytest.raises(ModulusError):
        mult_order(3, 2**31)


def test_kth_power_residue_examples():
    assert kth_power_residue(1, 13, 4)
    assert not kth_power_residue(6, 13, 4)
    assert kth_power_residue(6, 149, 4)
    with pytest.raises(ValueError):
        kth_power_residue(6, 13, 5)
    with pytest.raises(ValueError):
        kth_power_residue(13, 13, 4)


def test_kth_power_residue_matches_index():
    for p in primes_between(3, 500):
        ctx = IndexContext(p)
        divisors = [d for d in range(2, p) if (p - 1) % d == 0]
        for a in range(1, p):
            i = ctx.ind(a)
            for d in divisors:
                assert kth_power_residue(a, p, d) == (i % d == 0)


def test_kth_power_residue_by_brute_force():
    p = 61
    for d in (2, 3, 4, 5, 6):
        powers = {pow(x, d, p) for x in range(1, p)}
        assert {a for a in range(1, p) if kth_power_residue(a, p, d)} == powers


@given(st.integers(1, 500), st.integers(-1000, 1000), st.integers(2, 500))
@settings(max_examples=300, deadline=None)
def test_solve_linear(m, x, q):
    got = solve_linear(m, x, q)
    assert got == [b for b in range(q) if (m * b - x) % q == 0]
