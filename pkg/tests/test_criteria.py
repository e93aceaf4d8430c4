from functools import lru_cache
from math import isqrt

import pytest

from splitsets import criteria
from splitsets.criteria import (
    CriterionError,
    construct_1mod8,
    construct_5mod8,
    construct_b13,
    criterion_b13,
    decide_by_search,
    dichotomy_check,
    divisibility_necessary,
    form_bounds,
    nonsingular_reduction,
    purely_singular_power,
    quadratic_form_check,
    quadratic_form_report,
    quotient_consistency,
)
from splitsets.numthy import primes_between
from splitsets.search import search_perfect
from splitsets.splitter import SplitterInstance, check_perfect
from splitsets.verdict import Outcome, Verdict


def naive_order(a, p):
    x, d = a % p, 1
    while x != 1:
        x = x * a % p
        d += 1
    return d


def verdict_well_formed(v: Verdict):
    if v.outcome is Outcome.NOT_EXISTS:
        assert v.violated
    if v.witness is not None:
        assert v.outcome is Outcome.EXISTS
        q = v.witness.q
        assert check_perfect(SplitterInstance(q, v.params["k1"], v.params["k2"]), v.witness)


def test_criterion_examples():
    assert criterion_b13(13).outcome is Outcome.NOT_EXISTS
    assert criterion_b13(13).params["6^((p-1)/4)"] == 8
    assert criterion_b13(149).outcome is Outcome.EXISTS
    v241 = criterion_b13(241)
    assert v241.outcome is Outcome.EXISTS
    assert v241.params["ord(-3/2)"] == 15 and v241.params["ord(2)"] == 24
    v17 = criterion_b13(17)
    assert v17.outcome is Outcome.NOT_EXISTS and v17.params["ord(-3/2)"] == 16
    for p in (13, 17, 149, 241):
        verdict_well_formed(criterion_b13(p))


@pytest.mark.parametrize("p", [2, 3, 7, 9, 11, 21, 25])
def test_criterion_preconditions(p):
    with pytest.raises(ValueError):
        criterion_b13(p)


def test_criterion_matches_direct_definitions():
    for p in primes_between(5, 3000):
        if p % 4 != 1:
            continue
        got = criterion_b13(p).outcome is Outcome.EXISTS
        if p % 8 == 5:
            quartics = {pow(x, 4, p) for x in range(1, p)}
            assert got == (6 % p in quartics), p
        else:
            c = -3 * pow(2, -1, p) % p
            assert got == (naive_order(c, p) % 2 == 1 and naive_order(2, p) % 4 == 0), p


def test_construct_5mod8_examples():
    assert construct_5mod8(5).elements == (1,)
    B = construct_5mod8(149)
    assert set(B) == {pow(x, 4, 149) for x in range(1, 149)} and len(B) == 37
    with pytest.raises(CriterionError):
        construct_5mod8(13)
    with pytest.raises(ValueError):
        construct_5mod8(241)


def test_construct_1mod8_examples():
    B = construct_1mod8(241)
    assert len(B) == 60 and check_perfect(SplitterInstance(241, 1, 3), B)
    with pytest.raises(CriterionError):
        construct_1mod8(17)
    with pytest.raises(ValueError):
        construct_1mod8(149)


def test_constructions_closed_under_minus_three_halves():
    for p in primes_between(5, 2000):
        if p % 4 != 1 or not criterion_b13(p).exists:
            continue
        B = construct_b13(p)
        c = -3 * pow(2, -1, p) % p
        assert {b * c % p for b in B} == set(B), p
        assert all((6 * i % p in B) != (-6 * i % p in B) for i in B)


def test_purely_singular_power_examples():
    v = purely_singular_power(2, 3, 1, 6)
    assert v.outcome is Outcome.EXISTS and v.witness.elements == (1,)
    v = purely_singular_power(2, 6, 1, 6)
    assert v.outcome is Outcome.NOT_EXISTS
    assert search_perfect(SplitterInstance(64, 1, 6)).outcome is Outcome.NOT_EXISTS
    assert purely_singular_power(2, 4, 1, 2).outcome is Outcome.UNKNOWN
    # odd prime: 3 | 9 = k1+k2+1, so only q = 9 can work
    assert purely_singular_power(3, 2, 2, 6).outcome is Outcome.EXISTS
    assert purely_singular_power(3, 4, 2, 6).outcome is Outcome.NOT_EXISTS
    # 5 = k1+k2+1 is excluded for odd p
    assert purely_singular_power(5, 2, 1, 3).outcome is Outcome.UNKNOWN
    for args in ((2, 3, 1, 6), (2, 6, 1, 6), (3, 4, 2, 6)):
        verdict_well_formed(purely_singular_power(*args))


def test_divisibility_examples():
    cons, v = divisibility_necessary(64, 1, 6)
    assert [(c.p, c.a, c.r, c.divisor, c.holds) for c in cons] == [(2, 1, 1, 8, True)]
    assert v.outcome is Outcome.UNKNOWN
    cons, v = divisibility_necessary(25, 1, 3)
    assert [(c.p, c.a, c.r, c.divisor) for c in cons] == [(5, 1, 1, 5)]
    assert v.outcome is Outcome.UNKNOWN
    cons, v = divisibility_necessary(10, 1, 4)
    # floor(1/5) + floor(4/5) != floor(5/5): nothing is implied at p = 5
    assert all(c.p != 5 for c in cons)
    # the p = 2 clause asks for 6 | 10; 10 is not 1 mod 5 in any case
    assert v.outcome is Outcome.NOT_EXISTS
    with pytest.raises(ValueError):
        divisibility_necessary(10, 0, 4)


def test_dichotomy_examples():
    assert dichotomy_check(81, 2, 6).outcome is Outcome.NOT_EXISTS
    assert dichotomy_check(18, 2, 6).outcome is Outcome.UNKNOWN
    assert dichotomy_check(35, 2, 6).outcome is Outcome.UNKNOWN
    verdict_well_formed(dichotomy_check(81, 2, 6))
    with pytest.raises(ValueError):
        dichotomy_check(25, 1, 3)  # 5 is prime
    with pytest.raises(ValueError):
        dichotomy_check(25, 1, 2)


@lru_cache(maxsize=None)
def searched(q, k1, k2):
    return decide_by_search(q, k1, k2)


def test_necessary_conditions_are_sound():
    # a necessary condition may never rule out an instance the search solves
    checked = 0
    for q in range(3, 201):
        for k2 in range(1, 7):
            for k1 in range(1, k2 + 1):
                if k1 + k2 >= q or searched(q, k1, k2) is not Outcome.EXISTS:
                    continue
                checked += 1
                _, v = divisibility_necessary(q, k1, k2)
                assert v.outcome is not Outcome.NOT_EXISTS, (q, k1, k2)
                k = k1 + k2
                if k >= 4 and not criteria.is_prime(k + 1):
                    assert dichotomy_check(q, k1, k2).outcome is not Outcome.NOT_EXISTS
                for p in primes_between(2, q):
                    n = 0
                    while p ** (n + 1) <= q and q % p ** (n + 1) == 0:
                        n += 1
                    if p**n == q:
                        assert purely_singular_power(p, n, k1, k2).outcome is not Outcome.NOT_EXISTS
    assert checked > 50


def test_necessary_conditions_fire_on_desk_instances():
    assert divisibility_necessary(81, 2, 6)[1].outcome is not Outcome.EXISTS
    assert dichotomy_check(81, 3, 5).outcome is Outcome.NOT_EXISTS
    assert purely_singular_power(2, 6, 3, 4).outcome is Outcome.NOT_EXISTS


def test_nonsingular_reduction_examples():
    v = nonsingular_reduction(25, 1, 3)
    assert v.outcome is Outcome.EXISTS
    assert search_perfect(SplitterInstance(25, 1, 3)).outcome is Outcome.EXISTS
    v = nonsingular_reduction(65, 1, 3)
    assert v.outcome is Outcome.NOT_EXISTS and "13" in v.violated
    assert nonsingular_reduction(5 * 149, 1, 3).outcome is Outcome.EXISTS
    with pytest.raises(ValueError):
        nonsingular_reduction(10, 1, 3)


def test_nonsingular_reduction_matches_search():
    for k1, k2 in ((1, 1), (1, 2), (1, 3), (2, 2), (1, 4)):
        for q in range(k2 + 2, 200):
            if any(q % d == 0 for d in range(2, k2 + 1)):
                continue
            v = nonsingular_reduction(q, k1, k2)
            assert v.outcome is searched(q, k1, k2), (q, k1, k2)


def test_quadratic_form_examples():
    assert quadratic_form_check(149)
    assert not quadratic_form_check(13)
    assert quadratic_form_check(5)
    with pytest.raises(ValueError):
        quadratic_form_check(17)


def test_quadratic_form_bounds_are_sufficient():
    # a much wider window finds nothing the bounded enumeration missed
    for p in primes_between(5, 3000):
        if p % 8 != 5:
            continue
        wide = isqrt(p) + 2
        found = any(
            a * x * x + b * x * y + c * y * y == p
            for a, b, c in criteria.QUADRATIC_FORMS
            for x in range(-wide, wide + 1)
            for y in range(-wide, wide + 1)
        )
        assert found == quadratic_form_check(p), p
        for form in criteria.QUADRATIC_FORMS:
            X, Y = form_bounds(form, p)
            assert X <= wide and Y <= wide


def test_quadratic_form_report_is_deterministic():
    a, b = quadratic_form_report(600), quadratic_form_report(600)
    assert a == b
    assert a["primes"] == len(a["rows"]) and a["agree"] + len(a["disagreements"]) == a["primes"]


def test_quotient_consistency_examples():
    assert quotient_consistency(5, 25, 1, 3)
    assert quotient_consistency(8, 8, 1, 6)

    def only_m(q):
        if q == 13:
            return Outcome.NOT_EXISTS
        raise AssertionError("should not be consulted")

    assert quotient_consistency(13, 169, 1, 3, decide=only_m)
    with pytest.raises(ValueError):
        quotient_consistency(5, 25, 1, 3, decide=lambda q: Outcome.UNKNOWN)
    with pytest.raises(ValueError):
        quotient_consistency(3, 25, 1, 3)


def test_quotient_consistency_on_desk_data():
    for k1, k2 in ((1, 1), (1, 2), (1, 3), (2, 2), (1, 5), (2, 4)):
        for n in range(2, 160):
            for m in range(2, n + 1):
                if n % m == 0:
                    assert quotient_consistency(m, n, k1, k2, decide=lambda q: searched(q, k1, k2))
