"""Existence and nonexistence rules for perfect splitter sets.

Every public function returns a :class:`Verdict` whose ``provenance`` is a
stable identifier. Necessary conditions can only ever answer NOT_EXISTS or
UNKNOWN; the B[-1,3](p) criterion is a full characterisation and never
answers UNKNOWN.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt, lcm
from typing import Callable

from .factorization import (
    coset_lift,
    subgroup_closure,
    subgroup_reduce,
)
from .numthy import (
    IndexContext,
    factorize,
    inverse,
    is_prime,
    kth_power_residue,
    mult_order,
)
from .search import SearchConfig, search_perfect
from .splitter import CandidateSet, InstanceError, SplitterInstance, check_perfect
from .verdict import Outcome, Verdict

QUARTIC_5MOD8 = "quartic-residue-5mod8"
ORDER_1MOD8 = "order-criterion-1mod8"
CONGRUENCE = "congruence-necessary"
PURELY_SINGULAR_POWER = "purely-singular-power"
DIVISOR_NECESSARY = "divisor-necessary"
DICHOTOMY = "composite-dichotomy"
NONSINGULAR_REDUCTION = "nonsingular-prime-reduction"
SEARCH = "search"


class CriterionError(ValueError):
    """A construction was requested for a prime where no perfect set exists."""


def _require_b13_prime(p: int) -> None:
    if p <= 3 or not is_prime(p):
        raise ValueError(f"{p} is not a prime above 3")
    if p % 4 != 1:
        raise ValueError(f"p={p} is not 1 mod 4")


def congruence_check(q: int, k1: int, k2: int) -> Verdict:
    """A perfect set needs q = 1 (mod k1+k2)."""
    k = k1 + k2
    if (q - 1) % k:
        return Verdict(
            Outcome.NOT_EXISTS, CONGRUENCE, {"q": q, "k1": k1, "k2": k2},
            violated=f"q mod {k} = {q % k}, not 1",
        )
    return Verdict(Outcome.UNKNOWN, CONGRUENCE, {"q": q, "k1": k1, "k2": k2})


def criterion_b13(p: int) -> Verdict:
    """Decide whether a perfect B[-1,3](p) set exists, for primes p = 1 mod 4.

    p = 5 (mod 8): exists iff 6 is a quartic residue.
    p = 1 (mod 8): exists iff -3/2 has odd order and 4 divides the order of 2.
    """
    _require_b13_prime(p)
    if p % 8 == 5:
        r = pow(6, (p - 1) // 4, p)
        params = {"p": p, "6^((p-1)/4)": r}
        if r == 1:
            return Verdict(Outcome.EXISTS, QUARTIC_5MOD8, params)
        return Verdict(
            Outcome.NOT_EXISTS, QUARTIC_5MOD8, params,
            violated="6 is not a quartic residue",
        )
    c = -3 * inverse(2, p) % p
    o_c = mult_order(c, p)
    o2 = mult_order(2, p)
    params = {"p": p, "ord(-3/2)": o_c, "ord(2)": o2}
    if o_c % 2 == 0:
        return Verdict(Outcome.NOT_EXISTS, ORDER_1MOD8, params, violated="ord(-3/2) is even")
    if o2 % 4:
        return Verdict(Outcome.NOT_EXISTS, ORDER_1MOD8, params, violated="4 does not divide ord(2)")
    return Verdict(Outcome.EXISTS, ORDER_1MOD8, params)


def _checked(inst: SplitterInstance, B: CandidateSet) -> CandidateSet:
    res = check_perfect(inst, B)
    if not res:
        raise AssertionError(f"construction for q={inst.q} failed verification: {res.reason}")
    return B


def construct_5mod8(p: int) -> CandidateSet:
    """The quartic residues mod p, a perfect B[-1,3](p) set when 6 is one of them."""
    if p % 8 != 5:
        raise ValueError(f"p={p} is not 5 mod 8")
    v = criterion_b13(p)
    if not v.exists:
        raise CriterionError(f"no perfect B[-1,3]({p}) set: {v.violated}")
    h = IndexContext(p).power(4)
    residues = []
    x = 1
    for _ in range((p - 1) // 4):
        residues.append(x)
        x = x * h % p
    B = CandidateSet.of(residues, p)
    return _checked(SplitterInstance(p, 1, 3), B)


def _orbits_of(c: int, D: list[int], p: int) -> list[list[int]]:
    cyc = subgroup_closure([c], p)
    seen: set[int] = set()
    orbits = []
    for x in D:
        if x in seen:
            continue
        orb = sorted(x * y % p for y in cyc)
        seen.update(orb)
        orbits.append(orb)
    return orbits


def subgroup_factor_1mod8(p: int) -> list[int]:
    """B1 with [-1,3]* . B1 = <-1, 2, 3>, built from D = <6, -2/3>.

    If -1 is not in D then B1 = D. Otherwise D = B1 u -B1 where B1 keeps,
    from each pair of (-2/3)-orbits {O, -O}, the orbit holding the smaller
    residue; this keeps B1 closed under -2/3 (and so under -3/2).
    """
    c = -2 * inverse(3, p) % p
    D = subgroup_closure([6, c], p)
    if p - 1 not in set(D):
        return D
    B1: list[int] = []
    taken: set[int] = set()
    # orbits arrive ordered by least element, so the first of each pair wins
    for orb in _orbits_of(c, D, p):
        if orb[0] in taken:
            continue
        taken.update(p - x for x in orb)
        B1.extend(orb)
    return sorted(B1)


def construct_1mod8(p: int) -> CandidateSet:
    """Perfect B[-1,3](p) set for p = 1 (mod 8) by factoring <-1,2,3> and lifting."""
    if p % 8 != 1:
        raise ValueError(f"p={p} is not 1 mod 8")
    v = criterion_b13(p)
    if not v.exists:
        raise CriterionError(f"no perfect B[-1,3]({p}) set: {v.violated}")
    inst = SplitterInstance(p, 1, 3)
    H = subgroup_reduce(inst)
    return _checked(inst, coset_lift(inst, subgroup_factor_1mod8(p), H))


def construct_b13(p: int) -> CandidateSet:
    _require_b13_prime(p)
    return construct_5mod8(p) if p % 8 == 5 else construct_1mod8(p)


def purely_singular_power(p: int, n: int, k1: int, k2: int) -> Verdict:
    """Prime-power moduli q = p^n with p | k1+k2+1: a perfect set forces q = k1+k2+1.

    For p = 2 this covers every purely singular power of two. Outside the
    hypotheses the rule says nothing and returns UNKNOWN.
    """
    k = k1 + k2
    params = {"p": p, "n": n, "k1": k1, "k2": k2}
    applies = (
        is_prime(p) and n >= 1 and 1 <= k1 <= k2 and k >= 4
        and (p == 2 or ((k + 1) % p == 0 and p != k + 1))
    )
    if not applies:
        return Verdict(Outcome.UNKNOWN, PURELY_SINGULAR_POWER, params)
    q = p**n
    if q != k + 1:
        return Verdict(
            Outcome.NOT_EXISTS, PURELY_SINGULAR_POWER, params,
            violated=f"{p}^{n} = {q} != k1+k2+1 = {k + 1}",
        )
    inst = SplitterInstance(q, k1, k2)
    return Verdict(Outcome.EXISTS, PURELY_SINGULAR_POWER, params, witness=_checked(inst, CandidateSet((1,), q)))


@dataclass(frozen=True)
class DivisorConstraint:
    p: int
    a: int
    r: int
    divisor: int
    holds: bool


def divisibility_necessary(m: int, k1: int, k2: int) -> tuple[list[DivisorConstraint], Verdict]:
    """Divisors a(k1+k2)+r that m must have if a perfect set mod m exists.

    For each prime p | m, each a | p-1 and each 1 <= r <= a with
    gcd(a(k1+k2), r) = 1, p | a(k1+k2)+r and
    floor(k1/p) + floor(k2/p) = floor((k1+k2)/p), the number a(k1+k2)+r
    must divide m. All the clauses are treated as hypotheses.
    """
    if k1 < 1 or k2 < 1:
        raise ValueError("divisibility conditions need k1, k2 >= 1")
    k = k1 + k2
    out: list[DivisorConstraint] = []
    for p in factorize(m).primes:
        if k1 // p + k2 // p != k // p:
            continue
        for a in factorize(p - 1).divisors():
            for r in range(1, a + 1):
                if gcd(a * k, r) != 1 or (a * k + r) % p:
                    continue
                d = a * k + r
                out.append(DivisorConstraint(p, a, r, d, m % d == 0))
    params = {"m": m, "k1": k1, "k2": k2}
    failed = [c for c in out if not c.holds]
    if failed:
        c = failed[0]
        return out, Verdict(
            Outcome.NOT_EXISTS, DIVISOR_NECESSARY, params,
            violated=f"{c.divisor} does not divide {m} (p={c.p}, a={c.a}, r={c.r})",
        )
    return out, Verdict(Outcome.UNKNOWN, DIVISOR_NECESSARY, params)


def dichotomy_check(m: int, k1: int, k2: int) -> Verdict:
    """For composite k1+k2+1: either it is coprime to m or it divides m exactly once over."""
    k = k1 + k2
    n = k + 1
    if k1 < 1 or k2 < k1 or k < 4:
        raise ValueError("needs 1 <= k1 <= k2 and k1 + k2 >= 4")
    if is_prime(n):
        raise ValueError(f"k1+k2+1 = {n} is prime")
    params = {"m": m, "k1": k1, "k2": k2}
    if gcd(n, m) == 1:
        return Verdict(Outcome.UNKNOWN, DICHOTOMY, params)
    if m % n == 0 and gcd(n, m // n) == 1:
        return Verdict(Outcome.UNKNOWN, DICHOTOMY, params)
    return Verdict(
        Outcome.NOT_EXISTS, DICHOTOMY, params,
        violated=f"gcd({n}, {m}) > 1 but {m} is not {n} times a number coprime to {n}",
    )


def decide_prime(p: int, k1: int, k2: int, node_limit: int | None = None) -> Verdict:
    """Existence of a perfect B[-k1,k2](p) set for a prime p > k2."""
    v = congruence_check(p, k1, k2)
    if not v.outcome.decided:
        if (k1, k2) == (1, 3):
            v = criterion_b13(p)
        else:
            res = search_perfect(SplitterInstance(p, k1, k2), SearchConfig(node_limit=node_limit))
            v = Verdict(res.outcome, SEARCH, {"q": p, "k1": k1, "k2": k2, "nodes": res.nodes},
                        witness=res.witness)
    return v


def nonsingular_reduction(q: int, k1: int, k2: int, node_limit: int | None = None) -> Verdict:
    """A nonsingular q has a perfect set iff each of its prime divisors does."""
    if gcd(q, lcm(*range(1, k2 + 1))) != 1:
        raise ValueError(f"q={q} is singular for k2={k2}")
    per_prime = {}
    outcome = Outcome.EXISTS
    violated = None
    for p in factorize(q).primes:
        v = decide_prime(p, k1, k2, node_limit)
        per_prime[p] = f"{v.outcome.value}:{v.provenance}"
        if v.outcome is Outcome.NOT_EXISTS and outcome is not Outcome.NOT_EXISTS:
            outcome = Outcome.NOT_EXISTS
            violated = f"no perfect set modulo the prime {p}"
        elif v.outcome is Outcome.UNKNOWN and outcome is Outcome.EXISTS:
            outcome = Outcome.UNKNOWN
    return Verdict(outcome, NONSINGULAR_REDUCTION, {"q": q, "k1": k1, "k2": k2, "primes": per_prime},
                   violated=violated)


# 4ac - b^2 for all three forms
_FORM_DISCRIMINANT = 2304
QUADRATIC_FORMS: tuple[tuple[int, int, int], ...] = ((25, 14, 25), (5, 4, 116), (5, -4, 116))


def form_bounds(form: tuple[int, int, int], p: int) -> tuple[int, int]:
    """|x|, |y| limits for a x^2 + b xy + c y^2 = p.

    From 4a f = (2ax + by)^2 + (4ac - b^2) y^2 we get y^2 <= 4ap / D, and
    symmetrically x^2 <= 4cp / D.
    """
    a, b, c = form
    D = 4 * a * c - b * b
    assert D == _FORM_DISCRIMINANT > 0
    return isqrt(4 * c * p // D) + 1, isqrt(4 * a * p // D) + 1


def quadratic_form_representation(p: int) -> tuple[tuple[int, int, int], int, int] | None:
    """First (form, x, y) with form(x, y) = p, scanning forms then x, y ascending."""
    for form in QUADRATIC_FORMS:
        a, b, c = form
        X, Y = form_bounds(form, p)
        for x in range(-X, X + 1):
            for y in range(-Y, Y + 1):
                if a * x * x + b * x * y + c * y * y == p:
                    return form, x, y
    return None


def quadratic_form_check(p: int) -> bool:
    if p % 8 != 5 or not is_prime(p):
        raise ValueError(f"{p} is not a prime 5 mod 8")
    return quadratic_form_representation(p) is not None


def quadratic_form_report(limit: int = 2000) -> dict:
    """Compare the form test with the quartic-residue test on primes = 5 mod 8."""
    from .numthy import primes_between

    rows = []
    for p in primes_between(5, limit):
        if p % 8 != 5:
            continue
        rep = quadratic_form_representation(p)
        quartic = kth_power_residue(6, p, 4)
        rows.append({
            "p": p,
            "form": bool(rep),
            "quartic": quartic,
            "representation": list(rep[0]) + [rep[1], rep[2]] if rep else None,
        })
    disagreements = [r["p"] for r in rows if r["form"] != r["quartic"]]
    total = len(rows)
    return {
        "limit": limit,
        "primes": total,
        "agree": total - len(disagreements),
        "agreement_rate": (total - len(disagreements)) / total if total else 1.0,
        "disagreements": disagreements,
        "rows": rows,
    }


def decide_by_search(q: int, k1: int, k2: int, node_limit: int | None = None) -> Outcome:
    """Existence of a perfect set mod q, settled by exhaustive search."""
    if q == 1:
        return Outcome.EXISTS
    if (q - 1) % (k1 + k2):
        return Outcome.NOT_EXISTS
    try:
        inst = SplitterInstance(q, k1, k2)
    except InstanceError:
        return Outcome.NOT_EXISTS
    return search_perfect(inst, SearchConfig(node_limit=node_limit)).outcome


def quotient_consistency(
    m: int,
    n: int,
    k1: int,
    k2: int,
    decide: Callable[[int], Outcome] | None = None,
) -> bool:
    """Check that perfect sets mod m and mod n imply one mod n/m.

    ``decide(q)`` supplies the verdict for a modulus; by default the search.
    Raises ValueError when a needed verdict is UNKNOWN.
    """
    if n % m:
        raise ValueError(f"{m} does not divide {n}")
    decide = decide or (lambda q: decide_by_search(q, k1, k2))
    vm = decide(m)
    if vm is Outcome.UNKNOWN:
        raise ValueError(f"missing verdict for q={m}")
    if vm is Outcome.NOT_EXISTS:
        return True
    vn = decide(n)
    if vn is Outcome.UNKNOWN:
        raise ValueError(f"missing verdict for q={n}")
    if vn is Outcome.NOT_EXISTS:
        return True
    vq = decide(n // m)
    if vq is Outcome.UNKNOWN:
        raise ValueError(f"missing verdict for q={n // m}")
    return vq is Outcome.EXISTS
