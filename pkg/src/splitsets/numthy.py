"""Exact modular arithmetic on the multiplicative groups Z_q^*.

Everything here is a pure function of its arguments. Moduli are restricted
to ``q < 2**31`` (``MAX_MODULUS``) so that every product of two residues fits
in a signed 64-bit word; the check is enforced even though Python integers
would not overflow, so results stay reproducible by fixed-width ports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt, lcm

MAX_MODULUS = 1 << 31
MAX_FACTOR_INPUT = 1 << 63

# Deterministic for every n < 3.3e24, which covers all 64-bit inputs.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_LIMIT = 1 << 12
_RHO_SEEDS = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


class ModulusError(ValueError):
    """Raised for a modulus outside the exactness bound or of the wrong kind."""


def _check_modulus(q: int) -> None:
    if not 2 <= q < MAX_MODULUS:
        raise ModulusError(f"modulus {q} outside [2, 2^31)")


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i in range(limit + 1) if sieve[i]]


_TRIAL_PRIMES = _small_primes(_TRIAL_LIMIT)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 2**64."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    """All primes p with lo <= p <= hi (segmented sieve)."""
    lo = max(lo, 2)
    if hi < lo:
        return []
    base = _small_primes(isqrt(hi))
    out: list[int] = []
    seg = 1 << 16
    for start in range(lo, hi + 1, seg):
        stop = min(start + seg, hi + 1)
        mark = bytearray([1]) * (stop - start)
        for p in base:
            first = max(p * p, (start + p - 1) // p * p)
            if first >= stop:
                continue
            mark[first - start :: p] = bytearray(len(range(first, stop, p)))
        out.extend(start + i for i, ok in enumerate(mark) if ok)
    return out


def _rho_brent(n: int, c: int) -> int:
    """One Brent-rho attempt with f(x) = x^2 + c; returns a divisor of n (maybe n)."""
    y, r, q, g = 2, 1, 1, 1
    m = 128
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
    return g


def _split(n: int) -> int:
    for c in _RHO_SEEDS:
        d = _rho_brent(n, c)
        if 1 < d < n:
            return d
    # Exhausting the fixed seeds is not expected below 2**63; fall back deterministically.
    c = _RHO_SEEDS[-1]
    while True:
        c += 2
        d = _rho_brent(n, c)
        if 1 < d < n:
            return d


@dataclass(frozen=True)
class PrimeFactorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**i for d in divs for i in range(e + 1)]
        return sorted(divs)

    def as_pairs(self) -> list[tuple[int, int]]:
        return list(self.factors)


@lru_cache(maxsize=1 << 14)
def factorize(n: int) -> PrimeFactorization:
    """Prime factorization of ``1 <= n < 2**63``.

    Trial division by the primes below 4096, then Brent's variant of
    Pollard rho with a fixed sequence of polynomial constants, so the output
    (and the work done) is identical from run to run.
    """
    if not 1 <= n < MAX_FACTOR_INPUT:
        raise ValueError(f"factorize expects 1 <= n < 2^63, got {n}")
    counts: dict[int, int] = {}
    m = n
    for p in _TRIAL_PRIMES:
        if p * p > m:
            break
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    stack = [m] if m > 1 else []
    while stack:
        x = stack.pop()
        if x < _TRIAL_LIMIT**2 or is_prime(x):
            # below 4096^2 a cofactor free of small primes is itself prime
            counts[x] = counts.get(x, 0) + 1
            continue
        r = isqrt(x)
        if r * r == x:
            stack += [r, r]
            continue
        d = _split(x)
        stack += [d, x // d]
    return PrimeFactorization(n, tuple(sorted(counts.items())))


def carmichael(q: int) -> int:
    """Exponent of the group Z_q^*."""
    out = 1
    for p, e in factorize(q).factors:
        if p == 2:
            lam = 1 if e == 1 else 2 if e == 2 else 1 << (e - 2)
        else:
            lam = (p - 1) * p ** (e - 1)
        out = lcm(out, lam)
    return out


def mult_order(a: int, q: int) -> int:
    """Multiplicative order of ``a`` modulo ``q``.

    Starts from the Carmichael exponent and strips each prime factor while
    the power stays 1, so the cost is polylogarithmic in ``q``.
    """
    _check_modulus(q)
    a %= q
    if gcd(a, q) != 1:
        raise ValueError(f"{a} is not a unit modulo {q}")
    order = carmichael(q)
    for p, _ in factorize(order).factors:
        while order % p == 0 and pow(a, order // p, q) == 1:
            order //= p
    return order


def inverse(a: int, q: int) -> int:
    if gcd(a, q) != 1:
        raise ValueError(f"{a} is not a unit modulo {q}")
    return pow(a, -1, q)


def solve_linear(m: int, x: int, q: int) -> list[int]:
    """All b in [0, q) with ``m*b = x (mod q)``, ascending.

    With d = gcd(m, q) there are no solutions unless d | x, and then exactly
    d of them spaced q/d apart.
    """
    m %= q
    x %= q
    d = gcd(m, q)
    if x % d:
        return []
    step = q // d
    if step == 1:
        return list(range(q))
    b0 = (x // d) * pow(m // d, -1, step) % step
    return [b0 + j * step for j in range(d)]


def _require_odd_prime(p: int) -> None:
    _check_modulus(p)
    if p < 3 or not is_prime(p):
        raise ModulusError(f"{p} is not an odd prime")


@lru_cache(maxsize=4096)
def primitive_root(p: int) -> int:
    """Smallest generator of Z_p^* for an odd prime p."""
    _require_odd_prime(p)
    cofactors = [(p - 1) // r for r in factorize(p - 1).primes]
    for g in range(2, p):
        if all(pow(g, c, p) != 1 for c in cofactors):
            return g
    raise AssertionError("unreachable: every odd prime has a primitive root")


def kth_power_residue(a: int, p: int, d: int) -> bool:
    """True iff ``a`` is a d-th power residue modulo the odd prime ``p``.

    ``d`` must divide ``p - 1``; the test is Euler's criterion generalised,
    ``a^((p-1)/d) == 1 (mod p)``.
    """
    _require_odd_prime(p)
    if d < 2 or (p - 1) % d:
        raise ValueError(f"d={d} must be >= 2 and divide p-1={p - 1}")
    if a % p == 0:
        raise ValueError(f"{a} is divisible by {p}")
    return pow(a, (p - 1) // d, p) == 1


@dataclass(frozen=True)
class IndexContext:
    """Discrete logarithms to the base ``g`` modulo the odd prime ``p``.

    For ``p - 1 <= full_table_limit`` the context stores the complete log
    table; above that it keeps a baby-step table of size ceil(sqrt(p-1)) and
    answers by baby-step giant-step. The instance is immutable once built.
    """

    p: int
    g: int = 0
    full_table_limit: int = 1 << 16
    _table: dict[int, int] = field(init=False, repr=False, compare=False)
    _step: int = field(init=False, repr=False, compare=False)
    _giant: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        p = self.p
        _require_odd_prime(p)
        g = self.g or primitive_root(p)
        if mult_order(g, p) != p - 1:
            raise ValueError(f"{g} is not a primitive root modulo {p}")
        object.__setattr__(self, "g", g)
        if p - 1 <= self.full_table_limit:
            size = p - 1
        else:
            size = isqrt(p - 2) + 1
        table: dict[int, int] = {}
        x = 1
        for j in range(size):
            table.setdefault(x, j)
            x = x * g % p
        object.__setattr__(self, "_table", table)
        object.__setattr__(self, "_step", size)
        object.__setattr__(self, "_giant", pow(g, -size, p))

    @property
    def uses_bsgs(self) -> bool:
        return self._step < self.p - 1

    def ind(self, b: int) -> int:
        p = self.p
        b %= p
        if b == 0:
            raise ValueError(f"index of 0 modulo {p} is undefined")
        table, step, giant = self._table, self._step, self._giant
        y = b
        for i in range(step + 1):
            j = table.get(y)
            if j is not None:
                return (i * step + j) % (p - 1)
            y = y * giant % p
        raise AssertionError("unreachable: g generates Z_p^*")

    def power(self, e: int) -> int:
        return pow(self.g, e, self.p)
