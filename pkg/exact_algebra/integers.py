"""
Primality and integer factorization: trial division, Brent's variant of
Pollard rho with a fixed seed schedule, Miller-Rabin with deterministic
witnesses.
"""

import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import gmpy2
from gmpy2 import mpz
from sympy import primerange

from utils.errors import FactorTimeout, InvalidInput
from utils.helpers import int_to_json

logger = logging.getLogger(__name__)

TRIAL_LIMIT = 10 ** 6
DEFAULT_BUDGET_SECONDS = 60.0

# Witness set deterministic for n < 3317044064679887385961981.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_BOUND = 3317044064679887385961981
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


@lru_cache(maxsize=1)
def _trial_primes():
    return tuple(primerange(2, TRIAL_LIMIT))


def _strong_probable_prime(n, a):
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = gmpy2.powmod(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n):
    n = mpz(n)
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if not all(_strong_probable_prime(n, a) for a in _MR_BASES):
        return False
    if n < _MR_BOUND:
        return True
    return bool(gmpy2.is_strong_bpsw_prp(n))


@dataclass
class Factorization:
    """Prime factorization of |n|; `cofactors` holds unsplit parts when the budget ran out."""

    n: int
    factors: Counter = field(default_factory=Counter)
    cofactors: list = field(default_factory=list)

    @property
    def complete(self):
        return not self.cofactors

    def items(self):
        return sorted(self.factors.items())

    def value(self):
        out = 1
        for p, e in self.factors.items():
            out *= p ** e
        for m, e in self.cofactors:
            out *= m ** e
        return out

    def require_complete(self):
        if not self.complete:
            raise FactorTimeout(self, f"could not split {len(self.cofactors)} cofactor(s) of {self.n}")
        return self

    def to_json(self):
        return [[str(p), e] for p, e in self.items()]

    def pretty(self):
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.items()]
        parts += [f"[{m}]^{e}" if e > 1 else f"[{m}]" for m, e in self.cofactors]
        return " * ".join(parts) or "1"

    def summary(self):
        return {
            "complete": self.complete,
            "factors": self.to_json(),
            "unfactored": [[int_to_json(m), e] for m, e in self.cofactors],
        }


def _brent(n, c, deadline, batch=128):
    """A non-trivial divisor of composite n, n itself on a failed cycle, None on timeout."""
    y, r, q, g = mpz(2), 1, mpz(1), mpz(1)
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(batch, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += batch
            if time.monotonic() > deadline:
                return None
        r *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def _perfect_power(n):
    """(root, k) with root**k == n and k maximal among small exponents, else (n, 1)."""
    for k in range(n.bit_length() // 20 + 1, 1, -1):
        root, exact = gmpy2.iroot(n, k)
        if exact:
            return mpz(root), k
    return n, 1


def factor_int(n, budget_seconds=DEFAULT_BUDGET_SECONDS):
    if n == 0:
        raise InvalidInput("cannot factor zero")
    result = Factorization(int(n))
    m = mpz(abs(n))
    started = time.monotonic()
    deadline = started + budget_seconds
    for p in _trial_primes():
        if m == 1 or p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            result.factors[p] += e
    if m > 1 and m < TRIAL_LIMIT * TRIAL_LIMIT:
        result.factors[int(m)] += 1
        m = mpz(1)

    stack = [(m, 1)] if m > 1 else []
    while stack:
        value, mult = stack.pop()
        if value == 1:
            continue
        if is_prime(value):
            result.factors[int(value)] += mult
            continue
        root, k = _perfect_power(value)
        if k > 1:
            stack.append((root, mult * k))
            continue
        divisor = None
        for c in range(1, 64):
            d = _brent(value, c, deadline)
            if d is None:
                break
            if 1 < d < value:
                divisor = d
                break
        if divisor is None:
            logger.warning("⚠️ factor budget exhausted on a %d-digit cofactor", len(str(value)))
            result.cofactors.append((int(value), mult))
            continue
        stack.append((divisor, mult))
        stack.append((value // divisor, mult))
    logger.debug("⏱️ factored %d-digit integer in %.2fs", len(str(abs(n))), time.monotonic() - started)
    return result
