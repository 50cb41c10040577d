"""
Primes p = x^2 + n*y^2 with x mod N in G and y = 0 mod N: a direct scan,
the criterion through the minimal polynomial F, and a harness comparing both.
"""

import logging
import time
from dataclasses import dataclass, field

from gmpy2 import isqrt
from sympy import primerange

from arithmetic_apps.kronecker import kronecker_symbol
from classgroups.class_group import enumerate_classes
from exact_algebra.polynomials import has_root_mod_p, poly_disc
from modfuncs.minpoly import minpoly_over_Q
from modfuncs.siegel import InvariantSpec
from numerics.precision import DEFAULT_MAX_DIGITS, PrecCtx
from orders.ideals import order_from_disc
from utils.errors import ExcludedPrime, InvalidInput

logger = logging.getLogger(__name__)


def brute_force_rep(p, n, N, G):
    """(x, y) with p = x^2 + n*y^2, y = 0 mod N and x mod N in G, scanning y downward; None if absent."""
    residues = {g % N for g in G}
    y = int(isqrt(p // n))
    y -= y % N
    while y >= 0:
        r = p - n * y * y
        x = int(isqrt(r))
        if x * x == r:
            for cand in (x, -x):
                if cand % N in residues:
                    return cand, y
        y -= N
    return None


def criterion_rep(p, F, n, N=1, disc=None):
    """(-n/p) = 1 and F has a root mod p, for p prime to 2*n*N*disc(F)*lc(F)."""
    disc = poly_disc(F) if disc is None else disc
    if (2 * n * N * disc * F.lc) % p == 0:
        raise ExcludedPrime(f"{p} divides 2*n*N*disc(F)*lc(F)")
    return kronecker_symbol(-n, p) == 1 and has_root_mod_p(F, p)


@dataclass
class HarnessReport:
    n: int
    N: int
    G: tuple
    bound: int
    agree: int = 0
    excluded: list = field(default_factory=list)
    disagreements: list = field(default_factory=list)
    represented: list = field(default_factory=list)
    polynomial: object = None

    @property
    def ok(self):
        return not self.disagreements

    def to_json(self):
        return {
            "n": self.n,
            "N": self.N,
            "G": list(self.G),
            "bound": self.bound,
            "agree": self.agree,
            "excluded": self.excluded,
            "disagreements": self.disagreements,
            "represented": [list(r) for r in self.represented],
        }


def equivalence_harness(n, L, bound, ctx=None, max_digits=DEFAULT_MAX_DIGITS, F=None):
    if n < 2:
        raise InvalidInput(f"n must be at least 2, got {n}")
    if L.N < 2:
        raise InvalidInput(f"level must be at least 2, got {L.N}")
    started = time.monotonic()
    if F is None:
        O = order_from_disc(-4 * n)
        CG = enumerate_classes(O, L)
        F = minpoly_over_Q(O, L, InvariantSpec.for_level(L), CG, ctx or PrecCtx(), max_digits).minpoly
    disc = poly_disc(F)
    excluded_by = 2 * n * L.N * disc * F.lc
    report = HarnessReport(n, L.N, L.G, bound, polynomial=F)
    for p in primerange(2, bound):
        p = int(p)
        if excluded_by % p == 0:
            report.excluded.append(p)
            continue
        witness = brute_force_rep(p, n, L.N, L.G)
        predicted = criterion_rep(p, F, n, L.N, disc)
        if (witness is not None) == predicted:
            report.agree += 1
        else:
            logger.warning("⚠️ p=%d: scan found %s, criterion says %s", p, witness, predicted)
            report.disagreements.append(p)
        if witness is not None:
            report.represented.append((p, witness[0], witness[1]))
    logger.info("⏱️ harness n=%d N=%d up to %d: %d agree, %d excluded in %.1fs", n, L.N, bound, report.agree,
                len(report.excluded), time.monotonic() - started)
    return report
