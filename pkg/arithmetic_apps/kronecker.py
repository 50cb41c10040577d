"""
Split primes and the Kronecker congruence

    (f(w)^p - f(w/p)) * (f(w) - f(w/p)^p) = 0  (mod p)

checked through the characteristic polynomial of the left-hand side.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
from sympy.ntheory import sqrt_mod

from classgroups.class_group import enumerate_classes
from exact_algebra.integers import is_prime
from modfuncs.minpoly import poly_from_conjugates
from modfuncs.siegel import InvariantSpec, conjugate_values
from numerics.precision import DEFAULT_MAX_DIGITS, PrecCtx, digits_for_magnitude, with_adaptive_precision
from orders.ideals import order_from_disc
from quadforms.forms import Form
from utils.errors import ConditionViolated, InvalidInput, PDividesD, PrecisionExhausted

logger = logging.getLogger(__name__)

# Digits used to size the exact pass.
_ESTIMATE_DIGITS = 60


@dataclass(frozen=True)
class SplitPrimeData:
    """p with 4p | s^2 - D; omega = (s + sqrt(D))/2 is kept as the pair (s, D)."""

    p: int
    s: int
    D: int

    @property
    def split_form(self):
        return Form(self.p, self.s, (self.s * self.s - self.D) // (4 * self.p))

    @property
    def omega(self):
        return (self.s, self.D)

    def to_json(self):
        return {"p": self.p, "s": self.s, "split_form": self.split_form.to_json()}


def find_split(D, p):
    """The least s >= 0 with s^2 = D (mod 4p), or None when p does not split."""
    if D % p == 0:
        raise PDividesD(f"{p} divides {D}")
    if p == 2:
        candidates = [s for s in range(4) if (s * s - D) % 8 == 0]
    else:
        roots = sqrt_mod(D % p, p, all_roots=True) or []
        candidates = [r if (r - D) % 2 == 0 else r + p for r in roots]
    if not candidates:
        return None
    return SplitPrimeData(p, min(candidates), D)


def kronecker_symbol(a, n):
    if n == 0:
        raise InvalidInput("Kronecker symbol needs n != 0")
    return int(gmpy2.kronecker(a, n))


@dataclass
class CongruenceReport:
    D: int
    N: int
    G: tuple
    p: int
    s: int
    A: object
    B: object
    charpoly: object
    verdict: bool
    residual: Fraction
    digits_used: int
    failing: list = field(default_factory=list)

    def to_json(self):
        return {
            "inputs": {"D": self.D, "N": self.N, "G": list(self.G), "p": self.p, "s": self.s},
            "A": self.A.to_str(30),
            "B": self.B.to_str(30),
            "charpoly": self.charpoly.to_json(),
            "verdict": self.verdict,
            "failing_k": self.failing,
            "residual": f"{float(self.residual):.1e}",
            "digits_used": self.digits_used,
        }


def check_conditions(D, L, p):
    """Conditions (i)-(iii) of the congruence; returns the split data."""
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if math.gcd(p, D * L.N) != 1:
        raise ConditionViolated("i", f"{p} is not prime to D*N = {D * L.N}")
    split = find_split(D, p)
    if split is None:
        raise ConditionViolated("ii", f"{p} does not split in the order of discriminant {D}")
    if not (L.contains(p) or L.contains(-p)):
        raise ConditionViolated("iii", f"neither {p} nor -{p} is in G = {list(L.G)} mod {L.N}")
    return split


def _log10_one_plus(x):
    l = x.log10_abs()
    return l if l > 15 else math.log10(1 + 10 ** l)


def _elements(values, shifted, p):
    return [(a ** p - b) * (a - b ** p) for a, b in zip(values, (values[k] for k in shifted))]


def verify_kronecker(D, L, p, spec=None, ctx=None, max_digits=DEFAULT_MAX_DIGITS, CG=None):
    split = check_conditions(D, L, p)
    ctx = ctx or PrecCtx()
    O = order_from_disc(D)
    CG = CG or enumerate_classes(O, L)
    spec = spec or InvariantSpec.for_level(L)
    P = CG.class_of(split.split_form)
    shifted = [CG.compose(P, i) for i in range(len(CG))]

    # size the exact pass from a cheap estimate of the coefficient magnitudes
    rough = ctx.with_digits(_ESTIMATE_DIGITS) if ctx.digits > _ESTIMATE_DIGITS else ctx
    estimate = _elements(conjugate_values(O, L, spec, CG, rough), shifted, p)
    bound = sum(2 * _log10_one_plus(e) for e in estimate)
    start = digits_for_magnitude(bound, ctx)
    if start.digits > max_digits:
        raise PrecisionExhausted(f"coefficients near 10^{int(bound)} need {start.digits} digits, cap is {max_digits}")
    logger.info("🔍 p=%d: coefficient bound 10^%d, starting at %d digits", p, int(bound), start.digits)

    def attempt(c):
        values = conjugate_values(O, L, spec, CG, c)
        elements = _elements(values, shifted, p)
        charpoly, residual = poly_from_conjugates(elements, c)
        return values, charpoly, residual, c.digits

    values, charpoly, residual, digits = with_adaptive_precision(attempt, start, max_digits)
    d = charpoly.degree
    failing = [k for k in range(1, d + 1) if charpoly.coeffs[d - k] % p ** k]
    verdict = not failing
    logger.info("%s D=%d N=%d p=%d verdict %s", "✅" if verdict else "⚠️", D, L.N, p, verdict)
    return CongruenceReport(
        D=D, N=L.N, G=L.G, p=p, s=split.s,
        A=values[0], B=values[P],
        charpoly=charpoly, verdict=verdict, residual=residual, digits_used=digits, failing=failing,
    )
