"""
Dense integer polynomials (constant term first), modular resultants and
discriminants, and root detection modulo a prime.
"""

import logging
from dataclasses import dataclass
from math import isqrt

import gmpy2
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_degree, gf_from_int_poly, gf_gcd, gf_pow_mod, gf_rem, gf_sub

from utils.errors import InvalidInput, LeadingCoeffVanishes
from utils.helpers import int_from_json

logger = logging.getLogger(__name__)

# First modulus tried by the CRT resultant; primes are taken upward from here.
_CRT_START = 2 ** 30


@dataclass(frozen=True)
class IntPoly:
    """sum(coeffs[k] * X**k); the zero polynomial has no coefficients."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = [int(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def from_high(cls, coeffs):
        """Build from leading-first coefficients."""
        return cls(tuple(reversed(list(coeffs))))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def high_first(self):
        return list(reversed(self.coeffs))

    def is_monic(self):
        return self.lc == 1

    def derivative(self):
        return IntPoly(tuple(k * c for k, c in enumerate(self.coeffs))[1:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def content(self):
        g = 0
        for c in self.coeffs:
            g = gmpy2.gcd(g, c)
        return int(g)

    def primitive_part(self):
        g = self.content()
        if g <= 1:
            return self
        sign = -1 if self.lc < 0 else 1
        return IntPoly(tuple(sign * c // g for c in self.coeffs))

    def parity(self):
        """'even' or 'odd' when only even or only odd powers occur, else None."""
        if all(c == 0 for c in self.coeffs[1::2]):
            return "even"
        if all(c == 0 for c in self.coeffs[0::2]):
            return "odd"
        return None

    def mod_p(self, p):
        """Leading-first coefficient list over F_p in the galoistools convention."""
        return gf_from_int_poly(self.high_first(), p)

    def max_abs_coeff(self):
        return max((abs(c) for c in self.coeffs), default=0)

    def to_json(self):
        return {"degree": self.degree, "coefficients": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, payload):
        return cls(tuple(int_from_json(c) for c in payload["coefficients"]))

    def pretty(self, var="X"):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {s} {b}" for s, b in terms[1:])

    def __str__(self):
        return self.pretty()


def _resultant_mod_p(f, g, p):
    """Res(f, g) over F_p by the Euclidean recursion; f and g have nonzero leading terms."""
    res = 1
    while True:
        m, n = gf_degree(f), gf_degree(g)
        if n < 0:
            return 0
        if n == 0:
            return res * pow(int(g[0]), m, p) % p
        r = gf_rem(f, g, p, ZZ)
        if not r:
            return 0
        k = gf_degree(r)
        if (m * n) % 2:
            res = -res
        res = res * pow(int(g[0]), m - k, p) % p
        f, g = g, r


def _norm_bound(F):
    return isqrt(sum(c * c for c in F.coeffs)) + 1


def resultant(F, G):
    """Exact Res(F, G) by CRT over primes above 2**30, stopping past twice the Hadamard bound."""
    if not F.coeffs or not G.coeffs:
        return 0
    bound = _norm_bound(F) ** G.degree * _norm_bound(G) ** F.degree
    modulus, value = gmpy2.mpz(1), gmpy2.mpz(0)
    p = gmpy2.mpz(_CRT_START)
    used = 0
    while modulus <= 2 * bound:
        p = gmpy2.next_prime(p)
        if F.lc % p == 0 or G.lc % p == 0:
            continue
        r = _resultant_mod_p(F.mod_p(int(p)), G.mod_p(int(p)), int(p))
        # x = value (mod modulus), x = r (mod p)
        t = (r - value) * gmpy2.invert(modulus, p) % p
        value += modulus * t
        modulus *= p
        used += 1
    if value > modulus // 2:
        value -= modulus
    logger.debug("🔍 resultant of degrees %d, %d from %d primes", F.degree, G.degree, used)
    return int(value)


def poly_disc(F):
    d = F.degree
    if d < 2:
        raise InvalidInput(f"discriminant needs degree at least 2, got {d}")
    res = resultant(F, F.derivative())
    q, rem = divmod(res, F.lc)
    if rem:
        raise InvalidInput("resultant not divisible by the leading coefficient")
    return -q if (d * (d - 1) // 2) % 2 else q


def has_root_mod_p(F, p):
    if F.lc % p == 0:
        raise LeadingCoeffVanishes(f"{p} divides the leading coefficient {F.lc}")
    f = F.mod_p(p)
    if gf_degree(f) < 1:
        return False
    xp = gf_pow_mod([1, 0], p, f, p, ZZ)
    h = gf_sub(xp, [1, 0], p, ZZ)
    return gf_degree(gf_gcd(f, h, p, ZZ)) > 0
