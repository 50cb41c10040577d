"""
Siegel functions g_v(tau) by their product expansion, the level-N invariant
h = prod_{u in U} g_[0, u/N]^e with e = 12N/gcd(6, N), and its Galois
conjugates at the CM points of a form class group.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from numerics.precision import cx_exp2pii, sqrt_negative
from utils.errors import InvalidInput, ParityViolation

logger = logging.getLogger(__name__)


def bernoulli2(x):
    return x * x - x + Fraction(1, 6)


@dataclass(frozen=True)
class SiegelIndex:
    """v = [v1, v2] in Q^2 / Z^2, not integral."""

    v1: Fraction
    v2: Fraction

    def __post_init__(self):
        v1, v2 = Fraction(self.v1) % 1, Fraction(self.v2) % 1
        if v1 == 0 and v2 == 0:
            raise InvalidInput("Siegel index must not be integral")
        object.__setattr__(self, "v1", v1)
        object.__setattr__(self, "v2", v2)

    def times(self, gamma):
        """The row vector v * gamma, reduced mod 1."""
        return SiegelIndex(self.v1 * gamma.p + self.v2 * gamma.r, self.v1 * gamma.q + self.v2 * gamma.s)


@dataclass(frozen=True)
class InvariantSpec:
    """The invariant prod_{u in orbit} g_[0, u/N]^e."""

    N: int
    e: int
    orbit: tuple

    def __post_init__(self):
        if self.N < 2:
            raise InvalidInput(f"invariants need level N >= 2, got {self.N}")
        if self.e != 12 * self.N // math.gcd(6, self.N):
            raise InvalidInput(f"exponent must be 12N/gcd(6, N) = {12 * self.N // math.gcd(6, self.N)}")
        if not self.orbit or any(math.gcd(u, self.N) != 1 for u in self.orbit):
            raise InvalidInput(f"orbit {self.orbit} must be residues prime to {self.N}")

    @classmethod
    def for_level(cls, level):
        """G folded by u ~ -u."""
        N = level.N
        orbit = tuple(sorted({min(t % N, -t % N) for t in level.G}))
        return cls(N, 12 * N // math.gcd(6, N), orbit)

    def to_json(self):
        return {"N": self.N, "e": self.e, "orbit": list(self.orbit)}


def _im_float(tau):
    return int(tau.im) / (1 << tau.prec)


def product_terms(tau, ctx):
    """Least M with |q|^M below 10^-(digits + guard)."""
    im = _im_float(tau)
    if im <= 0:
        raise InvalidInput("tau must lie in the upper half plane")
    return int(math.ceil((ctx.digits + ctx.guard) * math.log(10) / (2 * math.pi * im))) + 1


def siegel(v, tau, ctx):
    v1, v2 = v.v1, v.v2
    head = cx_exp2pii(tau.scale(bernoulli2(v1) / 2), ctx)
    head = head * cx_exp2pii(ctx.from_fraction(v2 * (v1 - 1) / 2), ctx)
    z = tau.scale(v1) + v2
    qz = cx_exp2pii(z, ctx)
    qz_inv = cx_exp2pii(-z, ctx)
    q = cx_exp2pii(tau, ctx)
    value = -head * (1 - qz)
    qn = q
    for _ in range(product_terms(tau, ctx)):
        value = value * (1 - qn * qz) * (1 - qn * qz_inv)
        qn = qn * q
    return value


def invariant_value(spec, tau, ctx):
    value = ctx.one()
    for u in spec.orbit:
        value = value * siegel(SiegelIndex(0, Fraction(u, spec.N)), tau, ctx) ** spec.e
    return value


def conjugate_values(O, L, spec, CG, ctx):
    """
    Values of h at tau_O under the Galois action of each class.

    For the class of (a, b, c) with a*a' = 1 mod N this is
    prod_u g_[0, u*a'/N]((b + sqrt(D)) / 2a)^e.
    """
    if O.D in (-3, -4):
        raise InvalidInput(f"no invariant is synthesized for D={O.D}")
    if L.N < 2 or spec.N != L.N:
        raise InvalidInput(f"invariant level {spec.N} does not match N={L.N}")
    sqrt_d = sqrt_negative(O.D, ctx)
    values = []
    for Q in CG.reps:
        if (Q.b - O.bO) % 2:
            raise ParityViolation(f"{Q} and the order disagree in parity of b")
        a_inv = int(gmpy2.invert(Q.a, L.N))
        point = (sqrt_d + Q.b).scale(Fraction(1, 2 * Q.a))
        value = ctx.one()
        for u in spec.orbit:
            value = value * siegel(SiegelIndex(0, Fraction(u * a_inv, L.N)), point, ctx) ** spec.e
        values.append(value)
    logger.debug("🔍 evaluated %d conjugates at %d digits", len(values), ctx.digits)
    return values
