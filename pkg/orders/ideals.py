"""
Imaginary quadratic orders O = Z + Z*tau_O and their proper fractional ideals.

An ideal is kept as scale * (Z*a + Z*(-b + sqrt(D))/2) with -a < b <= a, so
equal ideals have equal fields. Elements of O are AlgInt coordinates in the
basis {1, tau_O}.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import gmpy2

from exact_algebra.integers import factor_int
from quadforms.forms import Form, reduce
from numerics.precision import sqrt_negative
from utils.errors import BadDiscriminant, DiscMismatch, InvalidInput
from utils.helpers import fraction_to_json, int_to_json

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlgInt:
    """x + y*tau_O."""

    x: int
    y: int

    def __add__(self, other):
        return AlgInt(self.x + other.x, self.y + other.y)

    def __neg__(self):
        return AlgInt(-self.x, -self.y)

    def __sub__(self, other):
        return AlgInt(self.x - other.x, self.y - other.y)

    def times(self, n):
        return AlgInt(self.x * n, self.y * n)

    def to_json(self):
        return [int_to_json(self.x), int_to_json(self.y)]


@dataclass(frozen=True)
class Order:
    """The order of discriminant D = cond**2 * dK; tau_O is a root of X^2 + bO*X + cO."""

    D: int
    dK: int
    cond: int
    bO: int
    cO: int

    def tau(self, ctx):
        return (sqrt_negative(self.D, ctx) - self.bO).scale(Fraction(1, 2))

    def principal_form(self):
        return Form(1, self.bO, self.cO)

    def one(self):
        return AlgInt(1, 0)

    def mul(self, u, v):
        # tau^2 = -bO*tau - cO
        yy = u.y * v.y
        return AlgInt(u.x * v.x - self.cO * yy, u.x * v.y + u.y * v.x - self.bO * yy)

    def conj(self, u):
        return AlgInt(u.x - self.bO * u.y, -u.y)

    def norm(self, u):
        return u.x * u.x - self.bO * u.x * u.y + self.cO * u.y * u.y

    def value(self, u, ctx):
        return self.tau(ctx) * u.y + u.x

    def unit_ideal(self):
        return IdealLat(Fraction(1), 1, self.bO)

    def to_json(self):
        return {"D": self.D, "dK": self.dK, "cond": self.cond, "bO": self.bO, "cO": self.cO}


@dataclass(frozen=True)
class IdealLat:
    """scale * (Z*a + Z*(-b + sqrt(D))/2) with -a < b <= a."""

    scale: Fraction
    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.scale <= 0:
            raise InvalidInput(f"bad ideal data scale={self.scale}, a={self.a}")
        b = self.b % (2 * self.a)
        if b > self.a:
            b -= 2 * self.a
        object.__setattr__(self, "scale", Fraction(self.scale))
        object.__setattr__(self, "b", b)

    def scaled(self, r):
        return IdealLat(self.scale * Fraction(r), self.a, self.b)

    def is_integral(self):
        return self.scale.denominator == 1

    def to_json(self):
        return {"scale": fraction_to_json(self.scale), "a": str(self.a), "b": str(self.b)}

    def __str__(self):
        return f"{self.scale}*[{self.a}, (-{self.b}+sqrt(D))/2]"


def order_from_disc(D):
    if D >= 0 or D % 4 not in (0, 1):
        raise BadDiscriminant(f"{D} is not a negative discriminant")
    cond = 1
    for p, e in factor_int(D).require_complete().items():
        cond *= p ** (e // 2)
    dK = D // (cond * cond)
    if dK % 4 in (2, 3):
        cond //= 2
        dK *= 4
    if D % 4 == 1:
        bO, cO = 1, (1 - D) // 4
    else:
        bO, cO = 0, -D // 4
    return Order(D, dK, cond, bO, cO)


def _hnf(vectors):
    """HNF (A, B, C) of the Z-span of integer pairs: basis (A, 0), (B, C) with A, C > 0, 0 <= B < A."""
    A = 0
    cur = None
    for x, y in vectors:
        if y == 0:
            A = gcd(A, x)
        elif cur is None:
            cur = (x, y)
        else:
            cx, cy = cur
            g, u, v = (int(t) for t in gmpy2.gcdext(cy, y))
            A = gcd(A, (y // g) * cx - (cy // g) * x)
            cur = (u * cx + v * x, g)
    if cur is None or A == 0:
        raise InvalidInput("generators do not span a lattice of rank 2")
    x, y = cur
    if y < 0:
        x, y = -x, -y
    return A, x % A, y


def _lattice_to_ideal(scale, A, B, C, O):
    """The ideal scale * (Z*A + Z*(B + C*tau))."""
    if A % C or B % C:
        raise InvalidInput("lattice is not an O-ideal")
    a = A // C
    return IdealLat(scale * C, a, O.bO - 2 * (B // C))


def _generators(x, O):
    """Integral generators a and (bO - b)/2 + tau of the lattice part of x."""
    return AlgInt(x.a, 0), AlgInt((O.bO - x.b) // 2, 1)


def ideal_from_form(Q, O):
    if Q.disc != O.D:
        raise DiscMismatch(f"{Q} has discriminant {Q.disc}, expected {O.D}")
    if not Q.is_primitive():
        raise InvalidInput(f"{Q} is not primitive")
    return IdealLat(Fraction(1, Q.a), Q.a, Q.b)


def ideal_mul(x, y, O):
    gens = [O.mul(u, v) for u in _generators(x, O) for v in _generators(y, O)]
    A, B, C = _hnf((g.x, g.y) for g in gens)
    return _lattice_to_ideal(x.scale * y.scale, A, B, C, O)


def ideal_conj(x):
    return IdealLat(x.scale, x.a, -x.b)


def ideal_norm(x):
    return x.scale * x.scale * x.a


def ideal_inv(x, O):
    return IdealLat(1 / (x.scale * x.a), x.a, -x.b)


def principal_ideal(nu, O, scale=1):
    """scale * nu * O for a nonzero nu in O."""
    if nu.x == 0 and nu.y == 0:
        raise InvalidInput("the zero element generates no ideal")
    gens = [nu, O.mul(nu, AlgInt(0, 1))]
    A, B, C = _hnf((g.x, g.y) for g in gens)
    return _lattice_to_ideal(Fraction(scale), A, B, C, O)


def is_prime_to(x, m):
    n = ideal_norm(x)
    return gcd(n.numerator, m) == 1 and gcd(n.denominator, m) == 1


@dataclass(frozen=True)
class ScaledAlgInt:
    """scale * nu with nu in O."""

    scale: Fraction
    nu: AlgInt


def principal_gen(x, O):
    """A generator of x, or None when x is not principal.

    Norms of m*a + n*beta in the lattice part are a * (a, -b, c)(m, n), so a
    generator exists iff (a, -b, c) is properly equivalent to the principal
    form, and reduction hands back the vector (m, n) representing 1.
    """
    c = (x.b * x.b - O.D) // (4 * x.a)
    R, gamma = reduce(Form(x.a, -x.b, c))
    if R != O.principal_form():
        return None
    m, n = gamma.p, gamma.r
    nu = AlgInt(m * x.a + n * (O.bO - x.b) // 2, n)
    return ScaledAlgInt(x.scale, nu)


def congruence_class_mod_NO(nu, N, O):
    if N < 1:
        raise InvalidInput(f"modulus must be positive, got {N}")
    if nu.y % N:
        return None
    return nu.x % N


def unit_group(O):
    """Units of O in {1, tau_O} coordinates."""
    if O.D == -4:
        return [AlgInt(1, 0), AlgInt(-1, 0), AlgInt(0, 1), AlgInt(0, -1)]
    if O.D == -3:
        return [AlgInt(1, 0), AlgInt(-1, 0), AlgInt(0, 1), AlgInt(0, -1), AlgInt(-1, -1), AlgInt(1, 1)]
    return [AlgInt(1, 0), AlgInt(-1, 0)]
