"""
Binary quadratic forms ax^2 + bxy + cy^2 with the right action of SL2(Z),
Gauss reduction, automorph groups and CM roots.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import gmpy2

from numerics.precision import sqrt_negative
from utils.errors import BadDiscriminant, InvalidInput
from utils.helpers import int_from_json, int_to_json

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Form:
    """An integral binary quadratic form (a, b, c)."""

    a: int
    b: int
    c: int

    @classmethod
    def principal(cls, D):
        """The principal form (1, b_O, c_O) of discriminant D."""
        if D % 4 == 1:
            return cls(1, 1, (1 - D) // 4)
        return cls(1, 0, -D // 4)

    @classmethod
    def from_ab(cls, a, b, D):
        num = b * b - D
        if num % (4 * a):
            raise InvalidInput(f"b^2 - D is not divisible by 4a for a={a}, b={b}, D={D}")
        return cls(a, b, num // (4 * a))

    @property
    def disc(self):
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def is_primitive(self):
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_positive_definite(self):
        return self.disc < 0 and self.a > 0

    def to_json(self):
        return [int_to_json(self.a), int_to_json(self.b), int_to_json(self.c)]

    @classmethod
    def from_json(cls, triple):
        a, b, c = (int_from_json(x) for x in triple)
        return cls(a, b, c)

    def pretty(self):
        """Human readable rendering such as 7x^2-xy+y^2."""
        parts = []
        for coeff, mono in ((self.a, "x^2"), (self.b, "xy"), (self.c, "y^2")):
            if coeff == 0:
                continue
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            text = mono if mag == 1 else f"{mag}{mono}"
            parts.append((sign, text))
        if not parts:
            return "0"
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        return out + "".join(f"{s}{t}" for s, t in parts[1:])

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


@dataclass(frozen=True)
class UniMat:
    """A matrix [[p, q], [r, s]] of determinant one."""

    p: int
    q: int
    r: int
    s: int

    def __post_init__(self):
        if self.p * self.s - self.q * self.r != 1:
            raise InvalidInput(f"determinant of {self.entries()} is not 1")

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, k=1):
        return cls(1, k, 0, 1)

    @classmethod
    def flip(cls):
        return cls(0, -1, 1, 0)

    def entries(self):
        return (self.p, self.q, self.r, self.s)

    def __matmul__(self, other):
        return UniMat(
            self.p * other.p + self.q * other.r,
            self.p * other.q + self.q * other.s,
            self.r * other.p + self.s * other.r,
            self.r * other.q + self.s * other.s,
        )

    def __neg__(self):
        return UniMat(-self.p, -self.q, -self.r, -self.s)

    def inverse(self):
        return UniMat(self.s, -self.q, -self.r, self.p)

    def mod(self, N):
        return (self.p % N, self.q % N, self.r % N, self.s % N)

    def j(self, tau):
        """Automorphy factor r*tau + s."""
        return tau * self.r + self.s


@dataclass(frozen=True)
class SignedForm:
    """Q (sign +1) or the negative definite form -Q (sign -1)."""

    form: Form
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidInput(f"sign must be +1 or -1, got {self.sign}")

    @property
    def coefficients(self):
        return (self.sign * self.form.a, self.sign * self.form.b, self.sign * self.form.c)

    def apply(self, gamma):
        return SignedForm(apply(self.form, gamma), self.sign)

    def negate(self):
        return SignedForm(self.form, -self.sign)


def disc(Q):
    return Q.disc


def in_level_set(Q, D, N):
    """Membership in Q(D, N): discriminant D, primitive, a > 0 and gcd(a, N) = 1."""
    return Q.disc == D and Q.a > 0 and Q.is_primitive() and gcd(Q.a, N) == 1


def apply(Q, gamma):
    """The right action Q^gamma(x, y) = Q(p x + q y, r x + s y)."""
    a, b, c = Q.a, Q.b, Q.c
    p, q, r, s = gamma.entries()
    return Form(
        a * p * p + b * p * r + c * r * r,
        2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
        a * q * q + b * q * s + c * s * s,
    )


def reduce(Q):
    """Gauss reduction: returns (R, gamma) with apply(Q, gamma) == R and R reduced."""
    if not Q.is_positive_definite():
        raise InvalidInput(f"{Q} is not positive definite")
    a, b, c = Q.a, Q.b, Q.c
    gamma = UniMat.identity()
    while True:
        k = (a - b) // (2 * a)
        if k:
            a, b, c = a, b + 2 * a * k, a * k * k + b * k + c
            gamma = gamma @ UniMat.translation(k)
        if a > c or (a == c and b < 0):
            a, b, c = c, -b, a
            gamma = gamma @ UniMat.flip()
            continue
        return Form(a, b, c), gamma


def is_reduced(Q):
    a, b, c = Q.a, Q.b, Q.c
    if not (-a < b <= a <= c):
        return False
    return not (a == c and b < 0)


def reduced_reps(D):
    """All primitive reduced forms of discriminant D, sorted; one per SL2(Z)-class."""
    if D >= 0 or D % 4 not in (0, 1):
        raise BadDiscriminant(f"{D} is not a negative discriminant")
    reps = []
    a_max = int(gmpy2.isqrt(-D // 3))
    for a in range(1, a_max + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            form = Form(a, b, c)
            if form.is_primitive():
                reps.append(form)
    reps.sort()
    return reps


def automorphs(Q):
    """The stabilizer of Q in SL2(Z), sorted by entries."""
    R, gamma = reduce(Q)
    found = []
    for p, q, r, s in itertools.product((-1, 0, 1), repeat=4):
        if p * s - q * r != 1:
            continue
        alpha = UniMat(p, q, r, s)
        if apply(R, alpha) == R:
            found.append(alpha)
    if R != Q:
        inv = gamma.inverse()
        found = [gamma @ alpha @ inv for alpha in found]
    found.sort(key=UniMat.entries)
    return found


def sl2_equivalent(Q, R):
    """A matrix gamma with apply(Q, gamma) == R, or None when Q and R are inequivalent."""
    Q0, g1 = reduce(Q)
    R0, g2 = reduce(R)
    if Q0 != R0:
        return None
    return g1 @ g2.inverse()


def root(Q, ctx):
    """omega_Q = (-b + sqrt(D)) / 2a, the zero of Q(x, 1) in the upper half plane."""
    if not Q.is_positive_definite():
        raise InvalidInput(f"{Q} is not positive definite")
    sqrt_d = sqrt_negative(Q.disc, ctx)
    return (sqrt_d - Q.b).scale(Fraction(1, 2 * Q.a))


def first_column_mod(gamma, N):
    return (gamma.p % N, gamma.r % N)


def lift_sl2(p, q, r, s, N):
    """A matrix of SL2(Z) reducing to [[p, q], [r, s]] modulo N."""
    if N < 1:
        raise InvalidInput(f"modulus must be positive, got {N}")
    p, q, r, s = p % N, q % N, r % N, s % N
    if (p * s - q * r - 1) % N:
        raise InvalidInput(f"[[{p}, {q}], [{r}, {s}]] is not in SL2(Z/{N}Z)")
    if N == 1:
        return UniMat.identity()
    r1 = r if r else N
    k = 0
    while gcd(p + k * N, r1) != 1:
        k += 1
    p1 = p + k * N
    g, u, v = gmpy2.gcdext(p1, r1)
    s0, q0 = int(u), -int(v)
    for m in range(N):
        if (q0 + m * p1 - q) % N == 0 and (s0 + m * r1 - s) % N == 0:
            return UniMat(p1, q0 + m * p1, r1, s0 + m * r1)
    raise InvalidInput(f"no lift found for [[{p}, {q}], [{r}, {s}]] mod {N}")
