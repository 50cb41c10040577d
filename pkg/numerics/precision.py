"""
Fixed-point arbitrary-precision complex arithmetic.

Values are stored as pairs of scaled integers (gmpy2.mpz) sharing a binary
scale of ``2**prec``. Ring operations are exact up to one rounding per
primitive; transcendental kernels are evaluated by mpmath in a private
context and converted back to fixed point, so results depend only on the
inputs and the precision, never on platform floats.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpz
from mpmath.ctx_mp import MPContext

from utils.errors import DivideByZero, InvalidInput, NonNegativeInput, PrecisionExhausted, ResidualTooLarge

logger = logging.getLogger(__name__)

DEFAULT_DIGITS = 200
DEFAULT_GUARD = 20
DEFAULT_MAX_DIGITS = 3200
MIN_DIGITS = 50

# Extra bits carried by the mpmath kernels before conversion to fixed point.
_KERNEL_SLACK = 24


def _round_shift(x, k):
    """Round x / 2**k to the nearest integer (halves go up)."""
    if k <= 0:
        return x << -k
    return (x + (mpz(1) << (k - 1))) >> k


def _round_div(n, d):
    """Round n / d to the nearest integer for d > 0."""
    return (2 * n + d) // (2 * d)


@lru_cache(maxsize=32)
def _kernel_context(bits):
    mp = MPContext()
    mp.prec = bits + _KERNEL_SLACK
    return mp


@dataclass(frozen=True)
class PrecCtx:
    """Decimal working precision plus guard digits."""

    digits: int = DEFAULT_DIGITS
    guard: int = DEFAULT_GUARD

    def __post_init__(self):
        if self.digits < MIN_DIGITS:
            raise InvalidInput(f"digits must be at least {MIN_DIGITS}, got {self.digits}")
        if self.guard < 0:
            raise InvalidInput(f"guard must be non-negative, got {self.guard}")

    @property
    def bits(self):
        # ceil((digits + guard) * log2(10)) with a few spare bits
        return -(-(self.digits + self.guard) * 33220 // 10000) + 8

    def doubled(self):
        return PrecCtx(self.digits * 2, self.guard)

    def with_digits(self, digits):
        return PrecCtx(digits, self.guard)

    def kernel(self):
        return _kernel_context(self.bits)

    def zero(self):
        return BigComplex(mpz(0), mpz(0), self.bits)

    def one(self):
        return self.from_int(1)

    def i(self):
        return BigComplex(mpz(0), mpz(1) << self.bits, self.bits)

    def from_int(self, n, imag=0):
        return BigComplex(mpz(n) << self.bits, mpz(imag) << self.bits, self.bits)

    def from_fraction(self, value, imag=0):
        value, imag = Fraction(value), Fraction(imag)
        re = _round_div(mpz(value.numerator) << self.bits, mpz(value.denominator))
        im = _round_div(mpz(imag.numerator) << self.bits, mpz(imag.denominator))
        return BigComplex(re, im, self.bits)

    def from_mpc(self, value):
        mp = self.kernel()
        value = mp.mpc(value)
        re = mpz(int(mp.nint(mp.ldexp(value.real, self.bits))))
        im = mpz(int(mp.nint(mp.ldexp(value.imag, self.bits))))
        return BigComplex(re, im, self.bits)

    def from_json(self, parts):
        """Inverse of BigComplex.to_json."""
        mp = self.kernel()
        re, im = parts
        return self.from_mpc(mp.mpc(mp.mpf(re), mp.mpf(im)))


@dataclass(frozen=True)
class BigComplex:
    """A complex number re/2**prec + i*im/2**prec."""

    re: object
    im: object
    prec: int

    def _coerce(self, other):
        if isinstance(other, BigComplex):
            if other.prec != self.prec:
                raise InvalidInput(f"precision mismatch: {self.prec} vs {other.prec} bits")
            return other
        if isinstance(other, int):
            return BigComplex(mpz(other) << self.prec, mpz(0), self.prec)
        if isinstance(other, Fraction):
            re = _round_div(mpz(other.numerator) << self.prec, mpz(other.denominator))
            return BigComplex(re, mpz(0), self.prec)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return BigComplex(self.re + other.re, self.im + other.im, self.prec)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return BigComplex(self.re - other.re, self.im - other.im, self.prec)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return BigComplex(-self.re, -self.im, self.prec)

    def __mul__(self, other):
        if isinstance(other, int):
            return BigComplex(self.re * other, self.im * other, self.prec)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.prec
        re = _round_shift(self.re * other.re - self.im * other.im, p)
        im = _round_shift(self.re * other.im + self.im * other.re, p)
        return BigComplex(re, im, p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.prec
        d = other.re * other.re + other.im * other.im
        # |y| must exceed 2**(-p/2)
        if d <= (mpz(1) << p):
            raise DivideByZero("division by a numerically vanishing value")
        re = _round_div((self.re * other.re + self.im * other.im) << p, d)
        im = _round_div((self.im * other.re - self.re * other.im) << p, d)
        return BigComplex(re, im, p)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return BigComplex(mpz(1) << self.prec, mpz(0), self.prec) / (self ** -n)
        result = BigComplex(mpz(1) << self.prec, mpz(0), self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conj(self):
        return BigComplex(self.re, -self.im, self.prec)

    def abs_sq(self):
        """|x|**2 as a fixed-point real."""
        return BigComplex(_round_shift(self.re * self.re + self.im * self.im, self.prec), mpz(0), self.prec)

    def __abs__(self):
        return BigComplex(gmpy2.isqrt(self.re * self.re + self.im * self.im), mpz(0), self.prec)

    def scale(self, value):
        """Multiply by an exact rational."""
        value = Fraction(value)
        num, den = mpz(value.numerator), mpz(value.denominator)
        return BigComplex(_round_div(self.re * num, den), _round_div(self.im * num, den), self.prec)

    def real_part(self):
        return BigComplex(self.re, mpz(0), self.prec)

    def is_real(self):
        return self.im == 0

    def log10_abs(self):
        """Decimal logarithm of |x|; -inf for zero."""
        sq = int(self.re * self.re + self.im * self.im)
        if sq == 0:
            return -math.inf
        return math.log10(sq) / 2 - self.prec * math.log10(2)

    def to_mpc(self, mp=None):
        mp = mp or _kernel_context(self.prec)
        return mp.mpc(mp.ldexp(mp.mpf(int(self.re)), -self.prec), mp.ldexp(mp.mpf(int(self.im)), -self.prec))

    def to_str(self, digits=15):
        mp = _kernel_context(self.prec)
        return mp.nstr(self.to_mpc(mp), digits)

    def to_json(self, digits=60):
        mp = _kernel_context(self.prec)
        z = self.to_mpc(mp)
        return [mp.nstr(z.real, digits), mp.nstr(z.imag, digits)]

    def __str__(self):
        return self.to_str()


def rel_log10(x, y):
    """log10 of |x - y| / max(|x|, |y|); -inf when equal."""
    dx, dy = x.re - y.re, x.im - y.im
    diff = int(dx * dx + dy * dy)
    if diff == 0:
        return -math.inf
    scale = int(max(x.re * x.re + x.im * x.im, y.re * y.re + y.im * y.im))
    if scale == 0:
        return math.inf
    return (math.log10(diff) - math.log10(scale)) / 2


def cx_exp2pii(tau, ctx):
    """e^(2*pi*i*tau) computed from tau directly; fractional nome powers pass a scaled tau."""
    p = tau.prec
    mp = _kernel_context(p)
    frac = tau.re % (mpz(1) << p)  # real part mod 1, exact
    x = mp.ldexp(mp.mpf(int(frac)), -p)
    y = mp.ldexp(mp.mpf(int(tau.im)), -p)
    r = mp.exp(-2 * mp.pi * y)
    value = mp.mpc(r * mp.cospi(2 * x), r * mp.sinpi(2 * x))
    re = mpz(int(mp.nint(mp.ldexp(value.real, p))))
    im = mpz(int(mp.nint(mp.ldexp(value.imag, p))))
    return BigComplex(re, im, p)


def round_to_int(x, tol):
    """Nearest integer to x with the residual |x - n|; ResidualTooLarge when it is not below tol."""
    tol = Fraction(tol)
    if not 0 < tol < Fraction(1, 2):
        raise InvalidInput(f"tolerance must lie in (0, 1/2), got {tol}")
    p = x.prec
    n = _round_shift(x.re, p)
    dre = x.re - (n << p)
    dist = gmpy2.isqrt(dre * dre + x.im * x.im)
    residual = Fraction(int(dist), 1 << p)
    if residual >= tol:
        raise ResidualTooLarge(residual)
    return int(n), residual


def sqrt_negative(D, ctx):
    """i * sqrt(|D|) for D < 0."""
    if D >= 0:
        raise NonNegativeInput(f"expected a negative discriminant, got {D}")
    p = ctx.bits
    return BigComplex(mpz(0), gmpy2.isqrt(mpz(-D) << (2 * p)), p)


def mobius(gamma, tau):
    """(p*tau + q) / (r*tau + s) for a unimodular matrix gamma."""
    return (tau * gamma.p + gamma.q) / (tau * gamma.r + gamma.s)


def digits_for_magnitude(log10_bound, ctx, margin=30):
    """A context able to round integers of about 10**log10_bound exactly."""
    needed = int(math.ceil(max(log10_bound, 0))) + margin
    if needed <= ctx.digits:
        return ctx
    return ctx.with_digits(needed)


def with_adaptive_precision(fn, ctx, max_digits=DEFAULT_MAX_DIGITS):
    """Run fn(ctx), doubling digits on ResidualTooLarge until max_digits is passed."""
    current = ctx
    while True:
        try:
            return fn(current)
        except ResidualTooLarge as exc:
            if current.digits * 2 > max_digits:
                raise PrecisionExhausted(
                    f"rounding residual {float(exc.residual):.3e} still too large at {current.digits} digits"
                ) from exc
            logger.info("⚠️ residual %.3e at %d digits, retrying at %d", float(exc.residual),
                        current.digits, current.digits * 2)
            current = current.doubled()
