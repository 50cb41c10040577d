"""
Minimal polynomials over Q of alpha = sqrt(dK) * h(tau_O), reconstructed
from the numerical conjugates and rounded to integers.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from exact_algebra.polynomials import IntPoly
from numerics.precision import (
    DEFAULT_MAX_DIGITS,
    rel_log10,
    round_to_int,
    sqrt_negative,
    with_adaptive_precision,
)
from modfuncs.siegel import conjugate_values
from utils.errors import NotPrimitive, VerificationFailed

logger = logging.getLogger(__name__)

ROUNDING_TOLERANCE = Fraction(1, 10 ** 10)


@dataclass
class AlgebraicValue:
    """A generator given by its conjugates together with the integer polynomial they annihilate."""

    degree: int
    conjugates: list
    minpoly: IntPoly
    residual: Fraction
    digits_used: int
    distinct: bool = True
    extra: dict = field(default_factory=dict)

    @property
    def generator(self):
        return self.conjugates[0]

    def to_json(self):
        payload = self.minpoly.to_json()
        payload["digits_used"] = self.digits_used
        payload["residual"] = f"{float(self.residual):.1e}"
        return payload


def real_quadratics_product(roots, ctx):
    """Coefficients (constant first) of prod (X - w)(X - conj w) as fixed-point reals."""
    poly = [ctx.one()]
    for w in roots:
        c0, c1 = w.abs_sq(), w.real_part() * -2
        out = [ctx.zero() for _ in range(len(poly) + 2)]
        for k, c in enumerate(poly):
            out[k] = out[k] + c * c0
            out[k + 1] = out[k + 1] + c * c1
            out[k + 2] = out[k + 2] + c
        poly = out
    return poly


def round_poly(coeffs, tol=ROUNDING_TOLERANCE):
    rounded, worst = [], Fraction(0)
    for c in coeffs:
        n, residual = round_to_int(c, tol)
        rounded.append(n)
        worst = max(worst, residual)
    return IntPoly(tuple(rounded)), worst


def poly_from_conjugates(roots, ctx, tol=ROUNDING_TOLERANCE):
    """The integer polynomial prod (X - w)(X - conj w), or ResidualTooLarge."""
    return round_poly(real_quadratics_product(roots, ctx), tol)


def conjugates_distinct(roots, ctx):
    everything = list(roots) + [w.conj() for w in roots]
    limit = -ctx.digits / 2
    for i in range(len(everything)):
        for j in range(i + 1, len(everything)):
            if rel_log10(everything[i], everything[j]) < limit:
                return False
    return True


def poly_eval_check(F, alpha, ctx):
    """|F(alpha)| / (max |coeff| * max(1, |alpha|)^deg) as an mpmath real."""
    mp = ctx.kernel()
    acc = ctx.zero()
    for c in reversed(F.coeffs):
        acc = acc * alpha + c
    top = F.max_abs_coeff()
    if top == 0:
        return mp.mpf(0)
    log_num = acc.log10_abs()
    if log_num == -math.inf:
        return mp.mpf(0)
    log_den = math.log10(top) + F.degree * max(0.0, alpha.log10_abs())
    return mp.power(10, mp.mpf(log_num - log_den))


def _synthesize(O, L, spec, CG, ctx):
    values = conjugate_values(O, L, spec, CG, ctx)
    sqrt_dk = sqrt_negative(O.dK, ctx)
    roots = [sqrt_dk * v for v in values]
    F, residual = poly_from_conjugates(roots, ctx)
    return AlgebraicValue(
        degree=F.degree,
        conjugates=roots + [w.conj() for w in roots],
        minpoly=F,
        residual=residual,
        digits_used=ctx.digits,
        distinct=conjugates_distinct(roots, ctx),
    )


def minpoly_over_Q(O, L, spec, CG, ctx, max_digits=DEFAULT_MAX_DIGITS):
    current = ctx
    while True:
        value = with_adaptive_precision(lambda c: _synthesize(O, L, spec, CG, c), current, max_digits)
        if value.distinct:
            break
        if value.digits_used * 2 > max_digits:
            raise NotPrimitive(f"conjugates collide at {value.digits_used} digits; the invariant does not generate")
        logger.info("⚠️ conjugate collision at %d digits, doubling", value.digits_used)
        current = ctx.with_digits(value.digits_used * 2)
    if value.degree != 2 * len(CG):
        raise VerificationFailed(f"degree {value.degree} differs from 2*{len(CG)}")
    check = poly_eval_check(value.minpoly, value.generator, current.with_digits(value.digits_used))
    if check > current.kernel().power(10, -value.digits_used // 2):
        raise VerificationFailed(f"F(alpha) relative residual {check} too large")
    logger.info("✅ degree %d polynomial at %d digits, residual %.1e", value.degree, value.digits_used,
                float(value.residual))
    return value
