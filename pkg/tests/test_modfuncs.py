import random
from fractions import Fraction
from math import gcd
from types import SimpleNamespace

import pytest

from arithmetic_apps.kronecker import find_split
from classgroups.level import LevelStructure, gamma_g_contains
from exact_algebra.polynomials import IntPoly
from modfuncs.minpoly import minpoly_over_Q, poly_eval_check, poly_from_conjugates
from modfuncs.siegel import InvariantSpec, SiegelIndex, conjugate_values, invariant_value, siegel
from numerics.precision import mobius, rel_log10, sqrt_negative
from orders.ideals import order_from_disc
from quadforms.forms import UniMat, apply, lift_sl2
from utils.errors import InvalidInput
from utils.reference_tables import find_reference, proportional_factor

TRIVIAL_2 = LevelStructure(2, (1,))
TRIVIAL_3 = LevelStructure(3, (1,))


def tolerance(ctx):
    return -(ctx.digits - 30)


def random_tau(ctx, rng):
    return ctx.from_fraction(Fraction(rng.randint(-50, 50), 100), Fraction(rng.randint(50, 200), 100))


def test_siegel_index_is_reduced_mod_one():
    v = SiegelIndex(Fraction(3, 2), Fraction(-1, 3))
    assert (v.v1, v.v2) == (Fraction(1, 2), Fraction(2, 3))
    with pytest.raises(InvalidInput):
        SiegelIndex(1, 2)
    assert SiegelIndex(0, Fraction(1, 2)).times(UniMat(1, 0, 2, 1)) == SiegelIndex(1, Fraction(1, 2))


@pytest.mark.parametrize("level, e, orbit", [
    (TRIVIAL_2, 12, (1,)),
    (TRIVIAL_3, 12, (1,)),
    (LevelStructure(5, (1,)), 60, (1,)),
    (LevelStructure(7, (1, 2, 4)), 84, (1, 2, 3)),
    (LevelStructure.full(5), 60, (1, 2)),
])
def test_invariant_spec_for_level(level, e, orbit):
    spec = InvariantSpec.for_level(level)
    assert (spec.e, spec.orbit) == (e, orbit)


def test_invariant_spec_validation():
    with pytest.raises(InvalidInput):
        InvariantSpec(2, 11, (1,))
    with pytest.raises(InvalidInput):
        InvariantSpec(1, 12, (0,))
    with pytest.raises(InvalidInput):
        InvariantSpec(4, 24, (2,))


def test_siegel_is_finite_and_nonzero(ctx):
    value = siegel(SiegelIndex(0, Fraction(1, 2)), ctx.from_int(0, 2), ctx)
    assert -10 < value.log10_abs() < 10


def test_siegel_sign_symmetry(ctx):
    rng = random.Random(11)
    for _ in range(50):
        tau = random_tau(ctx, rng)
        for N in (3, 5):
            for u in range(1, N):
                lhs = siegel(SiegelIndex(0, Fraction(u, N)), tau, ctx) ** 12
                rhs = siegel(SiegelIndex(0, Fraction(N - u, N)), tau, ctx) ** 12
                assert rel_log10(lhs, rhs) < tolerance(ctx)


def test_principal_value_is_real(ctx):
    O = order_from_disc(-27)
    value = siegel(SiegelIndex(0, Fraction(1, 2)), O.tau(ctx), ctx) ** 12
    assert abs(value.im) * 10 ** 40 < abs(value.re)


def test_invariant_value_single_factor(ctx):
    spec = InvariantSpec.for_level(TRIVIAL_2)
    tau = ctx.from_fraction(Fraction(1, 7), Fraction(3, 2))
    assert invariant_value(spec, tau, ctx) == siegel(SiegelIndex(0, Fraction(1, 2)), tau, ctx) ** 12


@pytest.mark.parametrize("level", [TRIVIAL_2, TRIVIAL_3])
def test_invariant_is_translation_invariant(ctx, level):
    spec = InvariantSpec.for_level(level)
    rng = random.Random(level.N)
    for _ in range(5):
        tau = random_tau(ctx, rng)
        assert rel_log10(invariant_value(spec, tau + 1, ctx), invariant_value(spec, tau, ctx)) < tolerance(ctx)


@pytest.mark.parametrize("level, gammas", [
    (TRIVIAL_2, [UniMat(1, 0, 2, 1), UniMat(3, 2, 4, 3), UniMat(1, 2, 0, 1)]),
    (TRIVIAL_3, [UniMat(1, 0, 3, 1), UniMat(-2, 3, -3, 4), UniMat(1, 0, -3, 1)]),
])
def test_invariant_is_modular_for_principal_congruence_subgroup(ctx, level, gammas):
    spec = InvariantSpec.for_level(level)
    tau = ctx.from_fraction(Fraction(1, 10), 2)
    base = invariant_value(spec, tau, ctx)
    for gamma in gammas:
        assert gamma.mod(level.N) == (1, 0, 0, 1)
        assert rel_log10(invariant_value(spec, mobius(gamma, tau), ctx), base) < tolerance(ctx)


def random_gamma_g(rng, level, bound=50):
    """A random element of Gamma_G with every entry at most bound in absolute value."""
    while True:
        r = level.N * rng.randint(-(bound // level.N), bound // level.N)
        s = rng.randint(-bound, bound)
        if r == 0:
            if abs(s) != 1:
                continue
            gamma = UniMat(s, rng.randint(-bound, bound), 0, s)
        else:
            if gcd(r, s) != 1:
                continue
            choices = [p for p in range(-bound, bound + 1) if (p * s - 1) % r == 0 and abs((p * s - 1) // r) <= bound]
            if not choices:
                continue
            p = rng.choice(choices)
            gamma = UniMat(p, (p * s - 1) // r, r, s)
        if gamma_g_contains(gamma, level):
            return gamma


@pytest.mark.parametrize("level", [TRIVIAL_2, TRIVIAL_3])
def test_invariant_is_modular_for_random_gamma_g(ctx200, level):
    spec = InvariantSpec.for_level(level)
    rng = random.Random(50 + level.N)
    for _ in range(20):
        gamma = random_gamma_g(rng, level)
        assert max(abs(gamma.p), abs(gamma.q), abs(gamma.r), abs(gamma.s)) <= 50
        if gamma.r == 0:
            tau = random_tau(ctx200, rng)
        else:
            # r * tau + s = +-i, so tau and gamma(tau) both have imaginary part 1/|r|
            tau = ctx200.from_fraction(Fraction(-gamma.s, gamma.r), Fraction(1, abs(gamma.r)))
        moved = invariant_value(spec, mobius(gamma, tau), ctx200)
        assert rel_log10(moved, invariant_value(spec, tau, ctx200)) < -100


def test_conjugate_value_of_principal_class(ctx, class_groups):
    CG = class_groups(-27, 2)
    spec = InvariantSpec.for_level(CG.level)
    values = conjugate_values(CG.order, CG.level, spec, CG, ctx)
    assert len(values) == 3
    assert rel_log10(values[0], invariant_value(spec, CG.order.tau(ctx), ctx)) < tolerance(ctx)
    for i in range(3):
        for j in range(i + 1, 3):
            assert rel_log10(values[i], values[j]) > -5


@pytest.mark.parametrize("D, N", [(-27, 2), (-200, 3)])
def test_conjugate_values_do_not_depend_on_representative(ctx, class_groups, D, N):
    CG = class_groups(D, N)
    spec = InvariantSpec.for_level(CG.level)
    rng = random.Random(N)
    moved = []
    for Q in CG.reps:
        t = rng.choice(CG.level.G)
        gamma = lift_sl2(t, rng.randrange(N), 0, pow(t, -1, N), N) @ UniMat.translation(rng.randint(-2, 2))
        moved.append(apply(Q, gamma))
    base = conjugate_values(CG.order, CG.level, spec, CG, ctx)
    other = conjugate_values(CG.order, CG.level, spec, SimpleNamespace(reps=moved), ctx)
    for x, y in zip(base, other):
        assert rel_log10(x, y) < tolerance(ctx)


@pytest.mark.parametrize("p", [7, 13])
def test_value_at_split_class_matches_direct_evaluation(ctx, class_groups, p):
    CG = class_groups(-27, 2)
    spec = InvariantSpec.for_level(CG.level)
    split = find_split(-27, p)
    values = conjugate_values(CG.order, CG.level, spec, CG, ctx)
    omega_over_p = (sqrt_negative(-27, ctx) + split.s).scale(Fraction(1, 2 * p))
    direct = invariant_value(spec, omega_over_p, ctx)
    assert rel_log10(values[CG.class_of(split.split_form)], direct) < tolerance(ctx)


def test_conjugate_values_reject_bad_inputs(ctx, class_groups):
    spec = InvariantSpec.for_level(TRIVIAL_2)
    with pytest.raises(InvalidInput):
        conjugate_values(order_from_disc(-4), TRIVIAL_2, spec, None, ctx)
    CG = class_groups(-200, 3)
    with pytest.raises(InvalidInput):
        conjugate_values(CG.order, CG.level, spec, CG, ctx)


def test_poly_eval_check_examples(ctx):
    F = IntPoly((1, 0, 1))
    assert poly_eval_check(F, ctx.i(), ctx) == 0
    assert abs(poly_eval_check(F, ctx.one(), ctx) - 2) < 1e-9


def test_poly_from_conjugates(ctx):
    F, residual = poly_from_conjugates([ctx.from_int(0, 1), ctx.from_int(2, 3)], ctx)
    assert F == IntPoly((13, -4, 14, -4, 1))
    assert residual < Fraction(1, 10 ** 10)


def test_minpoly_for_minus_27_level_2(ctx200, class_groups):
    CG = class_groups(-27, 2)
    spec = InvariantSpec.for_level(CG.level)
    value = minpoly_over_Q(CG.order, CG.level, spec, CG, ctx200)
    F = value.minpoly
    assert F.degree == 6
    assert F.is_monic()
    assert F.parity() == "even"
    row = find_reference(-27, 2, (1,))
    assert proportional_factor(F, row.polynomial) == 1
    assert F == row.polynomial
    assert poly_eval_check(row.polynomial, value.generator, ctx200) < 1e-20
    assert row.misprinted
    assert proportional_factor(F, row.printed) is None
    assert value.residual < Fraction(1, 10 ** 10)


def test_doubling_digits_keeps_the_rounded_polynomial(ctx200, class_groups):
    CG = class_groups(-27, 2)
    spec = InvariantSpec.for_level(CG.level)
    first = minpoly_over_Q(CG.order, CG.level, spec, CG, ctx200)
    second = minpoly_over_Q(CG.order, CG.level, spec, CG, ctx200.doubled())
    assert second.digits_used >= 400
    assert second.minpoly == first.minpoly
    assert second.residual < Fraction(1, 10 ** 10)
