"""
End-to-end runs against the published minimal polynomials and the
two arithmetic applications. The full pipelines are marked slow.
"""

import pytest
from sympy import primerange

from arithmetic_apps.kronecker import check_conditions, verify_kronecker
from arithmetic_apps.representation import equivalence_harness
from classgroups.level import LevelStructure
from exact_algebra.integers import factor_int
from exact_algebra.polynomials import poly_disc
from modfuncs.minpoly import minpoly_over_Q, poly_eval_check
from modfuncs.siegel import InvariantSpec
from numerics.precision import PrecCtx
from utils.errors import ConditionViolated
from utils.reference_tables import load_reference_table, proportional_factor

ROWS = {(row.disc, row.level): row for row in load_reference_table()}

PUBLISHED = [
    # (D, N, classes, degree, digits)
    (-27, 2, 3, 6, 200),
    (-200, 3, 12, 24, 300),
    (-180, 2, 8, 16, 300),
]


def test_reference_table_has_every_row():
    assert set(ROWS) == {(-27, 2), (-200, 3), (-180, 2)}


def test_published_discriminant_of_first_row():
    row = ROWS[(-27, 2)]
    assert row.discriminant() == -(2 ** 166) * 3 ** 21 * 5 ** 12 * 11 ** 4 * 23 ** 4 * 47 ** 4 * 383 ** 4
    assert poly_disc(row.polynomial) == row.discriminant()


def test_first_row_misprint_is_recorded():
    row = ROWS[(-27, 2)]
    assert row.misprinted
    assert row.note
    assert row.polynomial.is_monic()
    assert row.printed.coeffs[0] == 4529848324 and row.printed.lc == 4
    assert row.printed.coeffs[1:-1] == row.polynomial.coeffs[1:-1]
    assert proportional_factor(row.polynomial, row.printed) is None
    assert not any(r.misprinted for key, r in ROWS.items() if key != (-27, 2))


@pytest.mark.slow
def test_misprinted_row_has_a_different_discriminant():
    row = ROWS[(-27, 2)]
    assert poly_disc(row.printed) != row.discriminant()


@pytest.mark.parametrize("D, N, count, degree, digits", PUBLISHED)
def test_published_classes(class_groups, D, N, count, degree, digits):
    CG = class_groups(D, N)
    row = ROWS[(D, N)]
    assert len(CG) == count
    assert len(row.classes) == count
    assert sorted(CG.class_of(Q) for Q in row.classes) == list(range(count))
    assert row.polynomial.degree == degree


@pytest.mark.slow
@pytest.mark.parametrize("D, N, count, degree, digits", PUBLISHED)
def test_published_discriminant_factorization(D, N, count, degree, digits):
    row = ROWS[(D, N)]
    disc = poly_disc(row.polynomial)
    assert disc == row.discriminant()
    factors = factor_int(disc).require_complete()
    assert factors.items() == sorted(row.disc_factors)


@pytest.mark.slow
@pytest.mark.parametrize("D, N, count, degree, digits", PUBLISHED)
def test_published_polynomial_annihilates_generator(class_groups, D, N, count, degree, digits):
    CG = class_groups(D, N)
    ctx = PrecCtx(digits)
    value = minpoly_over_Q(CG.order, CG.level, InvariantSpec.for_level(CG.level), CG, ctx)
    assert value.minpoly.degree == degree
    assert value.minpoly.parity() == "even"
    reference = ROWS[(D, N)].polynomial
    assert proportional_factor(value.minpoly, reference) == 1
    work = ctx.with_digits(value.digits_used)
    assert poly_eval_check(reference, value.generator, work) < 1e-20


def admissible_primes(D, L, bound):
    primes = []
    for p in primerange(2, bound):
        try:
            check_conditions(D, L, int(p))
        except ConditionViolated:
            continue
        primes.append(int(p))
    return primes


def test_admissible_primes_for_minus_27():
    assert admissible_primes(-27, LevelStructure(2, (1,)), 100) == [7, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97]


@pytest.mark.slow
def test_kronecker_congruence_below_100(class_groups):
    CG = class_groups(-27, 2)
    for p in admissible_primes(-27, CG.level, 100):
        report = verify_kronecker(-27, CG.level, p, CG=CG, max_digits=12800)
        assert report.verdict, f"p={p} fails at k={report.failing}"


@pytest.mark.slow
@pytest.mark.parametrize("n, N", [(45, 2), (50, 3)])
def test_prime_representation_harness(n, N):
    report = equivalence_harness(n, LevelStructure(N, (1,)), 20000, ctx=PrecCtx(300))
    assert report.ok
    assert report.agree > 1000
    if n == 45:
        # 181 = 1 + 45 * 2**2 divides the discriminant of F and is skipped
        assert 181 in report.excluded
        assert all(p != 181 for p, _, _ in report.represented)
        assert (349, 13, 2) in report.represented
