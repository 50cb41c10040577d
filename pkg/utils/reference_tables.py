"""
Published minimal polynomials of level-N class invariants, kept in
data/minimal_polynomials.csv and used as oracles.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import pandas as pd

from exact_algebra.polynomials import IntPoly
from quadforms.forms import Form
from utils.errors import InvalidInput

logger = logging.getLogger(__name__)

DATA_PATH = Path(__file__).resolve().parent.parent / "data" / "minimal_polynomials.csv"


@dataclass(frozen=True)
class ReferenceRow:
    field: str
    disc: int
    level: int
    subgroup: tuple
    classes: tuple
    polynomial: IntPoly
    disc_sign: int
    disc_factors: tuple
    printed: IntPoly = None
    note: str = ""

    @property
    def misprinted(self):
        """The published coefficients differ from the stored reference polynomial."""
        return self.printed is not None and self.printed != self.polynomial

    def discriminant(self):
        value = self.disc_sign
        for p, e in self.disc_factors:
            value *= p ** e
        return value


def _parse_factors(text):
    sign, factors = 1, []
    for part in text.split("*"):
        part = part.strip()
        if part == "-1":
            sign = -sign
            continue
        base, _, exp = part.partition("^")
        factors.append((int(base), int(exp or 1)))
    return sign, tuple(factors)


def _parse_coefficients(text):
    return IntPoly(tuple(int(c) for c in text.split()))


@lru_cache(maxsize=4)
def load_reference_table(path=DATA_PATH):
    """Rows of the reference CSV; every column is read as text so big integers survive."""
    df = pd.read_csv(path, dtype=str, keep_default_na=False)
    if df.empty:
        raise InvalidInput(f"{path} is empty")
    rows = []
    for _, row in df.iterrows():
        sign, factors = _parse_factors(row["disc_factors"])
        rows.append(ReferenceRow(
            field=row["field"],
            disc=int(row["disc"]),
            level=int(row["level"]),
            subgroup=tuple(int(t) for t in row["subgroup"].split()),
            classes=tuple(Form(*(int(x) for x in c.split())) for c in row["classes"].split(";")),
            polynomial=_parse_coefficients(row["coefficients"]),
            disc_sign=sign,
            disc_factors=factors,
            printed=_parse_coefficients(row.get("printed_coefficients") or row["coefficients"]),
            note=row.get("note", ""),
        ))
    logger.debug("🔍 loaded %d reference rows from %s", len(rows), path)
    return tuple(rows)


def find_reference(D, N, G):
    for row in load_reference_table():
        if row.disc == D and row.level == N and row.subgroup == tuple(G):
            return row
    return None


def proportional_factor(F, reference):
    """The rational k with reference = k * F, or None when they are not proportional."""
    if F.degree != reference.degree or F.degree < 0:
        return None
    k = Fraction(reference.lc, F.lc)
    if all(Fraction(r) == k * f for f, r in zip(F.coeffs, reference.coeffs)):
        return k
    return None


def compare_with_reference(F, D, N, G):
    row = find_reference(D, N, G)
    if row is None:
        return None
    k = proportional_factor(F, row.polynomial)
    return {
        "field": row.field,
        "matches": k is not None,
        "factor": None if k is None else str(k),
        "printed_matches": proportional_factor(F, row.printed) is not None,
        "note": row.note,
    }
