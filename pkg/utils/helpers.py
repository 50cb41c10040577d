"""
Utility functions shared by the library and the command handlers.
Contains JSON encoding of big numbers, argument validation and parsing.
"""

import json
from fractions import Fraction
from math import gcd

from utils.errors import InvalidInput

JSON_SAFE_INT = 2 ** 53


def int_to_json(n):
    """Plain int when it survives a JSON round trip through doubles, decimal string otherwise."""
    n = int(n)
    return n if abs(n) < JSON_SAFE_INT else str(n)


def int_from_json(value):
    return int(value)


def fraction_to_json(value):
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def fraction_from_json(text):
    return Fraction(text)


def dumps(payload):
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def validate_args(data, required_fields):
    """
    Validates that required fields are present in the provided data.

    Args:
        data (dict): The parsed arguments
        required_fields (list): List of required field names

    Returns:
        tuple: (is_valid, missing_fields)
    """
    missing_fields = [field for field in required_fields if data.get(field) is None]
    return len(missing_fields) == 0, missing_fields


def unit_residues(N):
    """The residues 0 <= t < N prime to N (just [0] for N = 1)."""
    return [t for t in range(N) if gcd(t, N) == 1] if N > 1 else [0]


def parse_subgroup(text, N):
    """
    Parses a subgroup of (Z/NZ)^x given as 'trivial', 'full' or comma separated residues.

    Args:
        text (str): The user supplied description
        N (int): The level

    Returns:
        list: Sorted residues mod N (closure is checked by LevelStructure)
    """
    if not isinstance(text, str) or not text.strip():
        raise InvalidInput("subgroup must be 'trivial', 'full' or a list of residues")
    text = text.strip().lower()
    if text == "trivial":
        return [1 % N]
    if text == "full":
        return unit_residues(N)
    try:
        residues = sorted({int(part) % N for part in text.split(",") if part.strip()})
    except ValueError as exc:
        raise InvalidInput(f"cannot parse subgroup {text!r}") from exc
    if not residues:
        raise InvalidInput("subgroup is empty")
    return residues
