# Numerics package
from numerics.precision import (
    DEFAULT_DIGITS,
    DEFAULT_GUARD,
    DEFAULT_MAX_DIGITS,
    BigComplex,
    PrecCtx,
    cx_exp2pii,
    digits_for_magnitude,
    mobius,
    rel_log10,
    round_to_int,
    sqrt_negative,
    with_adaptive_precision,
)
