"""
Run configuration: command-line flags first, then FORMCLASS_* environment
variables, then defaults.
"""

import os
from dataclasses import dataclass
from pathlib import Path

from numerics.precision import DEFAULT_DIGITS, DEFAULT_GUARD, DEFAULT_MAX_DIGITS, MIN_DIGITS, PrecCtx
from exact_algebra.integers import DEFAULT_BUDGET_SECONDS
from utils.errors import InvalidInput

DEFAULT_CACHE_DIR = "~/.cache/formclass"
OUTPUT_FORMATS = ("json", "text")


def _env_int(environ, name, default):
    raw = environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise InvalidInput(f"{name} must be an integer, got {raw!r}") from exc


@dataclass(frozen=True)
class RunConfig:
    digits: int = DEFAULT_DIGITS
    guard: int = DEFAULT_GUARD
    max_digits: int = DEFAULT_MAX_DIGITS
    cache_dir: Path = Path(DEFAULT_CACHE_DIR).expanduser()
    output_format: str = "json"
    factor_budget_seconds: float = DEFAULT_BUDGET_SECONDS
    verbosity: int = 0
    use_cache: bool = True

    def __post_init__(self):
        if not MIN_DIGITS <= self.digits <= self.max_digits:
            raise InvalidInput(f"digits must lie in [{MIN_DIGITS}, {self.max_digits}], got {self.digits}")
        if self.output_format not in OUTPUT_FORMATS:
            raise InvalidInput(f"output format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}")
        if self.factor_budget_seconds <= 0:
            raise InvalidInput("factor budget must be positive")

    @classmethod
    def from_args(cls, args, environ=None):
        environ = os.environ if environ is None else environ
        max_digits = _env_int(environ, "FORMCLASS_MAX_DIGITS", DEFAULT_MAX_DIGITS)
        digits = getattr(args, "digits", None)
        if digits is None:
            digits = _env_int(environ, "FORMCLASS_DIGITS", DEFAULT_DIGITS)
        cache_dir = getattr(args, "cache_dir", None) or environ.get("FORMCLASS_CACHE") or DEFAULT_CACHE_DIR
        budget = getattr(args, "factor_budget", None)
        return cls(
            digits=digits,
            max_digits=max_digits,
            cache_dir=Path(cache_dir).expanduser(),
            output_format=getattr(args, "format", None) or "json",
            factor_budget_seconds=DEFAULT_BUDGET_SECONDS if budget is None else budget,
            verbosity=getattr(args, "verbose", 0) or 0,
            use_cache=not getattr(args, "no_cache", False),
        )

    def prec_ctx(self):
        return PrecCtx(self.digits, self.guard)
