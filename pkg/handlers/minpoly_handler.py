"""
Command handler for minimal polynomial synthesis, with on-disk caching.
"""

import logging
import time

from cache.cache_manager import VERIFY_DIGITS
from classgroups.class_group import enumerate_classes
from classgroups.level import LevelStructure
from exact_algebra.integers import factor_int
from exact_algebra.polynomials import IntPoly, poly_disc
from modfuncs.minpoly import minpoly_over_Q
from modfuncs.siegel import InvariantSpec
from orders.ideals import order_from_disc
from utils.errors import InvalidInput
from utils.reference_tables import compare_with_reference

logger = logging.getLogger(__name__)


def resolve_disc(args):
    """D from --disc, or -4n from --n."""
    if getattr(args, "n", None) is not None:
        if args.n < 1:
            raise InvalidInput(f"n must be positive, got {args.n}")
        return -4 * args.n
    if getattr(args, "disc", None) is None:
        raise InvalidInput("one of --disc or --n is required")
    return args.disc


class MinpolyHandler:
    """Handles the minpoly command and serves cached polynomials to other handlers."""

    def __init__(self, config, cache_manager):
        self.config = config
        self.cache_manager = cache_manager

    def synthesize(self, D, level):
        cached = self.cache_manager.get_minpoly(D, level.N, level.G, self.config.digits)
        if cached is not None:
            return cached
        if D in (-3, -4):
            raise InvalidInput(f"no invariant is synthesized for D={D}")
        if level.N < 2:
            raise InvalidInput(f"level must be at least 2, got {level.N}")
        started = time.monotonic()
        O = order_from_disc(D)
        CG = enumerate_classes(O, level)
        spec = InvariantSpec.for_level(level)
        value = minpoly_over_Q(O, level, spec, CG, self.config.prec_ctx(), self.config.max_digits)
        F = value.minpoly
        disc = poly_disc(F)
        factors = factor_int(disc, self.config.factor_budget_seconds)
        payload = {
            "disc": D,
            "N": level.N,
            "G": list(level.G),
            "classes": [Q.to_json() for Q in CG.reps],
            "invariant": spec.to_json(),
            "generator": value.generator.to_str(40),
            "generator_parts": value.generator.to_json(VERIFY_DIGITS),
            "parity": F.parity(),
            "discriminant": str(disc),
            "discriminant_factorization": factors.summary(),
            "reference": compare_with_reference(F, D, level.N, level.G),
        }
        payload.update(value.to_json())
        logger.info("⏱️ synthesized D=%d N=%d in %.1fs", D, level.N, time.monotonic() - started)
        self.cache_manager.store_minpoly(D, level.N, level.G, self.config.digits, payload)
        return payload

    def polynomial(self, D, level):
        return IntPoly.from_json(self.synthesize(D, level))

    def handle_minpoly(self, args):
        """Synthesize F(X) for (D, N, G) and factor its discriminant."""
        D = resolve_disc(args)
        level = LevelStructure.parse(args.level, args.subgroup)
        return self.synthesize(D, level), 0

    def render_text(self, payload):
        F = IntPoly.from_json(payload)
        fac = payload["discriminant_factorization"]
        factors = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in fac["factors"])
        lines = [
            f"D = {payload['disc']}, N = {payload['N']}, G = {payload['G']}, degree {payload['degree']}",
            f"F(X) = {F.pretty()}",
            f"disc(F) = {'-' if payload['discriminant'].startswith('-') else ''}{factors}"
            + ("" if fac["complete"] else " * (unfactored part)"),
            f"digits used {payload['digits_used']}, rounding residual {payload['residual']}",
        ]
        ref = payload.get("reference")
        if ref is not None:
            verdict = f"matches up to factor {ref['factor']}" if ref["matches"] else "does not match"
            lines.append(f"reference row {ref['field']}: {verdict}")
            if ref.get("note"):
                lines.append(f"note: {ref['note']}")
        return "\n".join(lines)
