"""
Command handlers for the prime-representation harness and the Kronecker congruence check.
"""

import logging

import pandas as pd

from arithmetic_apps.kronecker import verify_kronecker
from arithmetic_apps.representation import equivalence_harness
from classgroups.level import LevelStructure
from utils.errors import InvalidInput

logger = logging.getLogger(__name__)


class ArithmeticHandler:
    """Handles the primes and kronecker commands."""

    def __init__(self, config, cache_manager, minpoly_handler):
        self.config = config
        self.cache_manager = cache_manager
        self.minpoly_handler = minpoly_handler

    def handle_primes(self, args):
        """Compare the direct scan with the polynomial criterion for primes below the bound."""
        if args.bound is None or args.bound < 2:
            raise InvalidInput("--bound must be at least 2")
        level = LevelStructure.parse(args.level, args.subgroup)
        F = self.minpoly_handler.polynomial(-4 * args.n, level)
        report = equivalence_harness(args.n, level, args.bound, F=F)
        return report.to_json(), 0 if report.ok else 3

    def handle_kronecker(self, args):
        """Check the congruence for one prime."""
        level = LevelStructure.parse(args.level, args.subgroup)
        report = verify_kronecker(args.disc, level, args.prime, ctx=self.config.prec_ctx(),
                                  max_digits=self.config.max_digits)
        return report.to_json(), 0 if report.verdict else 3

    def render_primes_text(self, payload):
        summary = pd.DataFrame([{
            "n": payload["n"], "N": payload["N"], "bound": payload["bound"], "agree": payload["agree"],
            "excluded": len(payload["excluded"]), "disagreements": len(payload["disagreements"]),
            "represented": len(payload["represented"]),
        }])
        lines = [summary.to_string(index=False)]
        if payload["represented"]:
            head = pd.DataFrame(payload["represented"][:10], columns=["p", "x", "y"])
            lines.append("first represented primes:")
            lines.append(head.to_string(index=False))
        if payload["disagreements"]:
            lines.append(f"DISAGREEMENTS at {payload['disagreements']}")
        return "\n".join(lines)

    def render_kronecker_text(self, payload):
        inputs = payload["inputs"]
        verdict = "holds" if payload["verdict"] else f"FAILS at k = {payload['failing_k']}"
        return "\n".join([
            f"D = {inputs['D']}, N = {inputs['N']}, G = {inputs['G']}, p = {inputs['p']} (s = {inputs['s']})",
            f"f(w)   ~ {payload['A']}",
            f"f(w/p) ~ {payload['B']}",
            f"charpoly degree {payload['charpoly']['degree']}, digits used {payload['digits_used']}",
            f"congruence {verdict}",
        ])
