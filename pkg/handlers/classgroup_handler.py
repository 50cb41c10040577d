"""
Command handler for form class group enumeration.
"""

import logging

import pandas as pd

from classgroups.class_group import enumerate_classes
from classgroups.level import LevelStructure
from orders.ideals import order_from_disc
from utils.errors import InvalidInput
from utils.helpers import validate_args

logger = logging.getLogger(__name__)


class ClassGroupHandler:
    """Handles the classgroup command."""

    def __init__(self, config, cache_manager):
        self.config = config
        self.cache_manager = cache_manager

    def build(self, D, level):
        return enumerate_classes(order_from_disc(D), level)

    def handle_classgroup(self, args):
        """Enumerate C_{Gamma_G}(D, N), optionally with its composition table."""
        ok, missing = validate_args(vars(args), ["disc", "level", "subgroup"])
        if not ok:
            raise InvalidInput(f"missing arguments: {missing}")
        level = LevelStructure.parse(args.level, args.subgroup)
        CG = self.build(args.disc, level)
        payload = CG.to_json(with_table=args.table)
        payload["count"] = len(CG)
        payload["expected_count"] = CG.expected_count()
        if payload["count"] != payload["expected_count"]:
            logger.warning("⚠️ enumerated %d classes, ideal side predicts %d", payload["count"],
                           payload["expected_count"])
        return payload, 0

    def render_text(self, payload):
        forms = pd.DataFrame(
            [{"class": i, "a": a, "b": b, "c": c} for i, (a, b, c) in enumerate(payload["classes"])]
        )
        lines = [
            f"D = {payload['disc']}, N = {payload['N']}, G = {payload['G']}: {payload['count']} classes",
            forms.to_string(index=False),
        ]
        if "table" in payload:
            lines.append("composition table:")
            lines.append(pd.DataFrame(payload["table"]).to_string())
        return "\n".join(lines)
