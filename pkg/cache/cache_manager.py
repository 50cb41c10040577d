"""
On-disk cache for synthesized minimal polynomials.
One JSON file per (D, N, G), written atomically.
"""

import hashlib
import json
import logging
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from exact_algebra.polynomials import IntPoly
from modfuncs.minpoly import ROUNDING_TOLERANCE, poly_eval_check
from numerics.precision import PrecCtx
from utils.helpers import dumps

logger = logging.getLogger(__name__)

FORMAT_VERSION = 2
# Significant digits of the cached generator; F(alpha) is rechecked against half of them.
VERIFY_DIGITS = 60


class CacheManager:
    """Manages cached minimal-polynomial entries under a cache directory."""

    def __init__(self, cache_dir, enabled=True):
        self.cache_dir = Path(cache_dir)
        self.enabled = enabled

    def init_directory(self):
        """Create the cache directory on demand."""
        self.cache_dir.mkdir(parents=True, exist_ok=True)

    def entry_path(self, D, N, G):
        digest = hashlib.sha256(",".join(str(t) for t in G).encode()).hexdigest()[:12]
        return self.cache_dir / f"minpoly_D{D}_N{N}_G{digest}.json"

    def get_minpoly(self, D, N, G, digits):
        """The cached payload, or None on a miss, a stale entry or a failed re-verification."""
        if not self.enabled:
            return None
        path = self.entry_path(D, N, G)
        if not path.exists():
            logger.info("🔍 cache miss for D=%d N=%d", D, N)
            return None
        try:
            entry = json.loads(path.read_text())
        except (OSError, ValueError) as exc:
            logger.warning("⚠️ unreadable cache entry %s (%s)", path, exc)
            return None
        if entry.get("format_version") != FORMAT_VERSION or entry.get("requested_digits") != digits:
            logger.info("🔍 stale cache entry %s", path.name)
            return None
        payload = entry.get("payload") or {}
        try:
            residual = Fraction(str(float(payload["residual"])))
        except (KeyError, ValueError):
            return None
        if residual >= ROUNDING_TOLERANCE:
            logger.warning("⚠️ cached residual %s fails verification, recomputing", payload["residual"])
            return None
        if not self.reverify(payload):
            logger.warning("⚠️ cached polynomial does not annihilate the cached generator, recomputing")
            return None
        logger.info("✅ cache hit %s", path.name)
        return payload

    def reverify(self, payload):
        """Evaluate the cached F at the cached generator."""
        ctx = PrecCtx(VERIFY_DIGITS)
        try:
            F = IntPoly.from_json(payload)
            alpha = ctx.from_json(payload["generator_parts"])
        except (KeyError, TypeError, ValueError):
            return False
        if F.degree < 1:
            return False
        return poly_eval_check(F, alpha, ctx) < ctx.kernel().power(10, -VERIFY_DIGITS // 2)

    def store_minpoly(self, D, N, G, digits, payload):
        if not self.enabled:
            return None
        self.init_directory()
        path = self.entry_path(D, N, G)
        entry = {"format_version": FORMAT_VERSION, "requested_digits": digits, "payload": payload}
        fd, tmp = tempfile.mkstemp(dir=self.cache_dir, prefix=path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as handle:
                handle.write(dumps(entry))
            os.replace(tmp, path)
        except OSError:
            if os.path.exists(tmp):
                os.remove(tmp)
            raise
        logger.info("✅ cached %s", path.name)
        return path

    def clear(self):
        """Remove every cached entry."""
        if not self.cache_dir.exists():
            return 0
        removed = 0
        for path in self.cache_dir.glob("minpoly_*.json"):
            path.unlink()
            removed += 1
        return removed
