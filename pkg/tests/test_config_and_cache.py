from pathlib import Path
from types import SimpleNamespace

import pytest

from cache.cache_manager import VERIFY_DIGITS, CacheManager
from numerics.precision import DEFAULT_DIGITS, PrecCtx
from utils.config import RunConfig
from utils.errors import InvalidInput


def args(**overrides):
    base = {"digits": None, "cache_dir": None, "format": "json", "factor_budget": None, "verbose": 0,
            "no_cache": False}
    base.update(overrides)
    return SimpleNamespace(**base)


def test_defaults():
    config = RunConfig.from_args(args(), environ={})
    assert config.digits == DEFAULT_DIGITS
    assert config.use_cache
    assert config.output_format == "json"
    assert config.prec_ctx().digits == DEFAULT_DIGITS


def test_flags_win_over_environment(tmp_path):
    environ = {"FORMCLASS_DIGITS": "120", "FORMCLASS_CACHE": "/nowhere"}
    config = RunConfig.from_args(args(digits=300, cache_dir=str(tmp_path)), environ=environ)
    assert config.digits == 300
    assert config.cache_dir == tmp_path


def test_environment_fills_missing_flags():
    config = RunConfig.from_args(args(), environ={"FORMCLASS_DIGITS": "120", "FORMCLASS_CACHE": "/tmp/fc"})
    assert config.digits == 120
    assert config.cache_dir == Path("/tmp/fc")


@pytest.mark.parametrize("overrides, environ", [
    ({"digits": 10}, {}),
    ({}, {"FORMCLASS_DIGITS": "many"}),
    ({"factor_budget": 0}, {}),
    ({"digits": 5000}, {}),
])
def test_invalid_configuration(overrides, environ):
    with pytest.raises(InvalidInput):
        RunConfig.from_args(args(**overrides), environ=environ)


PAYLOAD = {"disc": -27, "N": 2, "degree": 2, "coefficients": ["1", "0", "1"], "residual": "1.0e-60",
           "generator_parts": ["0.0", "1.0"]}


def test_cache_round_trip(tmp_path):
    cache = CacheManager(tmp_path / "cache")
    assert cache.get_minpoly(-27, 2, (1,), 200) is None
    path = cache.store_minpoly(-27, 2, (1,), 200, PAYLOAD)
    assert path.exists()
    assert cache.get_minpoly(-27, 2, (1,), 200) == PAYLOAD
    assert cache.get_minpoly(-27, 2, (1,), 400) is None
    assert cache.get_minpoly(-27, 2, (1, 3), 200) is None
    assert cache.clear() == 1
    assert cache.get_minpoly(-27, 2, (1,), 200) is None


def test_cache_rejects_bad_entries(tmp_path):
    cache = CacheManager(tmp_path)
    cache.store_minpoly(-27, 2, (1,), 200, dict(PAYLOAD, residual="0.3"))
    assert cache.get_minpoly(-27, 2, (1,), 200) is None
    cache.entry_path(-27, 2, (1,)).write_text("{not json")
    assert cache.get_minpoly(-27, 2, (1,), 200) is None


@pytest.mark.parametrize("overrides", [
    {"coefficients": ["2", "0", "1"]},
    {"generator_parts": ["0.0", "1.0001"]},
    {"generator_parts": ["zero", "one"]},
    {"generator_parts": None},
])
def test_cache_reevaluates_polynomial_at_generator(tmp_path, overrides):
    cache = CacheManager(tmp_path)
    cache.store_minpoly(-27, 2, (1,), 200, dict(PAYLOAD, **overrides))
    assert cache.get_minpoly(-27, 2, (1,), 200) is None


def test_cache_accepts_rounded_generator(tmp_path):
    ctx = PrecCtx(200)
    sqrt2 = ctx.from_mpc(ctx.kernel().sqrt(2))
    payload = dict(PAYLOAD, coefficients=["-2", "0", "1"], generator_parts=sqrt2.to_json(VERIFY_DIGITS))
    cache = CacheManager(tmp_path)
    cache.store_minpoly(-27, 2, (1,), 200, payload)
    assert cache.get_minpoly(-27, 2, (1,), 200) == payload
    assert cache.reverify(dict(payload, coefficients=["-3", "0", "1"])) is False


def test_disabled_cache_does_nothing(tmp_path):
    cache = CacheManager(tmp_path / "cache", enabled=False)
    assert cache.store_minpoly(-27, 2, (1,), 200, PAYLOAD) is None
    assert cache.get_minpoly(-27, 2, (1,), 200) is None
    assert not (tmp_path / "cache").exists()
