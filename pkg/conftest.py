import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from classgroups.class_group import enumerate_classes  # noqa: E402
from classgroups.level import LevelStructure  # noqa: E402
from numerics.precision import PrecCtx  # noqa: E402
from orders.ideals import order_from_disc  # noqa: E402


@pytest.fixture(scope="session")
def ctx():
    return PrecCtx(80)


@pytest.fixture(scope="session")
def ctx200():
    return PrecCtx(200)


@pytest.fixture(scope="session")
def class_groups():
    """Class groups keyed by (D, N, G), built once per session."""
    built = {}

    def get(D, N, G=(1,)):
        key = (D, N, tuple(G))
        if key not in built:
            built[key] = enumerate_classes(order_from_disc(D), LevelStructure(N, tuple(G)))
        return built[key]

    return get
