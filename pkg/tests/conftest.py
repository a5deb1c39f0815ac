"""Session caches: the heavy objects are built once and shared.

The nonpappus Salvetti order complex alone costs about ten seconds of
Smith reduction, so homology groups and cell posets are memoized here
instead of being recomputed per test.
"""

import pytest

from omsal.fixtures import generate_fixture
from omsal.homology import homology
from omsal.posets import order_complex
from omsal.salvetti import build_salvetti_poset

_posets = {}
_groups = {}


@pytest.fixture(scope="session")
def om():
    """Spec string -> oriented matroid (generate_fixture already caches)."""
    return generate_fixture


def cached_salvetti_poset(spec):
    if spec not in _posets:
        _posets[spec] = build_salvetti_poset(generate_fixture(spec))
    return _posets[spec]


def cached_salvetti_homology(spec):
    if spec not in _groups:
        _groups[spec] = homology(order_complex(cached_salvetti_poset(spec)))
    return _groups[spec]


@pytest.fixture(scope="session")
def salvetti_poset():
    return cached_salvetti_poset


@pytest.fixture(scope="session")
def salvetti_homology():
    return cached_salvetti_homology
