"""Flat lattices, broken circuits, nbc counts, homology comparison."""

import pytest

from oracles import whitney_numbers

from omsal.fixtures import ALL_FIXTURES
from omsal.osalg import (
    UnderlyingMatroid,
    circuits,
    flats_from_covectors,
    gr_comparison,
    nbc_sets,
    os_betti,
)

# frozen against the Mobius/Whitney oracle below
OS_EXPECTED = {
    "boolean:1": (1, 1),
    "boolean:2": (1, 2, 1),
    "boolean:3": (1, 3, 3, 1),
    "generic:3:2": (1, 3, 2),
    "braid:3": (1, 3, 2),
    "generic:4:3": (1, 4, 6, 3),
    "generic:5:3": (1, 5, 10, 6),
    "nonpappus": (1, 9, 28, 20),
}

NONPAPPUS_LINES = [
    (1, 3, 5), (1, 4, 7), (1, 6, 8), (2, 3, 8),
    (2, 4, 6), (2, 5, 7), (3, 4, 9), (7, 8, 9),
]


def u23():
    return UnderlyingMatroid(3, [(), (1,), (2,), (3,), (1, 2, 3)])


@pytest.mark.parametrize("spec", ALL_FIXTURES)
def test_os_betti_frozen(spec, om):
    assert os_betti(flats_from_covectors(om(spec))) == OS_EXPECTED[spec]


@pytest.mark.parametrize("spec", ALL_FIXTURES)
def test_os_betti_matches_whitney_oracle(spec, om):
    u = flats_from_covectors(om(spec))
    assert os_betti(u) == whitney_numbers(u.flats)


def test_boolean_flats_are_all_subsets(om):
    u = flats_from_covectors(om("boolean:2"))
    assert sorted(sorted(f) for f in u.flats) == [[], [1], [1, 2], [2]]


def test_three_concurrent_lines_share_a_flat(om):
    for spec in ("generic:3:2", "braid:3"):
        u = flats_from_covectors(om(spec))
        assert sorted(sorted(f) for f in u.flats) == \
            [[], [1], [1, 2, 3], [2], [3]]
        assert u.rank() == 2


def test_nonpappus_flat_lattice(om):
    u = flats_from_covectors(om("nonpappus"))
    assert len(u.flats) == 31
    assert u.rank() == 3
    triples = sorted(tuple(sorted(f)) for f in u.flats if len(f) == 3)
    assert triples == NONPAPPUS_LINES
    # the closure forced by the classical theorem is exactly the one missing
    assert frozenset({5, 6, 9}) not in u.flats
    assert u.closure({5, 6}) == frozenset({5, 6})


def test_matroid_validation():
    with pytest.raises(ValueError, match="ground set"):
        UnderlyingMatroid(3, [(), (1,), (2,)])
    with pytest.raises(ValueError, match="intersection-closed"):
        UnderlyingMatroid(3, [(1, 2), (2, 3), (1, 2, 3)])


def test_closure_and_rank():
    u = u23()
    assert u.closure({1}) == frozenset({1})
    assert u.closure({1, 2}) == frozenset({1, 2, 3})
    assert u.rank() == 2
    assert u.rank({1}) == 1
    assert u.is_independent({1, 3})
    assert not u.is_independent({1, 2, 3})
    with pytest.raises(ValueError):
        u.closure({4})


def test_circuits_uniform():
    assert circuits(u23()) == [frozenset({1, 2, 3})]


def test_circuits_nonpappus(om):
    u = flats_from_covectors(om("nonpappus"))
    cs = circuits(u)
    three = sorted(tuple(sorted(c)) for c in cs if len(c) == 3)
    assert three == NONPAPPUS_LINES
    # every other circuit is a 4-set: rank 3, so 5-sets are never minimal
    assert {len(c) for c in cs} == {3, 4}
    assert all(not any(a < b for a in cs) for b in cs)


def test_nbc_table_uniform():
    tab = nbc_sets(u23())
    assert tab.order == (1, 2, 3)
    assert tab.circuits == (frozenset({1, 2, 3}),)
    assert tab.broken_circuits == (frozenset({2, 3}),)
    assert tab.nbc_by_size[2] == (frozenset({1, 2}), frozenset({1, 3}))
    assert tab.counts() == (1, 3, 2)


def test_nbc_counts_ignore_the_order(om):
    u = flats_from_covectors(om("nonpappus"))
    base = os_betti(u)
    for order in [tuple(range(9, 0, -1)), (2, 7, 1, 9, 4, 3, 8, 5, 6)]:
        tab = nbc_sets(u, order)
        assert tab.counts() == base
    assert nbc_sets(u23(), (3, 2, 1)).broken_circuits == (frozenset({1, 2}),)


def test_nbc_rejects_non_permutations():
    with pytest.raises(ValueError):
        nbc_sets(u23(), (1, 2))
    with pytest.raises(ValueError):
        nbc_sets(u23(), (1, 2, 2))


@pytest.mark.parametrize("spec", ["boolean:1", "boolean:2", "boolean:3",
                                  "generic:3:2", "braid:3", "generic:4:3",
                                  "generic:5:3"])
def test_gr_comparison_matches(spec, om):
    cmp_ = gr_comparison(om(spec))
    assert cmp_.matches
    assert cmp_.os == cmp_.homology_betti == OS_EXPECTED[spec]
    assert cmp_.torsion == ()


def test_gr_table_text(om):
    text = str(gr_comparison(om("generic:3:2")))
    assert text == ("deg  os  H_k\n"
                    "  0   1    1\n"
                    "  1   3    3\n"
                    "  2   2    2\n"
                    "match")
