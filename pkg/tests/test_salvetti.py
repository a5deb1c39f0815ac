"""Salvetti cell poset: f-vectors, nerve comparison, theorem checks."""

import pytest

from omsal.errors import EnumerationLimitExceeded, InvalidCell, NotATope
from omsal.fixtures import ALL_FIXTURES
from omsal.salvetti import (
    SalvettiCell,
    boundary_cells,
    build_salvetti_poset,
    cell_leq,
    chain_determination_check,
    f_vector_and_euler,
    nerve_check,
    oriented_one_skeleton,
    retraction_check,
)
from omsal.signs import SignVector, compose

sv = SignVector.from_string

EXPECTED_F = {
    "boolean:1": (2, 2),
    "boolean:2": (4, 8, 4),
    "boolean:3": (8, 24, 24, 8),
    "generic:3:2": (6, 12, 6),
    "braid:3": (6, 12, 6),
    "generic:4:3": (14, 48, 48, 14),
    "generic:5:3": (22, 80, 80, 22),
    "nonpappus": (58, 192, 192, 58),
}


@pytest.mark.parametrize("spec", ALL_FIXTURES)
def test_f_vectors_and_euler(spec, om, salvetti_poset):
    m = om(spec)
    fv, euler = f_vector_and_euler(salvetti_poset(spec))
    assert fv == EXPECTED_F[spec]
    assert euler == 0
    assert fv[0] == fv[-1] == len(m.topes())


@pytest.mark.parametrize("spec", ALL_FIXTURES)
def test_poset_heights_are_cell_dims(spec, salvetti_poset):
    poset = salvetti_poset(spec)
    assert poset.is_graded()
    h = poset.heights()
    assert all(h[i] == c.dim for i, c in enumerate(poset.elements))


def test_cell_order_examples(om):
    m = om("boolean:2")
    top = SalvettiCell(sv("00"), sv("++"), 2)
    edge = SalvettiCell(sv("0+"), sv("++"), 1)
    far_edge = SalvettiCell(sv("0+"), sv("-+"), 1)
    vertex = SalvettiCell(sv("++"), sv("++"), 0)
    assert cell_leq(vertex, edge)
    assert cell_leq(vertex, top)
    assert cell_leq(edge, top)
    assert not cell_leq(far_edge, top)  # 0+ composed with ++ stays ++
    assert not cell_leq(top, edge)


def test_boundary_of_an_edge_is_two_vertices(om):
    m = om("generic:3:2")
    x = m.cocircuits()[0]
    tope = next(t for t in m.topes() if compose(x, t) == t)
    edge = SalvettiCell(x, tope, 1)
    cells = boundary_cells(edge, m)
    assert len(cells) == 2
    assert all(c.dim == 0 for c in cells)
    assert SalvettiCell(tope, tope, 0) in cells


def test_boundary_rejects_bad_cells(om):
    m = om("boolean:2")
    with pytest.raises(NotATope):
        boundary_cells(SalvettiCell(sv("0+"), sv("0+"), 1), m)
    with pytest.raises(InvalidCell):
        boundary_cells(SalvettiCell(sv("0+"), sv("--"), 1), m)


@pytest.mark.parametrize("spec", ["boolean:2", "generic:3:2", "generic:4:3"])
def test_oriented_skeleton_pairs_up(spec, om):
    m = om(spec)
    sk = oriented_one_skeleton(m)
    n_subtopes = sum(1 for x in m.covectors
                     if m.height(x) == m.rank - 1)
    assert len(sk.edges) == 2 * n_subtopes
    seen = {(e.source, e.target) for e in sk.edges}
    assert all((t, s) in seen for s, t in seen)
    for e in sk.edges:
        assert compose(e.cell.covector, e.source) == e.source
        assert compose(e.cell.covector, e.target) == e.target


@pytest.mark.parametrize("spec", ALL_FIXTURES)
def test_nerve_equals_order_complex(spec, om):
    ok, stats = nerve_check(om(spec))
    assert ok, f"nerve mismatch at {stats}"
    assert stats["vertices"] == sum(EXPECTED_F[spec])


def test_nerve_stats_generic_three_lines(om):
    ok, stats = nerve_check(om("generic:3:2"))
    assert ok
    # facets of the barycentric subdivision: one per maximal cell chain
    assert stats["facets"] == 72


# nonpappus is exercised tope-by-tope in the acceptance suite
@pytest.mark.parametrize("spec", [s for s in ALL_FIXTURES if s != "nonpappus"])
def test_retraction_every_tope(spec, om):
    m = om(spec)
    assert all(retraction_check(m, t) for t in m.topes())


def test_retraction_requires_a_tope(om):
    with pytest.raises(NotATope):
        retraction_check(om("boolean:2"), sv("0+"))


@pytest.mark.parametrize("spec", ALL_FIXTURES)
def test_chain_determination(spec, om):
    assert chain_determination_check(om(spec))


def test_enumeration_cap(monkeypatch, om):
    m = om("generic:4:3")
    monkeypatch.setenv("OM_SALVETTI_MAX_N", "3")
    with pytest.raises(EnumerationLimitExceeded):
        build_salvetti_poset(m)
    monkeypatch.setenv("OM_SALVETTI_MAX_N", "not-a-number")
    assert len(build_salvetti_poset(m).elements) == sum(EXPECTED_F["generic:4:3"])
