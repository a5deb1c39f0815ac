"""Built-in inputs: named arrangements, a non-realizable covector set,
and small CW complexes for the metric checks.

Fixture specs are strings: boolean:n (coordinate normals), generic:n:l
(moment-curve normals, provably generic), braid:n (essentialized
pairwise-difference normals), nonpappus (rank-3 non-realizable, built by
a single basis-sign flip), or file kind carrying a path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import fileio
from .errors import AxiomFailure, UnknownFixture
from .matroid import (Chirotope, OrientedMatroid, RationalArrangement,
                      cocircuits_from_chirotope, det_sign, from_arrangement,
                      matrix_rank, span_from_cocircuits)
from .mh import CWPoset, cw_from_covers


@dataclass(frozen=True)
class FixtureSpec:
    name: str
    kind: str
    args: tuple = ()
    note: str = ""


def parse_fixture_spec(text: str) -> FixtureSpec:
    parts = text.strip().split(":")
    kind = parts[0]
    if kind == "boolean" and len(parts) == 2:
        n = _positive_int(parts[1], text)
        return FixtureSpec(text.strip(), "boolean", (n,),
                           "coordinate normals in rank n")
    if kind == "generic" and len(parts) == 3:
        n = _positive_int(parts[1], text)
        l = _positive_int(parts[2], text)
        return FixtureSpec(text.strip(), "generic", (n, l),
                           "moment-curve normals (1, t, ..., t^(l-1)), t=1..n")
    if kind == "braid" and len(parts) == 2:
        n = _positive_int(parts[1], text)
        if n < 2:
            raise UnknownFixture(f"braid needs n >= 2, got {text!r}")
        return FixtureSpec(text.strip(), "braid", (n,),
                           "pairwise difference normals, essentialized")
    if kind == "nonpappus" and len(parts) == 1:
        return FixtureSpec("nonpappus", "nonpappus", (),
                           "rank-3 non-realizable covector set")
    if kind == "file" and len(parts) >= 2:
        path = text.strip().split(":", 1)[1]
        return FixtureSpec(text.strip(), "file", (path,), "external input")
    raise UnknownFixture(f"unrecognized fixture spec {text!r}")


def _positive_int(tok: str, spec: str) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise UnknownFixture(f"bad integer in fixture spec {spec!r}") from None
    if v < 1:
        raise UnknownFixture(f"parameters must be positive in {spec!r}")
    return v


def boolean_arrangement(n: int) -> RationalArrangement:
    one = Fraction(1)
    zero = Fraction(0)
    rows = [tuple(one if j == i else zero for j in range(n)) for i in range(n)]
    return RationalArrangement(n, rows)


def generic_arrangement(n: int, l: int) -> RationalArrangement:
    """Moment-curve normals: every l of them are independent (Vandermonde)."""
    rows = [tuple(Fraction(t) ** k for k in range(l)) for t in range(1, n + 1)]
    return RationalArrangement(l, rows)


def braid_arrangement(n: int) -> RationalArrangement:
    """Difference normals e_i - e_j written in coordinates on their span.

    The raw normals live in a hyperplane of R^n; taking inner products
    against a row basis of that span preserves every sign exactly, so
    the essentialized arrangement has the same covectors.
    """
    raw = []
    for i, j in combinations(range(n), 2):
        row = [Fraction(0)] * n
        row[i] = Fraction(1)
        row[j] = Fraction(-1)
        raw.append(tuple(row))
    basis = []
    for row in raw:
        if matrix_rank(basis + [row], n) > len(basis):
            basis.append(row)
    rows = [tuple(sum(a * b for a, b in zip(v, bvec)) for bvec in basis)
            for v in raw]
    return RationalArrangement(len(basis), rows)


# Nine lines in the projective plane: lines 1 and 2 carry the point
# triples (0,0),(1,0),(3,0) and (0,1),(2,1),(7,1), lines 3..8 are the
# six cross-joins, and line 9 passes through the three cross-join
# meeting points, which the first eight lines force to be collinear.
# The base points are chosen unevenly so the chirotope of this
# configuration vanishes on exactly the nine concurrent triples.
# Flipping the sign of the (5,6,9) basis detaches line 9 from one of
# the three points, which no straight line can do.
_NONPAPPUS_NORMALS = (
    (0, 1, 0),
    (0, 1, -1),
    (-1, 2, 0),
    (1, 1, -1),
    (-1, 7, 0),
    (1, 3, -3),
    (-1, 6, 1),
    (1, 1, -3),
    (1, 43, -15),
)
_NONPAPPUS_TRIPLES = ((1, 3, 5), (1, 4, 7), (1, 6, 8), (2, 3, 8),
                      (2, 4, 6), (2, 5, 7), (3, 4, 9), (5, 6, 9), (7, 8, 9))
_NONPAPPUS_ZERO_BASIS = (5, 6, 9)

_cache: dict[str, OrientedMatroid] = {}
_chi_cache: dict[str, Chirotope] = {}


def nonpappus_chirotope() -> Chirotope:
    """The flipped chirotope, choosing the first flip the axioms accept."""
    hit = _chi_cache.get("nonpappus")
    if hit is not None:
        return hit
    rows = [tuple(Fraction(c) for c in row) for row in _NONPAPPUS_NORMALS]
    values = {}
    for sub in combinations(range(1, 10), 3):
        values[sub] = det_sign([rows[i - 1] for i in sub])
    zeros = tuple(sub for sub, s in sorted(values.items()) if s == 0)
    if zeros != _NONPAPPUS_TRIPLES:
        raise UnknownFixture(f"degenerate bases {zeros} changed; "
                             "the shipped normals are wrong")
    last_error = None
    for flip in (1, -1):
        values[_NONPAPPUS_ZERO_BASIS] = flip
        chi = Chirotope(3, 9, values)
        try:
            m = span_from_cocircuits(cocircuits_from_chirotope(chi))
        except AxiomFailure as exc:
            last_error = exc
            continue
        _chi_cache["nonpappus"] = chi
        _cache["nonpappus"] = m
        return chi
    raise UnknownFixture(f"no orientation of the flipped basis verifies: "
                         f"{last_error}")


def generate_fixture(spec) -> OrientedMatroid:
    """Build (and cache) the oriented matroid named by a fixture spec."""
    if isinstance(spec, str):
        spec = parse_fixture_spec(spec)
    hit = _cache.get(spec.name)
    if hit is not None:
        return hit
    if spec.kind == "boolean":
        m = from_arrangement(boolean_arrangement(*spec.args))
    elif spec.kind == "generic":
        m = from_arrangement(generic_arrangement(*spec.args))
    elif spec.kind == "braid":
        m = from_arrangement(braid_arrangement(*spec.args))
    elif spec.kind == "nonpappus":
        nonpappus_chirotope()
        m = _cache["nonpappus"]
    elif spec.kind == "file":
        m = fileio.load_oriented_matroid(spec.args[0])
        return m
    else:
        raise UnknownFixture(f"no generator for kind {spec.kind!r}")
    _cache[spec.name] = m
    return m


def fixture_arrangement(spec) -> RationalArrangement:
    """The realizing arrangement behind a realizable fixture spec."""
    if isinstance(spec, str):
        spec = parse_fixture_spec(spec)
    if spec.kind == "boolean":
        return boolean_arrangement(*spec.args)
    if spec.kind == "generic":
        return generic_arrangement(*spec.args)
    if spec.kind == "braid":
        return braid_arrangement(*spec.args)
    raise UnknownFixture(f"{spec.name} has no arrangement form")


# the eight standing test subjects, smallest first
ALL_FIXTURES = ("boolean:1", "boolean:2", "boolean:3", "generic:3:2",
                "braid:3", "generic:4:3", "generic:5:3", "nonpappus")


def cw_polygon(k: int) -> CWPoset:
    """A single closed 2-cell with a k-gon boundary."""
    if k < 3:
        raise UnknownFixture("polygon needs at least 3 sides")
    cells = [(f"v{i}", 0) for i in range(1, k + 1)]
    cells += [(f"e{i}", 1) for i in range(1, k + 1)]
    cells.append(("top", 2))
    covers = []
    for i in range(1, k + 1):
        j = i % k + 1
        covers += [(f"v{i}", f"e{i}"), (f"v{j}", f"e{i}"), (f"e{i}", "top")]
    return cw_from_covers(cells, covers)


def cw_octagon_chords(trapezoid: bool) -> CWPoset:
    """An octagonal 2-cell, four free chords, optionally a trapezoidal
    2-cell glued onto three octagon edges and the chord c14.

    With the trapezoid the complex has additive farthest vertices
    globally but its two 2-cells disagree about the maps on shared
    edges; without it the per-cell maps agree with each other but not
    with the global ones (the chords shorten outside distances).
    """
    cells = [(f"v{i}", 0) for i in range(1, 9)]
    octagon = []
    for i in range(1, 9):
        j = i % 8 + 1
        octagon.append((f"e{i}{j}", i, j))
    chords = [("c14", 1, 4), ("c36", 3, 6), ("c58", 5, 8), ("c72", 7, 2)]
    cells += [(name, 1) for name, _, _ in octagon + chords]
    cells.append(("oct", 2))
    covers = []
    for name, a, b in octagon:
        covers += [(f"v{a}", name), (f"v{b}", name), (name, "oct")]
    for name, a, b in chords:
        covers += [(f"v{a}", name), (f"v{b}", name)]
    if trapezoid:
        cells.append(("trap", 2))
        covers += [(e, "trap") for e in ("e12", "e23", "e34", "c14")]
    return cw_from_covers(cells, covers)
