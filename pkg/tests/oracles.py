"""Independent brute-force oracles for the exact engines.

Deliberately naive re-derivations on different code paths: sign
patterns are plain strings, the feasibility test is longhand
Fourier-Motzkin over Fraction, and path counting is a layered BFS sum
over a string-keyed flip graph.  Nothing here imports from the package
beyond test parametrization done by the callers.
"""

from fractions import Fraction
from itertools import product


def sign_pattern_feasible(normals, pattern):
    """Is {x : sign(v_i . x) = pattern_i for all i} nonempty over Q^l?

    Fourier-Motzkin elimination on the homogeneous system.  At each
    variable an equality containing it is substituted out if one exists;
    otherwise positive and negative inequality rows are combined
    pairwise.  The system is homogeneous throughout, so at the end a
    surviving strict row means exactly 0 > 0.
    """
    cons = []  # (is_eq, coeffs); an inequality row asserts coeffs . x > 0
    for v, s in zip(normals, pattern):
        row = [Fraction(a) for a in v]
        if s == "0":
            cons.append((True, row))
        elif s == "+":
            cons.append((False, row))
        elif s == "-":
            cons.append((False, [-a for a in row]))
        else:
            raise ValueError(f"bad sign char {s!r}")
    nvar = len(cons[0][1])
    for j in range(nvar):
        eq = next((c for is_eq, c in cons if is_eq and c[j]), None)
        if eq is not None:
            new = []
            for is_eq, c in cons:
                if c is eq:
                    continue
                if c[j]:
                    scale = c[j] / eq[j]
                    c = [a - scale * b for a, b in zip(c, eq)]
                new.append((is_eq, c))
            cons = new
            continue
        pos = [c for is_eq, c in cons if not is_eq and c[j] > 0]
        neg = [c for is_eq, c in cons if not is_eq and c[j] < 0]
        keep = [(is_eq, c) for is_eq, c in cons if not c[j]]
        for p in neg:
            for q in pos:
                keep.append((False, [a * q[j] - b * p[j]
                                     for a, b in zip(p, q)]))
        cons = keep
    return not any(not is_eq for is_eq, _ in cons)


def enumerate_covector_strings(normals):
    """All feasible sign patterns over the normals, sorted."""
    n = len(normals)
    out = []
    for pat in product("+-0", repeat=n):
        s = "".join(pat)
        if sign_pattern_feasible(normals, s):
            out.append(s)
    return sorted(out)


def tope_string_distance(a, b):
    """Positions where two full-support sign strings disagree."""
    return sum(1 for x, y in zip(a, b) if x != y)


def flip_graph_neighbors(tope_strings):
    """u ~ v when the strings differ in exactly one position."""
    verts = sorted(tope_strings)
    return {u: [v for v in verts if tope_string_distance(u, v) == 1]
            for u in verts}


def geodesic_counts_from(nbrs, a):
    """(distance, path count) to every vertex reachable from a.

    Layered BFS; ways[v] sums ways over all predecessors one layer
    closer.  A walk of length d(a, b) flips each disagreeing position
    exactly once and nothing else, so geodesics are exactly the minimal
    positive paths.
    """
    dist = {a: 0}
    ways = {a: 1}
    frontier = [a]
    while frontier:
        fresh = []
        for u in frontier:
            for v in nbrs[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    ways[v] = 0
                    fresh.append(v)
        for u in frontier:
            for v in nbrs[u]:
                if dist[v] == dist[u] + 1:
                    ways[v] += ways[u]
        frontier = fresh
    return dist, ways


def count_geodesics(tope_strings, a, b):
    """(distance, number of minimal paths) a -> b in the flip graph."""
    dist, ways = geodesic_counts_from(flip_graph_neighbors(tope_strings), a)
    if b not in dist:
        return None, 0
    return dist[b], ways[b]


def whitney_numbers(flats):
    """Unsigned Whitney numbers of the first kind of a flat family.

    Mobius recursion mu(0, F) = -sum over proper subflats, heights as
    longest chains; w_k collects |mu| over flats of height k.  No
    broken-circuit counting anywhere, so this cross-checks the nbc
    route through an entirely different theorem.
    """
    flats = sorted({frozenset(f) for f in flats}, key=lambda f: (len(f), sorted(f)))
    mu, height = {}, {}
    for f in flats:
        below = [g for g in flats if g < f]
        mu[f] = -sum(mu[g] for g in below) if below else 1
        height[f] = 1 + max((height[g] for g in below), default=-1)
    w = [0] * (max(height.values()) + 1)
    for f in flats:
        w[height[f]] += abs(mu[f])
    return tuple(w)
