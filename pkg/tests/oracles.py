"""Brute-force reference implementations used only by the tests.

Nothing here imports the resolver machinery; each function recomputes its
answer from raw facet lists.
"""
from itertools import combinations, permutations, product

import numpy as np


def faces_of(facets):
    out = set()
    for f in facets:
        for k in range(1, len(f) + 1):
            out.update(combinations(sorted(f), k))
    return out


def euler(facets):
    return sum((-1) ** (len(c) - 1) for c in faces_of(facets))


def inversion_sign(seq):
    inv = sum(1 for a, b in combinations(seq, 2) if a > b)
    return -1 if inv % 2 else 1


def induced_sign(facet, sign, k):
    # ridge without position k of the sorted facet
    return sign * (-1) ** k


def orientable_bruteforce(facets):
    """Try every sign vector; coherent iff every ridge sees opposite signs."""
    facets = [tuple(sorted(f)) for f in facets]
    for signs in product((1, -1), repeat=len(facets) - 1):
        signs = (1,) + signs
        seen = {}
        ok = True
        for f, s in zip(facets, signs):
            for k in range(len(f)):
                r = f[:k] + f[k + 1:]
                seen.setdefault(r, []).append(induced_sign(f, s, k))
        for vals in seen.values():
            if sum(vals) != 0:
                ok = False
                break
        if ok:
            return True
    return False


def proper_colorings(facets, ncolors):
    verts = sorted({v for f in facets for v in f})
    edges = {e for f in facets for e in combinations(sorted(f), 2)}
    for col in product(range(ncolors), repeat=len(verts)):
        c = dict(zip(verts, col))
        if all(c[a] != c[b] for a, b in edges):
            yield c


def rational_betti(facets):
    """Betti numbers over Q from float ranks of boundary matrices."""
    faces = faces_of(facets)
    dim = max(len(f) for f in facets) - 1
    by_dim = [sorted(c for c in faces if len(c) == d + 1) for d in range(dim + 1)]
    ranks = [0]
    for d in range(1, dim + 1):
        rows = {c: i for i, c in enumerate(by_dim[d - 1])}
        m = np.zeros((len(by_dim[d - 1]), len(by_dim[d])))
        for j, c in enumerate(by_dim[d]):
            for k in range(len(c)):
                m[rows[c[:k] + c[k + 1:]], j] = (-1) ** k
        ranks.append(np.linalg.matrix_rank(m))
    ranks.append(0)
    return [len(by_dim[d]) - ranks[d] - ranks[d + 1] for d in range(dim + 1)]


def polygon_orbit(m):
    """Orbit of the n = 1 resolution on the m-gon, simulated directly.

    For n = 1 the only proper faces are vertices, each vertex star holds two
    edges and has a single admissible pairing, so a state is (edge, vertex,
    h).  phi^0 swaps the vertex within the edge, phi^1 crosses to the other
    edge at the vertex and flips h.
    """
    edges = [(i, (i + 1) % m) for i in range(m)]
    order = sorted(range(m), key=lambda i: tuple(sorted(edges[i])))
    edges = [edges[i] for i in order]

    def other_edge(e, v):
        (o,) = [k for k, f in enumerate(edges) if v in f and k != e]
        return o

    start = min((e, min(edges[e])) for e in range(m))
    start = (start[0], start[1], 0)
    seen = {start}
    todo = [start]
    while todo:
        e, v, h = todo.pop()
        a, b = edges[e]
        for nxt in ((e, b if v == a else a, h), (other_edge(e, v), v, 1 - h)):
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return seen


def label_sets_bruteforce(facets, labels):
    """c(F) for every proper face, straight from the ridge labels."""
    n = max(len(f) for f in facets) - 1
    ridges = [r for r in faces_of(facets) if len(r) == n]
    out = {}
    for c in faces_of(facets):
        if len(c) == n + 1:
            continue
        out[c] = frozenset(labels[r] for r in ridges if set(c) <= set(r))
    return out


def simplicial_maps_bruteforce(a_facets, b_facets):
    """All vertex bijections carrying a's facets onto b's."""
    va = sorted({v for f in a_facets for v in f})
    vb = sorted({v for f in b_facets for v in f})
    if len(va) != len(vb):
        return
    target = {tuple(sorted(f)) for f in b_facets}
    for image in permutations(vb):
        m = dict(zip(va, image))
        if {tuple(sorted(m[v] for v in f)) for f in a_facets} == target:
            yield m
