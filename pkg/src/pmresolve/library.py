"""Standard small complexes used by tests, scripts and the data files."""
from __future__ import annotations

import random
from itertools import combinations, product
from typing import Dict, List

from .complex_core import PseudoManifold, SimplicialComplex, validate


def polygon(m: int) -> PseudoManifold:
    """The m-gon; m = 2 gives two edges on the same pair of vertices."""
    return PseudoManifold.from_facets([[i, (i + 1) % m] for i in range(m)], 1)


def polygon_labels(m: int) -> Dict[tuple, int]:
    """For n = 1 every labelling is good; use a constant one."""
    return {(v,): 0 for v in range(m)}


def simplex_boundary(n: int) -> PseudoManifold:
    return PseudoManifold.from_facets([list(c) for c in combinations(range(n + 2), n + 1)])


def cross_polytope(n: int) -> PseudoManifold:
    """Boundary of the (n+1)-dimensional cross-polytope; vertices 2i, 2i+1
    are antipodal."""
    return PseudoManifold.from_facets(
        [[2 * i + b for i, b in enumerate(bits)] for bits in product((0, 1), repeat=n + 1)])


def cross_polytope_coloring(n: int) -> Dict[int, int]:
    return {v: v // 2 for v in range(2 * n + 2)}


def octahedron() -> PseudoManifold:
    return cross_polytope(2)


def torus7() -> PseudoManifold:
    """Moebius' 7-vertex torus."""
    facets = []
    for i in range(7):
        facets.append([i, (i + 1) % 7, (i + 3) % 7])
        facets.append([i, (i + 2) % 7, (i + 3) % 7])
    return PseudoManifold.from_facets(facets)


def rp2_6() -> SimplicialComplex:
    """6-vertex real projective plane (not orientable, so a bare complex)."""
    return SimplicialComplex.from_facets([
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
        [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
    ])


def pinched_torus() -> PseudoManifold:
    """A 2-sphere with two vertices at distance 3 identified (vertex 0).

    The sphere is a triangular prism-like stack: pole N, ring 1-2-3, ring
    4-5-6, pole S, and N = S = 0.  Euler characteristic 1; the link of 0 is
    two disjoint triangles.
    """
    a, b = [1, 2, 3], [4, 5, 6]
    facets = []
    for i in range(3):
        j = (i + 1) % 3
        facets += [[0, a[i], a[j]], [0, b[i], b[j]],
                   [a[i], a[j], b[i]], [a[j], b[i], b[j]]]
    return PseudoManifold.from_facets(facets)


def suspension(pm: PseudoManifold) -> PseudoManifold:
    top = max(pm.complex.vertices) + 1
    facets = [list(f) + [top] for f in pm.complex.facets]
    facets += [list(f) + [top + 1] for f in pm.complex.facets]
    return PseudoManifold.from_facets(facets)


def wedge_of_spheres() -> SimplicialComplex:
    """Two tetrahedron boundaries sharing vertex 0: not strongly connected."""
    first = [list(c) for c in combinations(range(4), 3)]
    second = [[0 if v == 0 else v + 3 for v in c] for c in combinations(range(4), 3)]
    return SimplicialComplex.from_facets(first + second)


def bipyramid(m: int) -> PseudoManifold:
    """Suspension of the m-gon; apexes are m and m+1."""
    return suspension(polygon(m))


def stellar_subdivide(pm: PseudoManifold, rng: random.Random, steps: int) -> PseudoManifold:
    """Insert ``steps`` new vertices, each into a random facet."""
    facets: List[tuple] = list(pm.complex.facets)
    top = max(pm.complex.vertices) + 1
    for _ in range(steps):
        f = facets.pop(rng.randrange(len(facets)))
        for k in range(len(f)):
            facets.append(f[:k] + f[k + 1:] + (top,))
        top += 1
    return PseudoManifold.from_facets(facets)


def relabel(pm: PseudoManifold, rng: random.Random) -> PseudoManifold:
    verts = pm.complex.vertices
    image = list(range(len(verts)))
    rng.shuffle(image)
    mapping = dict(zip(verts, image))
    return PseudoManifold.from_complex(pm.complex.relabel(mapping))


def random_pseudomanifold(seed: int, max_dim: int = 3) -> PseudoManifold:
    """Small oriented pseudo-manifold of dimension <= max_dim: a random base
    shape, a few stellar moves, and a random vertex relabelling."""
    rng = random.Random(seed)
    bases = [lambda: polygon(rng.randrange(3, 7)), lambda: simplex_boundary(2),
             octahedron, pinched_torus, torus7]
    if max_dim >= 3:
        bases += [lambda: simplex_boundary(3), lambda: cross_polytope(3)]
    base = rng.choice(bases)()
    if base.n <= max_dim:
        steps = rng.randrange(0, 3 if base.n == 3 else 5)
        base = stellar_subdivide(base, rng, steps)
    out = relabel(base, rng)
    validate(out.complex, check_links=False)
    return out
