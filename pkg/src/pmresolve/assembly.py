"""The cube complex M: one n-cube per reached state, glued by the Phi maps.

Face classes are computed pattern by pattern.  A pattern pins some
coordinates to 0/1 and leaves the rest free; two faces with the same
pattern are identified exactly when their states are joined by a word in
the Phi_j^{eps_j} for the pinned (j, eps_j), so each pattern's classes are
the connected components of that sub-graph of the state graph.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .complex_core import SimplicialComplex, euler_characteristic, sphere_verdict
from .errors import CapExceeded, NonOrientableQuotient
from .states import ResolutionState, Resolver

FREE = 2
Pattern = Tuple[int, ...]  # entries 0, 1 or FREE


@dataclass
class Component:
    """States of one connected piece of M and their gluing partners.

    ``neighbors[i, j - 1, eps]`` is the index of Phi_j^eps(state i); -1
    marks an unglued face (only in partial explorations or hand-built
    complexes).
    """

    n: int
    states: List[ResolutionState]
    neighbors: np.ndarray
    complete: bool = True

    def __len__(self):
        return len(self.states)


def explore_component(resolver: Resolver, seed: Optional[ResolutionState] = None,
                      cap: int = 1_000_000) -> Component:
    """Breadth-first closure of ``seed`` under all 2n involutions.

    Generators are applied in the order (j = 1..n, eps = 0, 1).  Raises
    ``CapExceeded`` (carrying the explored prefix) when more than ``cap``
    states would be needed.
    """
    n = resolver.n
    if seed is None:
        seed = resolver.initial_state()
    index: Dict[ResolutionState, int] = {seed: 0}
    states = [seed]
    rows: List[List[int]] = []
    queue = deque([seed])
    phi = resolver.phi
    while queue:
        s = queue.popleft()
        row = []
        for j in range(1, n + 1):
            for eps in (0, 1):
                t = phi(j, eps, s)
                k = index.get(t)
                if k is None:
                    if len(states) >= cap:
                        rows.append(row + [-1] * (2 * n - len(row)))
                        raise CapExceeded(cap, _partial(n, states, rows))
                    k = len(states)
                    index[t] = k
                    states.append(t)
                    queue.append(t)
                row.append(k)
        rows.append(row)
    nb = np.asarray(rows, dtype=np.int64).reshape(len(states), n, 2)
    return Component(n, states, nb)


def _partial(n, states, rows):
    nb = np.full((len(states), n, 2), -1, dtype=np.int64)
    for i, row in enumerate(rows):
        nb[i] = np.asarray(row, dtype=np.int64).reshape(n, 2)
    return Component(n, states, nb, complete=False)


def all_patterns(n: int) -> List[Pattern]:
    return list(product((0, 1, FREE), repeat=n))


def pattern_dim(p: Pattern) -> int:
    return sum(1 for x in p if x == FREE)


@dataclass
class QuotientComplex:
    """Face classes of M.

    ``classes[p][i]`` is the global class id of face ``p`` of cube ``i``;
    ``class_pattern[c]`` the pattern shared by all members of class ``c``.
    """

    n: int
    num_cubes: int
    patterns: List[Pattern]
    classes: Dict[Pattern, np.ndarray]
    class_pattern: List[Pattern]
    class_size: np.ndarray
    face_counts: List[int]
    neighbors: np.ndarray = field(repr=False, default=None)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d * k for d, k in enumerate(self.face_counts))

    def face_class(self, pattern: Pattern, cube: int) -> int:
        return int(self.classes[tuple(pattern)][cube])


def build_quotient(comp: Component) -> QuotientComplex:
    """Close the identifications of every face pattern."""
    n = comp.n
    N = len(comp)
    nb = comp.neighbors
    classes: Dict[Pattern, np.ndarray] = {}
    class_pattern: List[Pattern] = []
    sizes: List[np.ndarray] = []
    counts = [0] * (n + 1)
    offset = 0
    ids = np.arange(N)
    for p in all_patterns(n):
        src, dst = [ids], [ids]
        for j, e in enumerate(p):
            if e != FREE:
                col = nb[:, j, e]
                ok = col >= 0
                src.append(ids[ok])
                dst.append(col[ok])
        s = np.concatenate(src)
        d = np.concatenate(dst)
        graph = coo_matrix((np.ones(len(s), dtype=np.int8), (s, d)), shape=(N, N))
        k, labels = connected_components(graph, directed=False)
        labels = _canonical_labels(labels, k)
        classes[p] = labels + offset
        class_pattern.extend([p] * k)
        sizes.append(np.bincount(labels, minlength=k))
        counts[pattern_dim(p)] += k
        offset += k
    return QuotientComplex(n, N, all_patterns(n), classes, class_pattern,
                           np.concatenate(sizes), counts, nb)


def _canonical_labels(labels, k):
    # number classes by first occurrence so ids do not depend on scipy internals
    first = np.full(k, -1)
    order = []
    for i, c in enumerate(labels):
        if first[c] < 0:
            first[c] = len(order)
            order.append(c)
    return first[labels]


def codim1_class_sizes(q: QuotientComplex) -> Counter:
    out = Counter()
    for p in q.patterns:
        if pattern_dim(p) == q.n - 1:
            c = np.bincount(q.classes[p] - q.classes[p].min())
            out.update(c[c > 0].tolist())
    return out


def face_link(q: QuotientComplex, c: int) -> SimplicialComplex:
    """Link of face class ``c`` assembled from the cube faces in the class.

    A link vertex is a pair (class of a face one dimension up, side of the
    freed coordinate), so loops and multiply-incident faces stay distinct.
    """
    p = q.class_pattern[c]
    members = np.nonzero(q.classes[p] == c)[0]
    pinned = [j for j, e in enumerate(p) if e != FREE]
    ups = []
    for j in pinned:
        up = p[:j] + (FREE,) + p[j + 1:]
        ups.append((j, q.classes[up]))
    vid: Dict[Tuple[int, int], int] = {}
    simplices = []
    for i in members:
        simplex = []
        for j, cl in ups:
            key = (int(cl[i]), p[j])
            simplex.append(vid.setdefault(key, len(vid)))
        simplices.append(tuple(sorted(simplex)))
    return SimplicialComplex(q.n - pattern_dim(p) - 1, tuple(sorted(simplices)))


@dataclass
class ManifoldReport:
    manifold: bool
    closed: bool
    vertex_links: Dict[str, int]
    face_links: Dict[str, int]
    partial: bool
    failures: List[Tuple[int, Pattern, str]] = field(default_factory=list)

    def as_dict(self):
        return {
            "manifold": self.manifold,
            "closed": self.closed,
            "vertex_links": self.vertex_links,
            "face_links": self.face_links,
            "certificate": "partial" if self.partial else "exact",
            "failures": [[c, list(p), v] for c, p, v in self.failures[:20]],
        }


def verify_manifold(q: QuotientComplex, max_link_dim: int = 2) -> ManifoldReport:
    """Sphere check of every vertex link, plus every link of a positive
    dimensional face whose link dimension is at most ``max_link_dim``.

    Links up to dimension 2 are recognised exactly; vertex links of higher
    dimension get a homology-sphere certificate and flag the report as
    partial.
    """
    n = q.n
    sizes = codim1_class_sizes(q)
    closed = set(sizes) == {2} or (n == 0)
    vcount, fcount = Counter(), Counter()
    failures = []
    for c, p in enumerate(q.class_pattern):
        d = pattern_dim(p)
        if d == n:
            continue
        link_dim = n - d - 1
        if d > 0 and link_dim > max_link_dim:
            continue
        verdict = sphere_verdict(face_link(q, c))
        (vcount if d == 0 else fcount)[verdict] += 1
        if verdict == "no":
            failures.append((c, p, verdict))
    partial = vcount.get("partial", 0) > 0
    ok = closed and not failures
    return ManifoldReport(ok, closed, dict(vcount), dict(fcount), partial, failures)


def orient_quotient(q: QuotientComplex) -> np.ndarray:
    """Cube signs with opposite signs across every glued face.

    Gluings are the identity on coordinates, so two cubes sharing a face sit
    on the same side of it and need opposite orientations: the state graph
    must be bipartite.  Cube 0 gets +1.
    """
    nb = q.neighbors
    N = q.num_cubes
    sign = np.zeros(N, dtype=np.int64)
    for start in range(N):
        if sign[start]:
            continue
        sign[start] = 1
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for b in nb[a].ravel():
                if b < 0:
                    continue
                if sign[b] == 0:
                    sign[b] = -sign[a]
                    queue.append(b)
                elif sign[b] == sign[a]:
                    raise NonOrientableQuotient(
                        f"cubes {a} and {b} are glued but carry the same sign")
    return sign


def cube_chains(n: int):
    """Maximal chains of faces of the n-cube as pattern sequences
    (vertex, edge, ..., cube)."""
    chains = []
    for corner in product((0, 1), repeat=n):
        for order in permutations(range(n)):
            p = list(corner)
            chain = [tuple(p)]
            for j in order:
                p[j] = FREE
                chain.append(tuple(p))
            chains.append(chain)
    return chains


def order_complex(q: QuotientComplex) -> SimplicialComplex:
    """Triangulation of M by chains of faces inside each cube; vertex ids
    are face class ids."""
    chains = cube_chains(q.n)
    facets = set()
    out = []
    for i in range(q.num_cubes):
        for chain in chains:
            simplex = tuple(sorted(int(q.classes[p][i]) for p in chain))
            out.append(simplex)
            facets.add(simplex)
    return SimplicialComplex(q.n, tuple(sorted(out)))


def quotient_euler_check(q: QuotientComplex) -> bool:
    return q.euler_characteristic == euler_characteristic(order_complex(q))
