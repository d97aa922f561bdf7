"""Simplicial substrate: complexes, pseudo-manifold checks, orientation,
links and barycentric subdivision.

Cells are plain tuples of strictly increasing vertex ids.  A complex may
list the same facet twice; in a pseudo-manifold that can only happen for
the n-sphere made of two simplices glued along their boundary (the 2-gon
for n = 1).  Facets are therefore addressed by position wherever identity
matters, and every proper face by its vertex tuple.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    FaceNotPresent,
    NonOrientable,
    NotNested,
    NotStronglyConnected,
    RidgeDegreeViolation,
    SchemaError,
)
from .homology import homology

Cell = Tuple[int, ...]


def cell(vertices) -> Cell:
    """Canonical form of a vertex collection; rejects repeated vertices."""
    c = tuple(sorted(int(v) for v in vertices))
    if len(set(c)) != len(c):
        raise SchemaError(f"cell {list(vertices)} repeats a vertex")
    if c and c[0] < 0:
        raise SchemaError(f"cell {list(vertices)} has a negative vertex id")
    return c


def perm_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (distinct comparable items)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def subfaces(c: Cell, dim: int):
    return combinations(c, dim + 1)


@dataclass(frozen=True)
class SimplicialComplex:
    dimension: int
    facets: Tuple[Cell, ...]

    def __post_init__(self):
        if self.dimension < 0:
            raise SchemaError("dimension must be non-negative")
        for f in self.facets:
            if len(f) != self.dimension + 1:
                raise SchemaError(f"facet {f} does not have {self.dimension + 1} vertices")
            if any(a >= b for a, b in zip(f, f[1:])):
                raise SchemaError(f"facet {f} is not strictly increasing")

    @classmethod
    def from_facets(cls, facets, dimension: Optional[int] = None) -> "SimplicialComplex":
        fs = tuple(sorted(cell(f) for f in facets))
        if dimension is None:
            if not fs:
                raise SchemaError("empty complex needs an explicit dimension")
            dimension = len(fs[0]) - 1
        return cls(dimension, fs)

    @property
    def vertices(self) -> List[int]:
        return sorted({v for f in self.facets for v in f})

    def faces(self, dim: int) -> List[Cell]:
        """Distinct faces of a given dimension; facets keep their multiplicity."""
        if dim == self.dimension:
            return list(self.facets)
        out = set()
        for f in self.facets:
            out.update(subfaces(f, dim))
        return sorted(out)

    def f_vector(self) -> List[int]:
        return [len(self.faces(d)) for d in range(self.dimension + 1)]

    def relabel(self, mapping) -> "SimplicialComplex":
        return SimplicialComplex.from_facets(
            [[mapping[v] for v in f] for f in self.facets], self.dimension)


def euler_characteristic(complex: SimplicialComplex) -> int:
    return sum((-1) ** d * k for d, k in enumerate(complex.f_vector()))


class FacePoset:
    """Integer ids for every face of a complex, with incidence tables.

    Ids are ordered by (dimension, vertex tuple, multiplicity), so facets get
    the top ids and comparing id tuples of equal-shape chains is the same as
    comparing them lexicographically.
    """

    def __init__(self, complex: SimplicialComplex):
        n = complex.dimension
        self.n = n
        self.complex = complex
        cells: List[Cell] = []
        dims: List[int] = []
        for d in range(n):
            for c in complex.faces(d):
                cells.append(c)
                dims.append(d)
        self.num_proper = len(cells)
        self.index: Dict[Cell, int] = {c: i for i, c in enumerate(cells)}
        self.facet_ids: List[int] = []
        for f in complex.facets:
            self.facet_ids.append(len(cells))
            cells.append(f)
            dims.append(n)
        self.cells = cells
        self.dims = dims
        self.vsets = [frozenset(c) for c in cells]
        cof: List[List[int]] = [[] for _ in range(self.num_proper)]
        self.facet_faces: Dict[int, List[int]] = {}
        for g in self.facet_ids:
            faces = []
            for d in range(n):
                for sub in subfaces(cells[g], d):
                    i = self.index[sub]
                    faces.append(i)
                    cof[i].append(g)
            faces.append(g)
            self.facet_faces[g] = faces
        self.cofacets = cof

    def id_of(self, c: Cell) -> int:
        c = tuple(c)
        if len(c) == self.n + 1:
            for g in self.facet_ids:
                if self.cells[g] == c:
                    return g
            raise FaceNotPresent(f"{c} is not a facet")
        try:
            return self.index[c]
        except KeyError:
            raise FaceNotPresent(f"{c} is not a face") from None

    def contains(self, small: int, big: int) -> bool:
        return self.vsets[small] <= self.vsets[big]

    def facets_containing(self, f: int) -> List[int]:
        if self.dims[f] == self.n:
            return [f]
        return self.cofacets[f]

    def faces_between(self, f: int, g: int) -> List[int]:
        """Ids of all H with f <= H <= g, g a facet."""
        lo = self.vsets[f]
        return [h for h in self.facet_faces[g] if lo <= self.vsets[h]]

    def ridges_containing(self, f: int, facet: int) -> List[int]:
        """Ridges of ``facet`` that contain ``f``."""
        g = self.cells[facet]
        keep = self.vsets[f]
        return [self.index[g[:i] + g[i + 1:]] for i in range(len(g)) if g[i] not in keep]


# -- validation ----------------------------------------------------------


@dataclass
class SkeletonReport:
    pure: bool
    ridge_degrees: Dict[int, int]
    strongly_connected: bool
    singular_faces: List[Cell] = field(default_factory=list)
    partial_faces: List[Cell] = field(default_factory=list)


def _facet_adjacency(complex: SimplicialComplex):
    n = complex.dimension
    by_ridge: Dict[Cell, List[int]] = {}
    for i, f in enumerate(complex.facets):
        for k in range(n + 1):
            by_ridge.setdefault(f[:k] + f[k + 1:], []).append(i)
    return by_ridge


def _connected(num: int, edges) -> bool:
    if num == 0:
        return True
    adj = [[] for _ in range(num)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    todo = [0]
    while todo:
        for b in adj[todo.pop()]:
            if b not in seen:
                seen.add(b)
                todo.append(b)
    return len(seen) == num


def validate(complex: SimplicialComplex, check_links: bool = True) -> SkeletonReport:
    """Pseudo-manifold checks plus the list of faces whose link is not a
    sphere.

    Raises ``RidgeDegreeViolation`` or ``NotStronglyConnected``.  Links of
    dimension <= 2 are recognised exactly; above that, a face whose link is
    a homology sphere is listed in ``partial_faces`` rather than declared
    regular.
    """
    n = complex.dimension
    by_ridge = _facet_adjacency(complex)
    hist = Counter(len(v) for v in by_ridge.values())
    if n >= 1:
        bad = sorted(r for r, fs in by_ridge.items() if len(fs) != 2)
        if bad:
            raise RidgeDegreeViolation(
                f"{len(bad)} ridges not in exactly two facets, first {bad[0]}")
    edges = [tuple(fs) for fs in by_ridge.values() if len(fs) == 2]
    if not _connected(len(complex.facets), edges):
        raise NotStronglyConnected("facet adjacency graph is disconnected")
    report = SkeletonReport(True, dict(sorted(hist.items())), True)
    if check_links:
        for d in range(n - 1):
            for f in complex.faces(d):
                verdict = sphere_verdict(link_complex(complex, f))
                if verdict == "no":
                    report.singular_faces.append(f)
                elif verdict == "partial":
                    report.partial_faces.append(f)
    return report


def orient(complex: SimplicialComplex) -> Tuple[int, ...]:
    """Coherent facet signs, propagated across ridges from facet 0 (+1).

    A facet ``f`` with sign ``s`` induces ``s * (-1)**k`` on the ridge
    obtained by deleting its k-th vertex; coherence asks the two inductions
    on each ridge to be opposite.
    """
    n = complex.dimension
    facets = complex.facets
    by_ridge = _facet_adjacency(complex)
    adj: List[List[Tuple[int, int, int]]] = [[] for _ in facets]
    for r, fs in by_ridge.items():
        if len(fs) != 2:
            raise RidgeDegreeViolation(f"ridge {r} lies in {len(fs)} facets")
        a, b = fs
        ka = _missing_position(facets[a], r)
        kb = _missing_position(facets[b], r)
        adj[a].append((b, ka, kb))
        adj[b].append((a, kb, ka))
    signs = [0] * len(facets)
    for start in range(len(facets)):
        if signs[start]:
            continue
        signs[start] = 1
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for b, ka, kb in adj[a]:
                # s_a (-1)^ka = -s_b (-1)^kb
                want = -signs[a] * (-1) ** (ka + kb)
                if signs[b] == 0:
                    signs[b] = want
                    queue.append(b)
                elif signs[b] != want:
                    raise NonOrientable("orientation propagation hit a contradiction")
    return tuple(signs)


def _missing_position(f: Cell, r: Cell) -> int:
    for k, v in enumerate(f):
        if k >= len(r) or r[k] != v:
            return k
    raise ValueError("ridge not in facet")


def is_coherent(complex: SimplicialComplex, signs: Sequence[int]) -> bool:
    induced: Dict[Cell, List[int]] = {}
    for f, s in zip(complex.facets, signs):
        for k in range(len(f)):
            induced.setdefault(f[:k] + f[k + 1:], []).append(s * (-1) ** k)
    return all(len(v) == 2 and v[0] == -v[1] for v in induced.values())


@dataclass(frozen=True)
class PseudoManifold:
    complex: SimplicialComplex
    orientation: Tuple[int, ...]

    @classmethod
    def from_complex(cls, complex: SimplicialComplex, orientation=None) -> "PseudoManifold":
        validate(complex, check_links=False)
        if orientation is None:
            orientation = orient(complex)
        else:
            orientation = tuple(int(s) for s in orientation)
            if len(orientation) != len(complex.facets) or set(orientation) - {1, -1}:
                raise SchemaError("orientation must give +1/-1 for every facet")
            if not is_coherent(complex, orientation):
                raise NonOrientable("supplied orientation is not coherent")
        return cls(complex, orientation)

    @classmethod
    def from_facets(cls, facets, dimension=None) -> "PseudoManifold":
        return cls.from_complex(SimplicialComplex.from_facets(facets, dimension))

    @property
    def n(self) -> int:
        return self.complex.dimension

    @cached_property
    def poset(self) -> FacePoset:
        return FacePoset(self.complex)

    def facet_sign(self, facet_id: int) -> int:
        return self.orientation[facet_id - self.poset.num_proper]


# -- links and spheres ----------------------------------------------------


def link_complex(complex: SimplicialComplex, f) -> SimplicialComplex:
    f = tuple(f)
    fs = set(f)
    facets = [tuple(v for v in g if v not in fs) for g in complex.facets if fs <= set(g)]
    if not facets:
        raise FaceNotPresent(f"{f} is not a face")
    return SimplicialComplex(complex.dimension - len(f), tuple(sorted(facets)))


def link(pm: PseudoManifold, f) -> SimplicialComplex:
    """Link of a face: ``{G - f : G a facet containing f}`` and its faces."""
    return link_complex(pm.complex, cell(f))


def oriented_link(complex: SimplicialComplex, signs: Sequence[int], v: int):
    """Vertex link with the induced orientation ``s * (-1)**pos(v)``."""
    facets, out = [], []
    for g, s in zip(complex.facets, signs):
        if v in g:
            k = g.index(v)
            facets.append(g[:k] + g[k + 1:])
            out.append(s * (-1) ** k)
    order = sorted(range(len(facets)), key=facets.__getitem__)
    return (SimplicialComplex(complex.dimension - 1, tuple(facets[i] for i in order)),
            tuple(out[i] for i in order))


def oriented_vertex_links(complex: SimplicialComplex, signs: Sequence[int]):
    """``{v: oriented_link(complex, signs, v)}`` in one pass over the facets."""
    acc: Dict[int, List[Tuple[Cell, int]]] = {}
    for g, s in zip(complex.facets, signs):
        for k, v in enumerate(g):
            acc.setdefault(v, []).append((g[:k] + g[k + 1:], s * (-1) ** k))
    out = {}
    for v, items in acc.items():
        items.sort()
        out[v] = (SimplicialComplex(complex.dimension - 1, tuple(f for f, _ in items)),
                  tuple(s for _, s in items))
    return out


def components(complex: SimplicialComplex) -> int:
    verts = complex.vertices
    idx = {v: i for i, v in enumerate(verts)}
    parent = list(range(len(verts)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in complex.facets:
        for a in f[1:]:
            ra, rb = find(idx[f[0]]), find(idx[a])
            if ra != rb:
                parent[ra] = rb
    return len({find(i) for i in range(len(verts))})


def sphere_verdict(k: SimplicialComplex) -> str:
    """'yes', 'no' or 'partial' (homology sphere, dimension >= 3)."""
    d = k.dimension
    if d == 0:
        return "yes" if len(k.facets) == 2 else "no"
    if d == 1:
        deg = Counter(v for e in k.facets for v in e)
        ok = all(c == 2 for c in deg.values()) and components(k) == 1
        return "yes" if ok else "no"
    try:
        validate(k, check_links=False)
    except (RidgeDegreeViolation, NotStronglyConnected):
        return "no"
    if components(k) != 1:
        return "no"
    if d == 2:
        for v in k.vertices:
            if sphere_verdict(link_complex(k, (v,))) != "yes":
                return "no"
        return "yes" if euler_characteristic(k) == 2 else "no"
    groups = homology(k.facets, d)
    expected = [(1, ())] + [(0, ())] * (d - 1) + [(1, ())]
    return "partial" if groups == expected else "no"


# -- subdivision and intervals -------------------------------------------


def face_interval(pm: PseudoManifold, f, g) -> List[Cell]:
    """All faces H with f <= H <= g, ordered by dimension then lexicographically."""
    f, g = cell(f), cell(g)
    if not set(f) <= set(g):
        raise NotNested(f"{f} is not contained in {g}")
    if not any(set(g) <= set(G) for G in pm.complex.facets):
        raise FaceNotPresent(f"{g} is not a face")
    rest = [v for v in g if v not in f]
    out = []
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            out.append(tuple(sorted(f + extra)))
    return sorted(out, key=lambda c: (len(c), c))


def flag_vertex_order(poset: FacePoset, flag: Sequence[int]) -> List[int]:
    """Vertices (w_0, ..., w_n) of F_0 in the order the flag adds them,
    starting from the vertex F_n."""
    n = poset.n
    order = list(poset.cells[flag[n]])
    for i in range(n - 1, -1, -1):
        (new,) = poset.vsets[flag[i]] - poset.vsets[flag[i + 1]]
        order.append(new)
    return order


def barycentric_subdivision(pm: PseudoManifold):
    """Order complex of the face poset.

    Returns ``(subdivided pm, coloring, origin)`` where ``coloring[v]`` is
    the dimension of the face that new vertex ``v`` stands for and
    ``origin[v]`` is that face (a vertex tuple).
    """
    P = pm.poset
    n = P.n
    origin = list(P.cells)
    coloring = list(P.dims)
    facets, signs = [], []
    for g in P.facet_ids:
        gs = pm.facet_sign(g)
        gc = P.cells[g]
        for order in permutations(gc):
            chain = [P.index[tuple(sorted(order[:k]))] for k in range(1, n + 1)] + [g]
            # ids increase with dimension, so the chain is already sorted and
            # its orientation matches the ordered vertex sequence
            facets.append(tuple(chain))
            signs.append(gs * perm_sign(order))
    order = sorted(range(len(facets)), key=facets.__getitem__)
    sub = SimplicialComplex(n, tuple(facets[i] for i in order))
    new = PseudoManifold(sub, tuple(signs[i] for i in order))
    return new, coloring, origin
