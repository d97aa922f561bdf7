"""Vertex-link census: oriented sphere isomorphism, balanced sets, and
matching the link multiset of a manifold against a prescription."""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Dict, List, Optional, Sequence, Tuple

from .complex_core import (
    SimplicialComplex,
    is_coherent,
    orient,
    oriented_link,
    oriented_vertex_links,
    perm_sign,
)
from .errors import NotBalanced, PatternMismatch


@dataclass(frozen=True)
class OrientedSphere:
    complex: SimplicialComplex
    orientation: Tuple[int, ...]

    @classmethod
    def from_facets(cls, facets, orientation=None) -> "OrientedSphere":
        k = SimplicialComplex.from_facets(facets)
        if orientation is None:
            orientation = orient(k)
        return cls(k, tuple(orientation))

    @property
    def dimension(self) -> int:
        return self.complex.dimension

    def mirror(self) -> "OrientedSphere":
        return OrientedSphere(self.complex, tuple(-s for s in self.orientation))

    def vertex_links(self) -> Dict[int, "OrientedSphere"]:
        links = oriented_vertex_links(self.complex, self.orientation)
        return {v: OrientedSphere(*links[v]) for v in sorted(links)}

    def invariant(self):
        """Isomorphism invariant: f-vector and sorted vertex signatures."""
        return self._invariant

    @cached_property
    def _invariant(self):
        return (self.dimension, tuple(self.complex.f_vector()),
                tuple(sorted(self._vertex_signatures().values())))

    def _vertex_signatures(self):
        return self._signatures

    @cached_property
    def _signatures(self):
        """vertex -> (degree, f-vector of its link)."""
        k = self.complex
        if k.dimension == 0:
            return {v: (1,) for v in k.vertices}
        star = defaultdict(list)
        for f in k.facets:
            for j, v in enumerate(f):
                star[v].append(f[:j] + f[j + 1:])
        out = {}
        for v, lk in star.items():
            faces = set()
            for g in lk:
                for r in range(1, len(g) + 1):
                    faces.update(combinations(g, r))
            fv = Counter(len(c) for c in faces)
            out[v] = (fv[1], tuple(fv[d] for d in range(1, k.dimension + 1)))
        return out


def _ridge_table(k: SimplicialComplex):
    table = defaultdict(list)
    for i, f in enumerate(k.facets):
        for j in range(len(f)):
            table[f[:j] + f[j + 1:]].append(i)
    return table


def _orientation_ratio(a: OrientedSphere, b: OrientedSphere, vmap) -> Optional[int]:
    index = {f: i for i, f in enumerate(b.complex.facets)}
    ratios = set()
    for f, s in zip(a.complex.facets, a.orientation):
        image = [vmap[v] for v in f]
        t = index.get(tuple(sorted(image)))
        if t is None:
            return None
        ratios.add(s * perm_sign(image) * b.orientation[t])
    return ratios.pop() if len(ratios) == 1 else None


def iso(a: OrientedSphere, b: OrientedSphere, mode: str = "either") -> Optional[Dict[int, int]]:
    """Vertex bijection a -> b carrying facets to facets, with the requested
    orientation behaviour ('preserve', 'reverse' or 'either'); None if no
    such map exists.

    Vertices are matched only against vertices of equal (degree, link
    f-vector).  A choice of image for one facet fixes the whole map by
    propagation across ridges, so the search backtracks over those seed
    choices only.
    """
    if mode not in ("preserve", "reverse", "either"):
        raise ValueError(mode)
    if a.invariant() != b.invariant():
        return None
    want = {"preserve": {1}, "reverse": {-1}, "either": {1, -1}}[mode]
    sa, sb = a._vertex_signatures(), b._vertex_signatures()
    ra, rb = _ridge_table(a.complex), _ridge_table(b.complex)
    fa, fb = a.complex.facets, b.complex.facets
    bset = set(fb)
    seed = fa[0]
    for target in fb:
        for image in permutations(target):
            if any(sa[u] != sb[w] for u, w in zip(seed, image)):
                continue
            vmap = _propagate(fa, fb, ra, rb, bset, dict(zip(seed, image)), sa, sb)
            if vmap is None:
                continue
            ratio = _orientation_ratio(a, b, vmap)
            if ratio in want:
                return vmap
    return None


def _propagate(fa, fb, ra, rb, bset, vmap, sa, sb):
    used = set(vmap.values())
    if len(used) != len(vmap):
        return None
    done = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        f = fa[i]
        for j in range(len(f)):
            ridge = f[:j] + f[j + 1:]
            others = [k for k in ra[ridge] if k != i]
            if not others:
                continue
            (k,) = others
            image_ridge = tuple(sorted(vmap[v] for v in ridge))
            partners = rb.get(image_ridge, [])
            if len(partners) != 2:
                return None
            (extra_a,) = set(fa[k]) - set(ridge)
            opts = [set(fb[t]) - set(image_ridge) for t in partners]
            mine = {vmap[v] for v in f} - set(image_ridge)
            cand = [next(iter(o)) for o in opts if o != mine]
            if len(cand) != 1:
                return None
            w = cand[0]
            if extra_a in vmap:
                if vmap[extra_a] != w:
                    return None
            else:
                if w in used or sa[extra_a] != sb[w]:
                    return None
                vmap[extra_a] = w
                used.add(w)
            if k not in done:
                done.add(k)
                stack.append(k)
    if len(done) != len(fa) or len(vmap) != len(sb):
        return None
    if {tuple(sorted(vmap[v] for v in f)) for f in fa} != bset:
        return None
    return vmap


@dataclass
class SphereClasses:
    """Oriented-isomorphism classes of a list of spheres."""

    reps: List[OrientedSphere]
    of: List[int]
    mirror: List[int]  # class of the mirror image, -1 if not present

    def amphichiral(self, c: int) -> bool:
        return self.mirror[c] == c


def classify(spheres: Sequence[OrientedSphere]) -> SphereClasses:
    reps: List[OrientedSphere] = []
    buckets: Dict[tuple, List[int]] = defaultdict(list)
    of = []
    for s in spheres:
        key = s.invariant()
        for c in buckets[key]:
            if iso(s, reps[c], "preserve") is not None:
                of.append(c)
                break
        else:
            buckets[key].append(len(reps))
            of.append(len(reps))
            reps.append(s)
    mirror = []
    for c, s in enumerate(reps):
        m = s.mirror()
        hit = -1
        for d in buckets[s.invariant()]:
            if iso(m, reps[d], "preserve") is not None:
                hit = d
                break
        mirror.append(hit)
    return SphereClasses(reps, of, mirror)


def _mirror_pairs(counts: Dict[int, int], classes: SphereClasses):
    """Split class counts into (K, -K) pairs; returns (pairs, leftovers)."""
    pairs, left = [], {}
    for c in sorted(counts):
        k = counts[c]
        if k == 0:
            continue
        m = classes.mirror[c]
        if m == c:
            if k % 2:
                left[c] = 1
            if k // 2:
                pairs.append((c, c, k // 2))
        elif m > c or m < 0:
            other = counts.get(m, 0) if m >= 0 else 0
            if min(k, other):
                pairs.append((c, m, min(k, other)))
            if k != other:
                left[c if k > other else m] = abs(k - other)
        elif c > m and counts.get(m, 0) == 0:
            left[c] = k
    return pairs, left


def balanced_check(ys: Sequence[OrientedSphere]):
    """Pair off all vertices of the given spheres so that each pair has
    links related by an orientation-reversing isomorphism.

    Returns a list of ``((i, u), (k, w), vertex map)`` with the map sending
    link(u in Y_i) onto link(w in Y_k) reversing orientation.  Raises
    ``NotBalanced`` with the offending class counts otherwise.
    """
    items = []
    for i, y in enumerate(ys):
        for v, lk in sorted(y.vertex_links().items()):
            items.append(((i, v), lk))
    classes = classify([lk for _, lk in items])
    counts = Counter(classes.of)
    _, left = _mirror_pairs(counts, classes)
    if left:
        raise NotBalanced(f"{len(left)} link classes cannot be mirror-paired",
                          {c: counts[c] for c in left})
    pool = defaultdict(list)
    for (key, lk), c in zip(items, classes.of):
        pool[c].append((key, lk))
    out = []
    for c in sorted(pool):
        m = classes.mirror[c]
        if m < c:
            continue
        if m == c:
            group = pool[c]
            for x in range(0, len(group), 2):
                (k1, l1), (k2, l2) = group[x], group[x + 1]
                out.append((k1, k2, iso(l1, l2, "reverse")))
        else:
            for (k1, l1), (k2, l2) in zip(pool[c], pool[m]):
                out.append((k1, k2, iso(l1, l2, "reverse")))
    return out


@dataclass
class CensusReport:
    r: int
    pairs: List[Tuple[int, int, int]]
    leftovers: Dict[int, int]
    class_counts: Dict[int, int]
    prescribed: Dict[int, int]
    amphichiral: Dict[int, bool] = field(default_factory=dict)
    f_vectors: Dict[int, List[int]] = field(default_factory=dict)

    def as_dict(self):
        return {
            "r": self.r,
            "pairs": [list(p) for p in self.pairs],
            "leftovers": {str(k): v for k, v in sorted(self.leftovers.items())},
            "classes": {
                str(c): {"count": n, "prescribed": self.prescribed.get(c, 0),
                         "amphichiral": self.amphichiral.get(c),
                         "f_vector": self.f_vectors.get(c)}
                for c, n in sorted(self.class_counts.items())
            },
        }


def manifold_vertex_links(m: SimplicialComplex, orientation=None) -> List[OrientedSphere]:
    if orientation is None:
        orientation = orient(m)
    elif not is_coherent(m, orientation):
        raise ValueError("orientation is not coherent")
    links = oriented_vertex_links(m, orientation)
    return [OrientedSphere(*links[v]) for v in sorted(links)]


def census_links(links: Sequence[OrientedSphere], ys: Sequence[OrientedSphere]) -> CensusReport:
    """Largest r such that the links minus r copies of every Y_i split into
    mirror pairs (K, -K).  Raises ``PatternMismatch`` (report attached) if
    not even r = 0 works."""
    classes = classify(list(links) + list(ys))
    lc = Counter(classes.of[: len(links)])
    yc = Counter(classes.of[len(links):])
    if yc:
        r_max = min(lc.get(c, 0) // k for c, k in yc.items())
    else:
        r_max = 0
    info = dict(
        amphichiral={c: classes.amphichiral(c) for c in range(len(classes.reps))},
        f_vectors={c: s.complex.f_vector() for c, s in enumerate(classes.reps)},
    )
    first_fail = None
    for r in range(r_max, -1, -1):
        residual = {c: lc.get(c, 0) - r * yc.get(c, 0) for c in set(lc) | set(yc)}
        residual = {c: k for c, k in residual.items() if k}
        pairs, left = _mirror_pairs(residual, classes)
        rep = CensusReport(r, pairs, left, dict(lc), dict(yc), **info)
        if not left:
            return rep
        if first_fail is None:
            first_fail = rep
    raise PatternMismatch(f"links do not split into prescribed copies plus mirror pairs "
                          f"({sum(first_fail.leftovers.values())} unmatched)", first_fail)


def census_match(m: SimplicialComplex, ys: Sequence[OrientedSphere],
                 orientation=None) -> CensusReport:
    return census_links(manifold_vertex_links(m, orientation), ys)


def residual_links(links: Sequence[OrientedSphere], ys: Sequence[OrientedSphere], r: int):
    """Links left after deleting r isomorphic copies of each Y_i."""
    remaining = list(links)
    for y in ys:
        for _ in range(r):
            for k, lk in enumerate(remaining):
                if iso(lk, y, "preserve") is not None:
                    del remaining[k]
                    break
            else:
                raise ValueError("not enough copies to delete")
    return remaining
