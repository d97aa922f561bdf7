"""Good labelings of ridges and label-set addressing of faces."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Tuple

from .complex_core import Cell, PseudoManifold, barycentric_subdivision, cell
from .errors import NoSuchFace, NotProperColoring, NotUnique, SchemaError, WrongColorCount


@dataclass(frozen=True)
class GoodLabeling:
    """Ridge -> label map.  ``label_sets[i]`` is c(F) for poset id ``i``."""

    pm: PseudoManifold
    labels: Dict[Cell, int]

    def __post_init__(self):
        ridges = set(self.pm.complex.faces(self.pm.n - 1))
        if set(self.labels) != ridges:
            missing = sorted(ridges - set(self.labels))[:3]
            raise SchemaError(f"labels must cover exactly the ridges; missing e.g. {missing}",
                              field="labels")
        P = self.pm.poset
        sets: List[FrozenSet[int]] = []
        for i, c in enumerate(P.cells):
            if P.dims[i] == P.n:
                sets.append(frozenset())
                continue
            labs = set()
            for g in P.facets_containing(i):
                for r in P.ridges_containing(i, g):
                    labs.add(self.labels[P.cells[r]])
            sets.append(frozenset(labs))
        object.__setattr__(self, "label_sets", tuple(sets))


def labelset(lab: GoodLabeling, f) -> FrozenSet[int]:
    """c(F): labels of the ridges containing ``f`` (empty for a facet)."""
    f = tuple(f)
    if len(f) == lab.pm.n + 1:
        return frozenset()
    return lab.label_sets[lab.pm.poset.id_of(cell(f))]


def labeling_from_coloring(pm: PseudoManifold, coloring) -> GoodLabeling:
    """Label each ridge by the one color missing from its vertices.

    ``coloring`` maps vertex -> color and must put n+1 distinct colors on
    every facet.
    """
    n = pm.n
    col = dict(coloring) if isinstance(coloring, dict) else dict(enumerate(coloring))
    palette = {col[v] for v in pm.complex.vertices if v in col}
    if len(palette) != n + 1 or any(v not in col for v in pm.complex.vertices):
        raise WrongColorCount(f"need exactly {n + 1} colors on all vertices, got {len(palette)}")
    for f in pm.complex.facets:
        cs = [col[v] for v in f]
        if len(set(cs)) != n + 1:
            if any(col[a] == col[b] for a, b in combinations(f, 2)):
                raise NotProperColoring(f"facet {f} has a monochromatic edge")
            raise WrongColorCount(f"facet {f} misses a color")
    labels = {}
    for r in pm.complex.faces(n - 1):
        (missing,) = palette - {col[v] for v in r}
        labels[r] = missing
    return GoodLabeling(pm, labels)


@dataclass
class LabelingReport:
    good: bool
    condition1: List[Tuple[Cell, int]] = field(default_factory=list)
    condition2: List[Tuple[Cell, Cell]] = field(default_factory=list)


def verify_good(pm: PseudoManifold, lab: GoodLabeling) -> LabelingReport:
    """Exhaustively check both good-labeling conditions.

    Condition 1 records (F, |c(F)|) for each face with the wrong count;
    condition 2 records each (F, G) whose interval is not separated by c.
    """
    P = pm.poset
    n = pm.n
    rep = LabelingReport(True)
    for i, c in enumerate(P.cells):
        k = len(lab.label_sets[i])
        if k != n - P.dims[i]:
            rep.condition1.append((c, k))
    for g in P.facet_ids:
        for f in P.facet_faces[g]:
            seen = set()
            for h in P.faces_between(f, g):
                s = lab.label_sets[h]
                if s in seen:
                    rep.condition2.append((P.cells[f], P.cells[g]))
                    break
                seen.add(s)
    rep.good = not rep.condition1 and not rep.condition2
    return rep


class FaceIndex:
    """Cached lookups of faces by label set inside a facet."""

    def __init__(self, lab: GoodLabeling):
        self.lab = lab
        self.P = lab.pm.poset
        self._by_set: Dict[int, Dict[FrozenSet[int], List[int]]] = {}
        self._cache: Dict[Tuple[int, int, FrozenSet[int]], int] = {}

    def lookup(self, f: int, g: int, s: FrozenSet[int]) -> int:
        """Poset id of the unique H with f <= H <= g and c(H) = s."""
        key = (f, g, s)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        table = self._by_set.get(g)
        if table is None:
            table = {}
            for h in self.P.facet_faces[g]:
                table.setdefault(self.lab.label_sets[h], []).append(h)
            self._by_set[g] = table
        lo = self.P.vsets[f]
        found = [h for h in table.get(s, ()) if lo <= self.P.vsets[h]]
        if not found:
            raise NoSuchFace(f"no face between {self.P.cells[f]} and {self.P.cells[g]} "
                             f"with labels {sorted(s)}")
        if len(found) > 1:
            raise NotUnique(f"{len(found)} faces between {self.P.cells[f]} and "
                            f"{self.P.cells[g]} with labels {sorted(s)}")
        self._cache[key] = found[0]
        return found[0]


def face_by_labelset(lab: GoodLabeling, f, g, s) -> Cell:
    """The unique face H with f <= H <= g (g a facet) and c(H) = s."""
    P = lab.pm.poset
    fid = P.id_of(cell(f))
    gid = P.id_of(cell(g))
    return P.cells[FaceIndex(lab).lookup(fid, gid, frozenset(s))]


def ensure_good(pm: PseudoManifold, coloring=None, labels: Optional[Dict[Cell, int]] = None):
    """Return ``(pm', labeling, provenance)``.

    User data wins: a proper coloring or an explicit (verified) labeling is
    used as is, provenance ``"direct"``.  Otherwise the complex is
    barycentrically subdivided and colored by face dimension, provenance
    ``"subdivided"``.
    """
    if labels is not None:
        lab = GoodLabeling(pm, {cell(k): int(v) for k, v in labels.items()})
        rep = verify_good(pm, lab)
        if not rep.good:
            raise NotProperColoring(f"supplied labels are not good: "
                                    f"{len(rep.condition1)} condition-1 and "
                                    f"{len(rep.condition2)} condition-2 violations")
        return pm, lab, "direct"
    if coloring is not None:
        return pm, labeling_from_coloring(pm, coloring), "direct"
    sub, dims, _ = barycentric_subdivision(pm)
    return sub, labeling_from_coloring(sub, dims), "subdivided"
