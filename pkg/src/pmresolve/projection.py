"""The projection g: M -> Z, its degree, and the covering check.

g sends the point t of cube (F_0, ..., F_n, ...) to the convex combination
of the barycenters b(F_0), ..., b(F_n) with weights

    w_0 = prod_i (1 - t_i),   w_j = t_j * prod_{i > j} (1 - t_i).

Degrees are computed by counting cubes per flag, never numerically.
"""
from __future__ import annotations

import hashlib
import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from .assembly import FREE, Component, QuotientComplex, pattern_dim
from .complex_core import PseudoManifold
from .errors import InconsistentDegree
from .states import Flag, enumerate_flags, flag_sign


@dataclass(frozen=True)
class BarycentricPoint:
    flag: Flag
    weights: tuple


def g_weights(t: Sequence[float]) -> np.ndarray:
    """Weights on (b(F_0), ..., b(F_n)) for a cube point ``t``."""
    t = np.asarray(t, dtype=float)
    n = len(t)
    w = np.empty(n + 1)
    tail = 1.0
    for j in range(n, 0, -1):
        w[j] = t[j - 1] * tail
        tail *= 1.0 - t[j - 1]
    w[0] = tail
    return w


def g_inverse(w: Sequence[float]) -> np.ndarray:
    """Recover t from weights: t_n = w_n, t_j = w_j / prod_{i>j}(1 - t_i)."""
    w = np.asarray(w, dtype=float)
    n = len(w) - 1
    t = np.empty(n)
    tail = 1.0
    for j in range(n, 0, -1):
        t[j - 1] = w[j] / tail
        tail *= 1.0 - t[j - 1]
    return t


def g_eval(state, t: Sequence[float]) -> BarycentricPoint:
    return BarycentricPoint(tuple(state.flag), tuple(g_weights(t)))


def corner_position(corner: Sequence[int]) -> int:
    """Index k such that g maps this cube corner to b(F_k)."""
    k = 0
    for j, c in enumerate(corner, start=1):
        if c == 1:
            k = j
    return k


@dataclass
class DegreeReport:
    degree: int
    sign: int
    per_flag: Dict[Flag, int]
    unsigned: Dict[Flag, int]
    consistent: bool
    all_signs_agree: bool

    def as_dict(self):
        vals = sorted(set(self.per_flag.values()))
        return {
            "degree": self.degree,
            "relative_sign": self.sign,
            "flags": len(self.per_flag),
            "signed_counts": vals,
            "unsigned_counts": sorted(set(self.unsigned.values())),
            "consistent": self.consistent,
            "all_signs_agree": self.all_signs_agree,
        }


def degree(pm: PseudoManifold, comp: Component, cube_signs: np.ndarray,
           strict: bool = True) -> DegreeReport:
    """Signed number of cubes over every flag of Z.

    A cube contributes its orientation times the orientation of its flag
    simplex in Z.  All flags must see the same value r; ``InconsistentDegree``
    otherwise (unless ``strict`` is off).  The reported degree is |r| with
    the sign kept separately, since cube 0 was oriented arbitrarily.
    """
    signed: Dict[Flag, int] = {f: 0 for f in enumerate_flags(pm)}
    unsigned: Dict[Flag, int] = dict.fromkeys(signed, 0)
    fsign: Dict[Flag, int] = {}
    contributions = set()
    for s, sg in zip(comp.states, cube_signs):
        f = s.flag
        e = fsign.get(f)
        if e is None:
            e = fsign[f] = flag_sign(pm, f)
        v = int(sg) * e
        contributions.add(v)
        signed[f] += v
        unsigned[f] += 1
    values = set(signed.values())
    consistent = len(values) == 1
    if not consistent and strict:
        raise InconsistentDegree(f"signed cube counts over flags vary: {sorted(values)[:6]}")
    r = next(iter(values)) if consistent else 0
    return DegreeReport(abs(r), 1 if r >= 0 else -1, signed, unsigned, consistent,
                        len(contributions) == 1)


@dataclass
class CoveringReport:
    covering: bool
    sheets: List[int]
    wall_violations: List[tuple] = field(default_factory=list)
    unbranched_violations: List[tuple] = field(default_factory=list)
    branch_points: Dict[str, int] = field(default_factory=dict)
    branch_cells: List[tuple] = field(default_factory=list)

    @property
    def branched(self) -> bool:
        return bool(self.branch_points)

    def as_dict(self):
        return {
            "covering_off_codim2": self.covering,
            "sheets": self.sheets,
            "wall_violations": len(self.wall_violations),
            "unbranched_violations": len(self.unbranched_violations),
            "branch_points": self.branch_points,
            "branch_cell_dims": sorted({d for _, d, _ in self.branch_cells}),
        }


def covering_check(pm: PseudoManifold, comp: Component, q: QuotientComplex) -> CoveringReport:
    """Combinatorial covering test of g off the (n-2)-skeleton.

    * sheets: every flag of Z carries the same number of cubes;
    * walls: the faces t_j = 0 (any j) and t_1 = 1 are glued to cubes over
      the flag adjacent across the matching wall (faces t_j = 1, j >= 2,
      collapse into the face F_j of dimension n - j and are exempt);
    * vertices: a vertex of M over b(F) with dim F >= n - 1 must have local
      degree 1 and see every flag through F; over lower-dimensional F a
      local degree above 1 is recorded as a branch point.
    """
    n = comp.n
    P = pm.poset
    flags = enumerate_flags(pm)
    count = Counter(s.flag for s in comp.states)
    sheets = sorted({count.get(f, 0) for f in flags})
    walls = []
    nb = comp.neighbors
    for i, s in enumerate(comp.states):
        f = s.flag
        for j in range(1, n + 1):
            g = comp.states[nb[i, j - 1, 0]].flag
            if g[:j] + g[j + 1:] != f[:j] + f[j + 1:] or g[j] == f[j]:
                walls.append((i, j, 0))
        g = comp.states[nb[i, 0, 1]].flag
        if g[1:] != f[1:] or g[0] == f[0]:
            walls.append((i, 1, 1))

    through: Dict[int, int] = Counter()
    for f in flags:
        for k, c in enumerate(f):
            through[(k, c)] += 1
    unbranched, branch_pts, branch_cells = [], Counter(), []
    for p in q.patterns:
        if pattern_dim(p) != 0:
            continue
        k = corner_position(p)
        cls = q.classes[p]
        groups = defaultdict(list)
        for i, c in enumerate(cls):
            groups[int(c)].append(i)
        for c, members in groups.items():
            cell = comp.states[members[0]].flag[k]
            seen = Counter(comp.states[i].flag for i in members)
            mult = set(seen.values())
            local = next(iter(mult)) if len(mult) == 1 else -1
            dim = P.dims[cell]
            if dim >= n - 1:
                if local != 1 or len(seen) != through[(k, cell)]:
                    unbranched.append((c, dim, local))
            elif local != 1:
                branch_pts[str(local)] += 1
                branch_cells.append((c, dim, local))
    ok = len(sheets) == 1 and not walls and not unbranched
    return CoveringReport(ok, sheets, walls, unbranched, dict(sorted(branch_pts.items())),
                          branch_cells)


def input_digest(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def realization_report(pm: PseudoManifold, comp: Component, q: QuotientComplex,
                       manifold, cube_signs, deg: DegreeReport, cover: CoveringReport,
                       provenance: str, digest: Optional[str] = None) -> dict:
    """Machine-readable summary: for any singular cycle f: Z -> X, the
    composite f o g realizes ``degree`` times [f]."""
    chi_z = sum((-1) ** d * k for d, k in enumerate(pm.complex.f_vector()))
    return {
        "input_digest": digest,
        "provenance": provenance,
        "base": {"dimension": pm.n, "facets": len(pm.complex.facets),
                 "f_vector": pm.complex.f_vector(), "euler_characteristic": chi_z},
        "component": {"cubes": len(comp), "complete": comp.complete},
        "quotient": {"face_counts": q.face_counts,
                     "euler_characteristic": q.euler_characteristic},
        "manifold": manifold.as_dict(),
        "orientable": cube_signs is not None,
        "degree": deg.as_dict(),
        "covering": cover.as_dict(),
        "realizes_multiple": deg.degree,
    }
