"""End-to-end runs: label, resolve, verify, export."""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .assembly import (
    FREE,
    Component,
    ManifoldReport,
    QuotientComplex,
    build_quotient,
    explore_component,
    order_complex,
    orient_quotient,
    verify_manifold,
)
from .census import census_match
from .complex_core import PseudoManifold, barycentric_subdivision
from .errors import NonOrientableQuotient, PatternMismatch
from .io import CUBES_SCHEMA, REPORT_SCHEMA, ComplexFile
from .labeling import GoodLabeling, ensure_good
from .projection import (
    CoveringReport,
    DegreeReport,
    covering_check,
    degree,
    g_weights,
    input_digest,
    realization_report,
)
from .states import ResolutionState, Resolver, enumerate_flags


@dataclass(frozen=True)
class RunConfig:
    """Knobs of one ``resolve`` run; echoed in the report as ``flags``."""

    seed_flag: Optional[int] = None  # index into the lexicographic flag list
    max_states: int = 1_000_000
    census: bool = False

    def as_flags(self) -> dict:
        return asdict(self)


@dataclass
class Resolution:
    pm: PseudoManifold
    lab: GoodLabeling
    provenance: str
    resolver: Resolver
    comp: Component
    q: QuotientComplex
    manifold: ManifoldReport
    signs: Optional[np.ndarray]
    degree: DegreeReport
    covering: CoveringReport
    timing: dict = field(default_factory=dict)
    origin: Optional[list] = None  # subdivided vertex -> original face

    def summary(self, digest=None) -> dict:
        return realization_report(self.pm, self.comp, self.q, self.manifold, self.signs,
                                  self.degree, self.covering, self.provenance, digest)


def prepare(cf: ComplexFile):
    """(pm, labeling, provenance, origin) for a parsed complex file."""
    pm = cf.pseudomanifold()
    coloring = None
    if cf.coloring is not None:
        coloring = {v: cf.coloring[v] for v in pm.complex.vertices}
    if cf.labels is None and coloring is None:
        sub, dims, origin = barycentric_subdivision(pm)
        pm2, lab, prov = ensure_good(sub, coloring=dims)
        return pm2, lab, "subdivided", origin
    pm2, lab, prov = ensure_good(pm, coloring=coloring, labels=cf.labels)
    return pm2, lab, prov, None


def resolve(pm: PseudoManifold, lab: GoodLabeling, provenance: str = "direct",
            seed_flag: Optional[int] = None, max_states: int = 1_000_000,
            resolver: Optional[Resolver] = None) -> Resolution:
    """Explore the seed's component, glue it, and run every check."""
    t0 = time.perf_counter()
    R = resolver or Resolver(pm, lab)
    flag = None if seed_flag is None else enumerate_flags(pm)[seed_flag]
    comp = explore_component(R, R.initial_state(flag), cap=max_states)
    t1 = time.perf_counter()
    q = build_quotient(comp)
    t2 = time.perf_counter()
    manifold = verify_manifold(q)
    try:
        signs = orient_quotient(q)
    except NonOrientableQuotient:
        signs = None
    deg = degree(pm, comp, signs if signs is not None else np.ones(len(comp), int),
                 strict=False)
    cover = covering_check(pm, comp, q)
    t3 = time.perf_counter()
    timing = {"explore_s": round(t1 - t0, 4), "quotient_s": round(t2 - t1, 4),
              "checks_s": round(t3 - t2, 4)}
    return Resolution(pm, lab, provenance, R, comp, q, manifold, signs, deg, cover, timing)


def run(cf: ComplexFile, config: RunConfig = RunConfig()):
    """Parse-to-report in one call; returns ``(resolution, report)``."""
    pm, lab, prov, origin = prepare(cf)
    res = resolve(pm, lab, prov, seed_flag=config.seed_flag, max_states=config.max_states)
    res.origin = origin
    census = census_section(res) if config.census else None
    return res, run_report(cf, res, config.as_flags(), census)


def verdicts(res: Resolution) -> dict:
    return {
        "manifold": res.manifold.manifold,
        "closed": res.manifold.closed,
        "orientable": res.signs is not None,
        "degree_consistent": res.degree.consistent,
        "degree": res.degree.degree,
        "covering_off_codim2": res.covering.covering,
    }


def failed(res: Resolution) -> List[str]:
    v = verdicts(res)
    return [k for k in ("manifold", "closed", "orientable", "degree_consistent",
                        "covering_off_codim2") if not v[k]]


def run_report(cf: ComplexFile, res: Resolution, flags: dict, census=None) -> dict:
    digest = input_digest(cf.to_dict())
    out = res.summary(digest)
    out["schema"] = REPORT_SCHEMA
    out["flags"] = flags
    out["verdicts"] = verdicts(res)
    out["census"] = census
    out["stats"] = {"states": len(res.comp),
                    "distinct_families": res.resolver.distinct_families,
                    "family_updates": res.resolver.family_updates}
    out["timing"] = res.timing
    return out


def census_section(res: Resolution, ys: Sequence = ()) -> dict:
    k = order_complex(res.q)
    try:
        return census_match(k, list(ys)).as_dict()
    except PatternMismatch as e:
        d = e.report.as_dict()
        d["mismatch"] = True
        return d


# -- export -----------------------------------------------------------------


def export_cubes(res: Resolution) -> dict:
    P = res.pm.poset
    fam_ids = {}
    cubes = []
    for s in res.comp.states:
        fid = fam_ids.setdefault(s.family, len(fam_ids))
        cubes.append({"flag": [list(P.cells[c]) for c in s.flag], "flag_ids": list(s.flag),
                      "h": list(s.h), "family": fid})
    return {
        "schema": CUBES_SCHEMA,
        "provenance": res.provenance,
        "base": ComplexFile.from_pm(res.pm).to_dict(),
        "cubes": cubes,
        "neighbors": res.comp.neighbors.tolist(),
        "verdicts": verdicts(res),
    }


def import_cubes(data: dict):
    from .io import complex_from_dict
    from .errors import SchemaError

    if data.get("schema") != CUBES_SCHEMA:
        raise SchemaError(f"expected schema {CUBES_SCHEMA}", field="schema")
    pm = complex_from_dict(data["base"]).pseudomanifold()
    n = pm.n
    states = [ResolutionState(tuple(c["flag_ids"]), c["family"], tuple(c["h"]))
              for c in data["cubes"]]
    nb = np.asarray(data["neighbors"], dtype=np.int64)
    if nb.shape != (len(states), n, 2):
        raise SchemaError("neighbor table has the wrong shape", field="neighbors")
    return pm, Component(n, states, nb)


def verify_export(data: dict) -> dict:
    """Re-run the quotient checks on an exported cube list."""
    pm, comp = import_cubes(data)
    q = build_quotient(comp)
    manifold = verify_manifold(q)
    try:
        signs = orient_quotient(q)
    except NonOrientableQuotient:
        signs = None
    deg = degree(pm, comp, signs if signs is not None else np.ones(len(comp), int),
                 strict=False)
    cover = covering_check(pm, comp, q)
    res = Resolution(pm, None, data.get("provenance"), None, comp, q, manifold, signs,
                     deg, cover)
    return {"verdicts": verdicts(res), "exported_verdicts": data.get("verdicts"),
            "match": verdicts(res) == data.get("verdicts")}


def base_coordinates(cf: ComplexFile, res: Resolution) -> dict:
    """Vertex positions of the resolved base: user coordinates (averaged
    through the subdivision if needed) or a seeded 3-D spring layout."""
    if cf.coordinates is not None:
        original = {v: np.asarray(cf.coordinates[v], float) for v in range(len(cf.coordinates))}
        if res.origin is None:
            return original
        return {v: np.mean([original[u] for u in face], axis=0)
                for v, face in enumerate(res.origin)}
    import networkx as nx

    g = nx.Graph()
    for f in res.pm.complex.faces(1):
        g.add_edge(*f)
    pos = nx.spring_layout(g, dim=3, seed=0)
    return {v: np.asarray(p) for v, p in pos.items()}


def off_mesh(res: Resolution, coords: dict) -> str:
    """OFF text for the order complex of a 2-dimensional M; each vertex is
    the image under g of the centre of the face class it stands for."""
    if res.q.n != 2:
        raise ValueError("OFF export is only defined for n = 2")
    P = res.pm.poset
    q = res.q
    k = order_complex(q)
    bary = {}

    def b(c):
        if c not in bary:
            bary[c] = np.mean([coords[v] for v in P.cells[c]], axis=0)
        return bary[c]

    points = {}
    for p in q.patterns:
        t = [0.5 if x == FREE else x for x in p]
        w = g_weights(t)
        cls = q.classes[p]
        for i in np.unique(cls, return_index=True)[1]:
            flag = res.comp.states[i].flag
            points[int(cls[i])] = sum(w[m] * b(flag[m]) for m in range(len(flag)))
    verts = sorted(points)
    index = {v: i for i, v in enumerate(verts)}
    lines = ["OFF", f"{len(verts)} {len(k.facets)} 0"]
    lines += [" ".join(f"{x:.6f}" for x in points[v]) for v in verts]
    lines += ["3 " + " ".join(str(index[v]) for v in f) for f in k.facets]
    return "\n".join(lines) + "\n"
