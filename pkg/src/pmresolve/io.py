"""JSON file formats.

Complex file::

    {"dimension": 2,
     "facets": [[0, 1, 2], ...],
     "orientation": [1, -1, ...],           optional, one sign per facet
     "coloring": [0, 1, 2, ...],            optional, color of vertex i
     "labels": [{"ridge": [0, 1], "label": 2}, ...],   optional
     "coordinates": [[x, y, z], ...]}       optional, used for OFF export

Prescription file (census)::

    {"spheres": [{"dimension": 1, "facets": [...], "orientation": [...]}, ...]}

Facets and orientation signs are kept in the order given; the library
sorts them into canonical order when it builds a complex.
"""
from __future__ import annotations

import json
import os
import re
import tempfile
from dataclasses import dataclass
from typing import Dict, List, Optional

from .complex_core import PseudoManifold, SimplicialComplex, cell
from .errors import SchemaError

COMPLEX_SCHEMA = "pmresolve.complex/1"
REPORT_SCHEMA = "pmresolve.report/1"
CUBES_SCHEMA = "pmresolve.cubes/1"


@dataclass
class ComplexFile:
    dimension: int
    facets: List[List[int]]
    orientation: Optional[List[int]] = None
    coloring: Optional[List[int]] = None
    labels: Optional[Dict[tuple, int]] = None
    coordinates: Optional[List[List[float]]] = None

    def to_dict(self) -> dict:
        out = {"schema": COMPLEX_SCHEMA, "dimension": self.dimension,
               "facets": [list(f) for f in self.facets]}
        if self.orientation is not None:
            out["orientation"] = list(self.orientation)
        if self.coloring is not None:
            out["coloring"] = list(self.coloring)
        if self.labels is not None:
            out["labels"] = [{"ridge": list(r), "label": k} for r, k in sorted(self.labels.items())]
        if self.coordinates is not None:
            out["coordinates"] = [list(map(float, c)) for c in self.coordinates]
        return out

    def complex(self) -> SimplicialComplex:
        return SimplicialComplex.from_facets(self.facets, self.dimension)

    def pseudomanifold(self) -> PseudoManifold:
        """Validated, oriented pseudo-manifold; a supplied orientation is
        re-ordered alongside the facets and checked for coherence."""
        k = self.complex()
        signs = None
        if self.orientation is not None:
            order = sorted(range(len(self.facets)), key=lambda i: tuple(sorted(self.facets[i])))
            signs = [self.orientation[i] for i in order]
        return PseudoManifold.from_complex(k, signs)

    @classmethod
    def from_pm(cls, pm: PseudoManifold, **extra) -> "ComplexFile":
        return cls(pm.n, [list(f) for f in pm.complex.facets], list(pm.orientation), **extra)


def _line_of(text: str, key: str) -> Optional[int]:
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except UnicodeDecodeError as e:
        raise SchemaError(f"{path} is not UTF-8: {e}") from None
    try:
        return json.loads(text), text
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e.msg}", line=e.lineno) from None


def complex_from_dict(data, text: str = "") -> ComplexFile:
    def fail(msg, key):
        raise SchemaError(msg, field=key, line=_line_of(text, key))

    if not isinstance(data, dict):
        raise SchemaError("top level must be an object")
    n = data.get("dimension")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        fail("dimension must be an integer >= 1", "dimension")
    facets = data.get("facets")
    if not isinstance(facets, list) or not facets:
        fail("facets must be a non-empty list", "facets")
    for k, f in enumerate(facets):
        if not isinstance(f, list) or not all(isinstance(v, int) and not isinstance(v, bool)
                                              and v >= 0 for v in f):
            fail(f"facet #{k} must be a list of non-negative integers", "facets")
        if len(f) != n + 1:
            fail(f"facet #{k} has {len(f)} vertices, expected {n + 1}", "facets")
        if len(set(f)) != len(f):
            fail(f"facet #{k} repeats a vertex", "facets")
    orientation = data.get("orientation")
    if orientation is not None:
        if not isinstance(orientation, list) or len(orientation) != len(facets):
            fail(f"orientation must list one sign per facet ({len(facets)})", "orientation")
        if any(s not in (1, -1) for s in orientation):
            fail("orientation entries must be +1 or -1", "orientation")
    nverts = 1 + max(v for f in facets for v in f)
    coloring = data.get("coloring")
    if coloring is not None:
        if not isinstance(coloring, list) or len(coloring) < nverts:
            fail(f"coloring must give a color for each of the {nverts} vertices", "coloring")
        if not all(isinstance(c, int) for c in coloring):
            fail("colors must be integers", "coloring")
    labels = data.get("labels")
    if labels is not None:
        parsed = {}
        if not isinstance(labels, list):
            fail("labels must be a list of {ridge, label} objects", "labels")
        for k, item in enumerate(labels):
            if not isinstance(item, dict) or "ridge" not in item or "label" not in item:
                fail(f"labels entry #{k} needs 'ridge' and 'label'", "labels")
            r = item["ridge"]
            if not isinstance(r, list) or len(r) != n:
                fail(f"labels entry #{k}: ridge must have {n} vertices", "labels")
            if not isinstance(item["label"], int):
                fail(f"labels entry #{k}: label must be an integer", "labels")
            parsed[cell(r)] = item["label"]
        labels = parsed
    coords = data.get("coordinates")
    if coords is not None:
        if not isinstance(coords, list) or len(coords) < nverts or not all(
                isinstance(c, list) and len(c) == 3 for c in coords):
            fail("coordinates must give [x, y, z] for every vertex", "coordinates")
    return ComplexFile(n, [list(f) for f in facets], orientation, coloring, labels, coords)


def parse(path) -> ComplexFile:
    data, text = _load(path)
    return complex_from_dict(data, text)


def parse_prescription(path):
    from .census import OrientedSphere

    data, text = _load(path)
    spheres = data.get("spheres") if isinstance(data, dict) else None
    if not isinstance(spheres, list):
        raise SchemaError("prescription needs a 'spheres' list", field="spheres",
                          line=_line_of(text, "spheres"))
    out = []
    for k, item in enumerate(spheres):
        if not isinstance(item, dict) or not isinstance(item.get("facets"), list):
            raise SchemaError(f"sphere #{k} needs a facets list", field="spheres")
        facets = item["facets"]
        if not facets:
            raise SchemaError(f"sphere #{k} is empty", field="spheres")
        signs = item.get("orientation")
        k_complex = SimplicialComplex.from_facets(facets, item.get("dimension"))
        if signs is not None:
            if len(signs) != len(facets):
                raise SchemaError(f"sphere #{k}: orientation length mismatch", field="spheres")
            order = sorted(range(len(facets)), key=lambda i: tuple(sorted(facets[i])))
            signs = [signs[i] for i in order]
        out.append(OrientedSphere.from_facets(k_complex.facets, signs)
                   if signs is not None else OrientedSphere.from_facets(k_complex.facets))
    return out


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def emit(obj, path) -> None:
    """Write JSON atomically (temporary file + rename)."""
    if isinstance(obj, ComplexFile):
        obj = obj.to_dict()
    text = dumps(obj)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_text(text: str, path) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)
