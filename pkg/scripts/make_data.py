"""Regenerate the example input files in data/."""
import json
import os
import sys

from pmresolve import io, library

OUT = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "data")


def save(name, cf):
    io.emit(cf, os.path.join(OUT, name))


def main():
    os.makedirs(OUT, exist_ok=True)
    for m in range(2, 9):
        pm = library.polygon(m)
        save(f"polygon_{m}.json", io.ComplexFile.from_pm(pm, labels=library.polygon_labels(m)))
    save("tetrahedron.json", io.ComplexFile.from_pm(library.simplex_boundary(2)))
    save("pinched_torus.json", io.ComplexFile.from_pm(library.pinched_torus()))
    save("torus7.json", io.ComplexFile.from_pm(library.torus7()))
    save("suspended_torus.json", io.ComplexFile.from_pm(library.suspension(library.torus7())))
    rp2 = library.rp2_6()
    save("rp2.json", io.ComplexFile(2, [list(f) for f in rp2.facets]))
    octa = library.octahedron()
    col = library.cross_polytope_coloring(2)
    save("octahedron.json", io.ComplexFile.from_pm(octa, coloring=[col[v] for v in range(6)]))
    cross3 = library.cross_polytope(3)
    col = library.cross_polytope_coloring(3)
    save("cross_polytope_3.json",
         io.ComplexFile.from_pm(cross3, coloring=[col[v] for v in range(8)]))
    # prescription: a triangle and its mirror (balanced as a pair)
    tri = library.polygon(3)
    spheres = [{"dimension": 1, "facets": [list(f) for f in tri.complex.facets],
                "orientation": list(tri.orientation)},
               {"dimension": 1, "facets": [list(f) for f in tri.complex.facets],
                "orientation": [-s for s in tri.orientation]}]
    io.emit({"spheres": spheres}, os.path.join(OUT, "prescription_triangles.json"))


if __name__ == "__main__":
    main()
