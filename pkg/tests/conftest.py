import pytest

from pmresolve import library
from pmresolve.complex_core import barycentric_subdivision
from pmresolve.labeling import ensure_good, labeling_from_coloring
from pmresolve.pipeline import resolve


def subdivided(pm):
    sub, dims, _ = barycentric_subdivision(pm)
    return sub, labeling_from_coloring(sub, dims)


@pytest.fixture(scope="session")
def tetra_run():
    pm, lab = subdivided(library.simplex_boundary(2))
    return resolve(pm, lab, "subdivided")


@pytest.fixture(scope="session")
def octa_run():
    pm = library.octahedron()
    pm, lab, prov = ensure_good(pm, coloring=library.cross_polytope_coloring(2))
    return resolve(pm, lab, prov)


@pytest.fixture(scope="session")
def pinched_run():
    pm, lab = subdivided(library.pinched_torus())
    return resolve(pm, lab, "subdivided")


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split("_")[2])):
        verdict = "PASS" if _ACCEPTANCE[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {name.split('_')[2]}: {verdict}  ({name})")
