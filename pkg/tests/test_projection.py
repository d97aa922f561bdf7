import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pmresolve import library
from pmresolve.assembly import explore_component, build_quotient, orient_quotient
from pmresolve.complex_core import components, link_complex
from pmresolve.labeling import GoodLabeling
from pmresolve.projection import (
    corner_position,
    covering_check,
    degree,
    g_inverse,
    g_weights,
)
from pmresolve.states import Resolver, enumerate_flags

unit = st.floats(0.01, 0.99)


@settings(max_examples=200)
@given(st.lists(unit, min_size=1, max_size=5))
def test_weights_sum_and_round_trip(t):
    w = g_weights(t)
    assert np.all(w >= 0)
    assert abs(w.sum() - 1) < 1e-12
    assert np.max(np.abs(g_inverse(w) - np.asarray(t))) < 1e-9


def test_weights_at_corners():
    for corner in [(0, 0), (1, 0), (0, 1), (1, 1)]:
        w = g_weights(corner)
        k = corner_position(corner)
        assert w[k] == 1.0 and w.sum() == 1.0


def test_weights_explicit():
    t = [0.5, 0.25]
    # w0 = (1-t1)(1-t2), w1 = t1 (1-t2), w2 = t2
    assert np.allclose(g_weights(t), [0.375, 0.375, 0.25])


@pytest.mark.parametrize("m,r", [(2, 1), (3, 2), (4, 1), (5, 2), (6, 1), (7, 2), (8, 1)])
def test_polygon_degree(m, r):
    pm = library.polygon(m)
    comp = explore_component(Resolver(pm, GoodLabeling(pm, library.polygon_labels(m))))
    q = build_quotient(comp)
    deg = degree(pm, comp, orient_quotient(q))
    assert deg.degree == r and deg.consistent
    assert len(comp) == 2 * m * r
    cover = covering_check(pm, comp, q)
    assert cover.covering and not cover.branched


def test_degree_counts_every_flag(tetra_run):
    d = tetra_run.degree
    assert len(d.per_flag) == len(enumerate_flags(tetra_run.pm)) == 144
    assert set(d.unsigned.values()) == {d.degree}
    assert d.all_signs_agree


def test_riemann_hurwitz(tetra_run, pinched_run):
    """chi(M) = r chi(Z~) - sum over branch points of (local degree - 1),
    with Z~ the normalization of Z (a vertex whose link has k pieces is
    split into k points)."""
    for run in (tetra_run, pinched_run):
        cov = run.covering
        k = run.pm.complex
        chi_z = sum((-1) ** d * c for d, c in enumerate(k.f_vector()))
        chi_z += sum(components(link_complex(k, (v,))) - 1 for v in k.vertices)
        defect = sum((int(b) - 1) * c for b, c in cov.branch_points.items())
        assert run.q.euler_characteristic == run.degree.degree * chi_z - defect
