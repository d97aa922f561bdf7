import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pmresolve import library
from pmresolve.assembly import explore_component
from pmresolve.complex_core import barycentric_subdivision
from pmresolve.labeling import labeling_from_coloring
from pmresolve.states import (
    Resolver,
    canonical_pairing,
    check_pairing,
    enumerate_flags,
    flag_sign,
    flip_flag,
    star_set,
)

import oracles


def polygon_resolver(m):
    pm = library.polygon(m)
    from pmresolve.labeling import GoodLabeling
    return Resolver(pm, GoodLabeling(pm, library.polygon_labels(m)))


@pytest.mark.parametrize("m", range(2, 9))
def test_polygon_orbit_matches_direct_simulation(m):
    R = polygon_resolver(m)
    comp = explore_component(R)
    P = R.P
    got = {(P.facet_ids.index(s.flag[0]), P.cells[s.flag[1]][0], s.h[0]) for s in comp.states}
    assert got == oracles.polygon_orbit(m)


def test_polygon_frozen_sizes():
    assert len(explore_component(polygon_resolver(2))) == 4
    assert len(explore_component(polygon_resolver(3))) == 12


def small_cases():
    out = []
    for pm in (library.simplex_boundary(2), library.pinched_torus(), library.simplex_boundary(3)):
        sub, dims, _ = barycentric_subdivision(pm)
        out.append(Resolver(sub, labeling_from_coloring(sub, dims)))
    octa = library.octahedron()
    out.append(Resolver(octa, labeling_from_coloring(octa, library.cross_polytope_coloring(2))))
    return out


CASES = small_cases()


def sample_states(R, count, seed=0):
    """Random walk under the Phi maps from the initial state."""
    rng = random.Random(seed)
    s = R.initial_state()
    out = [s]
    for _ in range(count - 1):
        s = R.phi(rng.randrange(1, R.n + 1), rng.randrange(2), s)
        out.append(s)
    return out


@pytest.mark.parametrize("R", CASES, ids=["tetra", "pinched", "s3", "octa"])
def test_flip_flag_is_an_involution_on_a_diamond(R):
    pm = R.pm
    for flag in enumerate_flags(pm)[:200]:
        for j in range(1, R.n + 1):
            g = flip_flag(pm, flag, j)
            assert g != flag
            assert g[:j] + g[j + 1:] == flag[:j] + flag[j + 1:]
            assert flip_flag(pm, g, j) == flag
            assert flag_sign(pm, g) == -flag_sign(pm, flag)


@pytest.mark.parametrize("R", CASES, ids=["tetra", "pinched", "s3", "octa"])
def test_stars_are_balanced_and_pairings_valid(R):
    for st_ in R.stars:
        assert 2 * sum(st_.colors) == len(st_.members)
        assert check_pairing(st_, canonical_pairing(st_))
    assert R.state_ok(R.initial_state())


@pytest.mark.parametrize("R", CASES, ids=["tetra", "pinched", "s3", "octa"])
def test_phi_relations_on_random_walk(R):
    n = R.n
    for s in sample_states(R, 300):
        for j in range(1, n + 1):
            for e in (0, 1):
                t = R.phi(j, e, s)
                assert t != s
                assert R.phi(j, e, t) == s
                assert R.state_ok(t)
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if j != k:
                    assert R.phi(j, 0, R.phi(k, 1, s)) == R.phi(k, 1, R.phi(j, 0, s))
                assert R.phi(j, 1, R.phi(k, 1, s)) == R.phi(k, 1, R.phi(j, 1, s))


_SETS = {}


def brute_sets(lab):
    key = id(lab)
    if key not in _SETS:
        _SETS[key] = (lab, oracles.label_sets_bruteforce(lab.pm.complex.facets, lab.labels))
    return _SETS[key][1]


def literal_labelled_face(lab, f_cell, g_cell, s):
    """Face H with f <= H <= g and c(H) = s, by brute force over subsets."""
    from itertools import combinations
    sets = brute_sets(lab)
    rest = [v for v in g_cell if v not in f_cell]
    hits = []
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            h = tuple(sorted(f_cell + extra))
            if len(h) < len(g_cell) and sets[h] == frozenset(s):
                hits.append(h)
            elif len(h) == len(g_cell) and not s:
                hits.append(h)
    assert len(hits) == 1
    return hits[0]


def literal_update(R, fam, labels):
    """Per-face conjugation of the pairings, written out with dicts."""
    P = R.P
    lab = R.lab
    cells = P.cells
    pair = {}
    for f, star in enumerate(R.stars):
        p = fam[f]
        pair[f] = {star.members[i]: star.members[p[i]] for i in range(len(p))}
    sets = brute_sets(lab)
    new = {}
    for f, star in enumerate(R.stars):
        if not labels < sets[cells[f]]:
            new[f] = pair[f]
            continue

        def tau(g):
            h = P.id_of(literal_labelled_face(lab, cells[f], cells[g], labels))
            return pair[h][g]

        new[f] = {g: tau(pair[f][tau(g)]) for g in star.members}
    return new


@pytest.mark.parametrize("R", CASES[:2] + CASES[3:], ids=["tetra", "pinched", "octa"])
def test_vectorized_update_matches_literal_formula(R):
    rng = random.Random(1)
    states = sample_states(R, 40, seed=3)
    labels_pool = sorted({R.label_sets[f] for f in range(R.P.num_proper)}, key=sorted)
    for s in rng.sample(states, 8):
        for labels in labels_pool:
            fast = R.update_family(s.family, labels)
            slow = literal_update(R, s.family, labels)
            for f, star in enumerate(R.stars):
                p = fast[f]
                assert {star.members[i]: star.members[p[i]] for i in range(len(p))} == slow[f]


@pytest.mark.parametrize("R", CASES[:2], ids=["tetra", "pinched"])
def test_phi1_flag_matches_literal_rule(R):
    P = R.P
    for s in sample_states(R, 100, seed=5):
        for j in range(1, R.n + 1):
            t = R.phi(j, 1, s)
            fj = s.flag[j]
            new0 = R.pair(s.family, fj, s.flag[0])
            assert t.flag[0] == new0
            for i in range(1, j):
                want = literal_labelled_face(R.lab, P.cells[fj], P.cells[new0],
                                             R.label_sets[s.flag[i]])
                assert P.cells[t.flag[i]] == want
            assert t.flag[j:] == s.flag[j:]
            assert t.h[j - 1] == 1 - s.h[j - 1]


def test_disconnected_star_coloring_matches_orientation():
    """The singular vertex of the pinched torus has a two-piece star; both
    pieces must be coloured consistently with the orientation."""
    sub, dims, origin = barycentric_subdivision(library.pinched_torus())
    lab = labeling_from_coloring(sub, dims)
    v = origin.index((0,))
    star = star_set(sub, lab, (v,))
    R = Resolver(sub, lab)
    assert star.members == R.stars[sub.poset.id_of((v,))].members
    assert 2 * sum(star.colors) == len(star.members)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_family_interning(seed):
    R = CASES[0]
    s = sample_states(R, 20, seed=seed)[-1]
    copy = R.family_from_pairings(s.family.entries)
    assert copy is s.family
    assert hash(copy) == hash(s.family)
