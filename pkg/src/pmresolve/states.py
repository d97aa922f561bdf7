"""Resolution states and the face-gluing involutions.

A state is one n-cube of the resolved manifold: a flag of the base complex,
a choice of colour-reversing pairing on every star L_F, and a parity
vector h.  The full state set is astronomically large and never built;
``Resolver`` generates states on demand and hash-conses the pairing
families, so equal families are the same object and a family update keyed
by (family, label set) is computed once.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .complex_core import Cell, FacePoset, PseudoManifold, flag_vertex_order, perm_sign
from .errors import DiamondViolation, NotBipartite, PairingBroken, UnbalancedColors
from .labeling import FaceIndex, GoodLabeling

Flag = Tuple[int, ...]  # poset ids (F_0, ..., F_n), dim F_i = n - i
Pairing = Tuple[int, ...]  # partner index for each star member


@dataclass(frozen=True)
class StarSet:
    center: int
    members: Tuple[int, ...]  # facet ids, sorted
    colors: Tuple[int, ...]  # 0 = black, 1 = white

    def position(self, g: int) -> int:
        return self.members.index(g)


class PairingFamily:
    """One pairing per proper face, stored as a flat array of partner slots.

    Slot ``offsets[f] + i`` stands for the i-th member of the star of face
    ``f``; ``partners[slot]`` is the slot of its partner in the same star.
    Instances are immutable and interned by their ``Resolver``.
    """

    __slots__ = ("partners", "offsets", "_hash")

    def __init__(self, partners: np.ndarray, offsets: np.ndarray):
        partners.flags.writeable = False
        self.partners = partners
        self.offsets = offsets
        self._hash = hash(partners.tobytes())

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other or (
            isinstance(other, PairingFamily)
            and self._hash == other._hash
            and np.array_equal(self.partners, other.partners)
        )

    def __getitem__(self, f: int) -> Pairing:
        lo, hi = self.offsets[f], self.offsets[f + 1]
        return tuple(int(x) for x in self.partners[lo:hi] - lo)

    def __len__(self):
        return len(self.offsets) - 1

    @property
    def entries(self) -> Tuple[Pairing, ...]:
        return tuple(self[f] for f in range(len(self)))

    def __repr__(self):
        return f"PairingFamily(<{len(self)} pairings, hash={self._hash:#x}>)"


class ResolutionState(NamedTuple):
    flag: Flag
    family: PairingFamily
    h: Tuple[int, ...]


def enumerate_flags(pm: PseudoManifold) -> List[Flag]:
    """All maximal chains, lexicographic; (n+1)! per facet."""
    P = pm.poset
    n = P.n
    flags = []
    for g in P.facet_ids:
        for order in permutations(P.cells[g]):
            flag = [g] + [P.index[tuple(sorted(order[:k]))] for k in range(n, 0, -1)]
            flags.append(tuple(flag))
    flags.sort()
    return flags


def flag_cells(pm: PseudoManifold, flag: Flag) -> List[Cell]:
    return [pm.poset.cells[i] for i in flag]


def flag_sign(pm: PseudoManifold, flag: Flag) -> int:
    """Orientation of the flag simplex (b(F_n), ..., b(F_0)) against Z."""
    P = pm.poset
    return pm.facet_sign(flag[0]) * perm_sign(flag_vertex_order(P, flag))


def flip_flag(pm: PseudoManifold, flag: Flag, j: int) -> Flag:
    """Swap F_j for the other face strictly between F_{j+1} and F_{j-1}.

    For j = n, F_{n+1} is the empty face and the vertex is swapped within
    the edge F_{n-1}.
    """
    P = pm.poset
    n = P.n
    if not 1 <= j <= n:
        raise ValueError(f"j must lie in 1..{n}")
    upper = P.cells[flag[j - 1]]
    lower = P.vsets[flag[j + 1]] if j < n else frozenset()
    candidates = []
    for k in range(len(upper)):
        sub = upper[:k] + upper[k + 1:]
        if lower <= set(sub):
            candidates.append(P.index[sub])
    others = [c for c in candidates if c != flag[j]]
    if len(candidates) != 2 or len(others) != 1:
        raise DiamondViolation(f"interval around position {j} of {flag} is not a diamond")
    return flag[:j] + (others[0],) + flag[j + 1:]


def star_set(pm: PseudoManifold, lab: GoodLabeling, f) -> StarSet:
    """Facets around ``f`` with a regular 2-colouring.

    Adjacency is through ridges containing ``f``.  Each component is colored
    by BFS from its smallest member; the seed of every component after the
    first takes the colour that agrees with the orientation-induced colouring
    of the first, so colours stay consistent when the star is disconnected.
    """
    P = pm.poset
    fid = f if isinstance(f, int) else P.id_of(tuple(f))
    members = tuple(sorted(P.facets_containing(fid)))
    pos = {g: i for i, g in enumerate(members)}
    adj: List[List[int]] = [[] for _ in members]
    by_ridge: Dict[int, List[int]] = {}
    for g in members:
        for r in P.ridges_containing(fid, g):
            by_ridge.setdefault(r, []).append(pos[g])
    for r, gs in by_ridge.items():
        for a in gs:
            for b in gs:
                if a != b:
                    adj[a].append(b)
    colors = [-1] * len(members)
    reference = None
    for start in range(len(members)):
        if colors[start] >= 0:
            continue
        oc = _orientation_color(pm, lab, fid, members[start])
        if reference is None:
            reference = oc
            colors[start] = 0
        else:
            colors[start] = 0 if oc == reference else 1
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for b in adj[a]:
                if colors[b] < 0:
                    colors[b] = 1 - colors[a]
                    queue.append(b)
                elif colors[b] == colors[a]:
                    raise NotBipartite(f"star of {P.cells[fid]} has an odd cycle")
    if 2 * sum(colors) != len(colors):
        raise UnbalancedColors(f"star of {P.cells[fid]} has {len(colors) - sum(colors)} "
                               f"black and {sum(colors)} white facets")
    return StarSet(fid, members, tuple(colors))


def _orientation_color(pm, lab, fid, g) -> int:
    """Facet sign times the parity of its vertices ordered by opposite-ridge
    label; a regular colouring of every star when labels come from a
    proper colouring.  Ties (possible only for n = 1) fall back to 0."""
    P = pm.poset
    gc = P.cells[g]
    keys = []
    for k in range(len(gc)):
        keys.append((lab.labels[gc[:k] + gc[k + 1:]], k))
    if len({key[0] for key in keys}) != len(keys):
        return 0
    order = [k for _, k in sorted(keys)]
    return pm.facet_sign(g) * perm_sign(order)


def canonical_pairing(star: StarSet) -> Pairing:
    """Pair the i-th black member with the i-th white member."""
    black = [i for i, c in enumerate(star.colors) if c == 0]
    white = [i for i, c in enumerate(star.colors) if c == 1]
    partner = [0] * len(star.members)
    for a, b in zip(black, white):
        partner[a] = b
        partner[b] = a
    return tuple(partner)


def check_pairing(star: StarSet, p: Sequence[int]) -> bool:
    return all(
        p[p[i]] == i and p[i] != i and star.colors[p[i]] != star.colors[i]
        for i in range(len(p))
    )


class Resolver:
    """Lazy generator of resolution states for a labeled pseudo-manifold.

    All caches live here: flag flips, face lookups by label set, interned
    families, and the family update for each (family, label set) pair.
    """

    def __init__(self, pm: PseudoManifold, lab: GoodLabeling):
        self.pm = pm
        self.lab = lab
        self.P: FacePoset = pm.poset
        self.n = pm.n
        self.faces = FaceIndex(lab)
        self.stars = [star_set(pm, lab, f) for f in range(self.P.num_proper)]
        self.label_sets = lab.label_sets
        sizes = [len(st.members) for st in self.stars]
        self.offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)
        self.slot_cell = np.repeat(np.arange(len(sizes)), sizes)
        self.slot_facet = np.concatenate([st.members for st in self.stars]).astype(np.int64)
        self.slot_color = np.concatenate([st.colors for st in self.stars]).astype(np.int8)
        self._stride = len(self.P.cells)
        # slots are sorted by (cell, facet), hence so are these keys
        self._keys = self.slot_cell * self._stride + self.slot_facet
        self._families: Dict[bytes, PairingFamily] = {}
        self._updates: Dict[Tuple[PairingFamily, FrozenSet[int]], PairingFamily] = {}
        self._flips: Dict[Tuple[Flag, int], Flag] = {}
        self._plans: Dict[FrozenSet[int], tuple] = {}
        self.family_updates = 0

    @property
    def num_slots(self) -> int:
        return len(self.slot_facet)

    def slot(self, f: int, g: int) -> int:
        k = int(np.searchsorted(self._keys, f * self._stride + g))
        if k >= len(self._keys) or self._keys[k] != f * self._stride + g:
            raise KeyError((f, g))
        return k

    def _family(self, partners: np.ndarray) -> PairingFamily:
        key = partners.tobytes()
        fam = self._families.get(key)
        if fam is None:
            fam = self._families[key] = PairingFamily(partners, self.offsets)
        return fam

    def family_from_pairings(self, pairings: Sequence[Pairing]) -> PairingFamily:
        partners = np.concatenate(
            [np.asarray(p, dtype=np.int64) + self.offsets[f] for f, p in enumerate(pairings)])
        return self._family(partners)

    @property
    def distinct_families(self) -> int:
        return len(self._families)

    # -- states ----------------------------------------------------------
    def initial_state(self, seed_flag: Optional[Flag] = None) -> ResolutionState:
        if seed_flag is None:
            seed_flag = min(enumerate_flags(self.pm))
        fam = self.family_from_pairings([canonical_pairing(s) for s in self.stars])
        return ResolutionState(tuple(seed_flag), fam, (0,) * self.n)

    def flip(self, flag: Flag, j: int) -> Flag:
        key = (flag, j)
        out = self._flips.get(key)
        if out is None:
            out = flip_flag(self.pm, flag, j)
            self._flips[key] = out
        return out

    def pair(self, fam: PairingFamily, f: int, g: int) -> int:
        """The facet Lambda_f(g) for a facet g containing the proper face f."""
        return int(self.slot_facet[fam.partners[self.slot(f, g)]])

    def phi(self, j: int, eps: int, s: ResolutionState) -> ResolutionState:
        if not 1 <= j <= self.n:
            raise ValueError(f"j must lie in 1..{self.n}")
        if eps == 0:
            return ResolutionState(self.flip(s.flag, j), s.family, s.h)
        flag, fam = s.flag, s.family
        fj = flag[j]
        new0 = self.pair(fam, fj, flag[0])
        lookup = self.faces.lookup
        new_flag = (new0,) + tuple(
            lookup(fj, new0, self.label_sets[flag[i]]) for i in range(1, j)
        ) + flag[j:]
        h = s.h[: j - 1] + (1 - s.h[j - 1],) + s.h[j:]
        return ResolutionState(new_flag, self.update_family(fam, self.label_sets[fj]), h)

    def _plan(self, labels: FrozenSet[int]):
        """Slots whose pairing may change for this label set, and for every
        such slot (F, G) the slot (H, G) of the face H between F and G
        with c(H) = labels."""
        plan = self._plans.get(labels)
        if plan is not None:
            return plan
        cells = [f for f in range(self.P.num_proper) if labels < self.label_sets[f]]
        # faces with c(F) == labels are left unchanged by the update
        if cells:
            active = np.concatenate([np.arange(self.offsets[f], self.offsets[f + 1])
                                     for f in cells])
        else:
            active = np.zeros(0, dtype=np.int64)
        through = np.full(self.num_slots, -1, dtype=np.int64)
        lookup = self.faces.lookup
        for a in active:
            f, g = int(self.slot_cell[a]), int(self.slot_facet[a])
            through[a] = self.slot(lookup(f, g, labels), g)
        plan = (active, through, self.slot_cell[active] * self._stride)
        self._plans[labels] = plan
        return plan

    def update_family(self, fam: PairingFamily, labels: FrozenSet[int]) -> PairingFamily:
        """Family after a jump across a face with label set ``labels``.

        At every face F with c(F) >= labels the pairing becomes
        G -> L_{H2}(L_F(L_{H1}(G))), where H1 (resp. H2) is the face between
        F and G (resp. L_F(L_{H1}(G))) labelled exactly ``labels``.
        """
        key = (fam, labels)
        hit = self._updates.get(key)
        if hit is not None:
            return hit
        self.family_updates += 1
        active, through, base = self._plan(labels)
        old = fam.partners
        if len(active):
            x = self.slot_facet[old[through[active]]]
            xs = self._slots(base + x)
            y = old[xs]
            z = self.slot_facet[old[through[y]]]
            new = self._slots(base + z)
            partners = old.copy()
            partners[active] = new
            if not (np.array_equal(partners[new], active)
                    and not np.any(new == active)
                    and np.all(self.slot_color[new] != self.slot_color[active])):
                raise PairingBroken("an updated pairing is not a colour-reversing "
                                    "fixed-point-free involution")
            out = self._family(partners)
        else:
            out = fam
        self._updates[key] = out
        return out

    def _slots(self, keys: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self._keys, keys)
        if np.any(idx >= len(self._keys)) or not np.array_equal(self._keys[idx], keys):
            raise PairingBroken("a paired facet left the star it belongs to")
        return idx

    def state_ok(self, s: ResolutionState) -> bool:
        P = self.P
        flag = s.flag
        if len(flag) != self.n + 1 or len(s.h) != self.n:
            return False
        for i in range(self.n + 1):
            if P.dims[flag[i]] != self.n - i:
                return False
            if i and not P.vsets[flag[i]] <= P.vsets[flag[i - 1]]:
                return False
        p = s.family.partners
        idx = np.arange(len(p))
        return bool(np.array_equal(p[p], idx) and np.all(p != idx)
                    and np.all(self.slot_color[p] != self.slot_color)
                    and np.array_equal(self.slot_cell[p], self.slot_cell))


def phi(pm: PseudoManifold, lab: GoodLabeling, j: int, eps: int, s: ResolutionState,
        resolver: Optional[Resolver] = None) -> ResolutionState:
    """Functional form of ``Resolver.phi``; pass a resolver to share caches."""
    r = resolver or Resolver(pm, lab)
    return r.phi(j, eps, s)


def initial_state(pm: PseudoManifold, lab: GoodLabeling, seed_flag: Optional[Flag] = None):
    return Resolver(pm, lab).initial_state(seed_flag)
