"""Complete subgroup lattices of small finite groups.

Enumeration is by cyclic extension: seed with all cyclic subgroups, then close
the set under join-with-a-cyclic-subgroup until fixpoint.  Subgroups are
canonically identified by their member bitmask; lattice ids are assigned in
(order, member-set) sort order, so reports are deterministic.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .permgroup import FiniteGroup, OrderCapExceeded, order_cap


@dataclass
class Subgroup:
    """Element-subset handle inside a parent group's lattice."""

    parent: FiniteGroup
    members: tuple[int, ...]
    mask: int
    id: int = -1
    gens: tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return len(self.members)

    def contains(self, other: "Subgroup") -> bool:
        return other.mask & ~self.mask == 0

    def gen_cycles(self) -> list[str]:
        """Cycle strings for a small generating set (for reports)."""
        gens = self.gens or tuple(self.members[1:2])
        return [self.parent.elements[g].cycle_string() for g in gens] or ["()"]

    def __repr__(self) -> str:
        return f"Subgroup(id={self.id}, order={self.order})"


class SubgroupLattice:
    """All subgroups of a group with Hasse covers and conjugacy data."""

    def __init__(self, group: FiniteGroup, mask_gens: dict[int, tuple[int, ...]]):
        self.group = group
        n = group.order
        items = []
        for mask, gens in mask_gens.items():
            members = tuple(group.mask_members(mask))
            items.append((len(members), members, mask, gens))
        items.sort(key=lambda t: (t[0], t[1]))
        self.subgroups: list[Subgroup] = [
            Subgroup(group, members, mask, id=i, gens=gens)
            for i, (_, members, mask, gens) in enumerate(items)
        ]
        self.by_mask: dict[int, int] = {s.mask: s.id for s in self.subgroups}
        self.bottom = self.subgroups[0]
        self.top = self.subgroups[-1]
        assert self.bottom.order == 1 and self.top.order == n
        self._build_covers()
        self._conj_cache: list[dict[int, int]] = [dict() for _ in self.subgroups]
        self._normalizers: list[int | None] = [None] * len(self.subgroups)
        self._join_memo: dict[tuple[int, int], int] = {}
        self._chain_lengths: dict[tuple[int, int], frozenset[int]] = {}
        self._subs_of: dict[int, list[int]] = {}
        self._conj_class: list[int] | None = None
        # caches owned by other modules (submodular / classes)
        self.step_kind_cache: dict[tuple[int, int], tuple] = {}
        self.ksub_reach: dict[tuple[int, int], frozenset[int]] = {}
        self.modular_cache: dict[tuple[int, int], bool] = {}
        self.residual_cache: dict[tuple[int, str], int] = {}
        self.subnormal_cache: dict[str, frozenset[int]] = {}

    def __len__(self) -> int:
        return len(self.subgroups)

    def _build_covers(self) -> None:
        subs = self.subgroups
        m = len(subs)
        self.hasse_down: list[list[int]] = [[] for _ in range(m)]  # maximal subgroups
        self.hasse_up: list[list[int]] = [[] for _ in range(m)]  # covers
        for a in range(m):
            sa = subs[a]
            sups = [b for b in range(a + 1, m)
                    if subs[b].order > sa.order
                    and subs[b].order % sa.order == 0
                    and sa.mask & ~subs[b].mask == 0]
            for b in sups:
                mb = subs[b].mask
                if any(c != b and subs[c].order < subs[b].order
                       and subs[c].mask & ~mb == 0 for c in sups):
                    continue
                self.hasse_up[a].append(b)
                self.hasse_down[b].append(a)

    # -- basic queries -------------------------------------------------------

    def leq(self, a: int, b: int) -> bool:
        return self.subgroups[a].mask & ~self.subgroups[b].mask == 0

    def meet(self, a: int, b: int) -> int:
        mask = self.subgroups[a].mask & self.subgroups[b].mask
        return self.by_mask[mask]

    def join(self, a: int, b: int) -> int:
        if a > b:
            a, b = b, a
        hit = self._join_memo.get((a, b))
        if hit is None:
            hit = self.least_containing(self.subgroups[a].mask | self.subgroups[b].mask)
            self._join_memo[(a, b)] = hit
        return hit

    def least_containing(self, mask: int) -> int:
        """Id of the smallest subgroup whose member set contains `mask`."""
        direct = self.by_mask.get(mask)
        if direct is not None:
            return direct
        for s in self.subgroups:
            if mask & ~s.mask == 0:
                return s.id
        raise AssertionError("lattice incomplete")  # top contains everything

    def generated(self, seed: Iterable[int]) -> int:
        """Least subgroup containing the given element ordinals."""
        mask = 0
        for i in seed:
            mask |= 1 << i
        return self.least_containing(mask)

    def subs_of(self, b: int) -> list[int]:
        hit = self._subs_of.get(b)
        if hit is None:
            mb = self.subgroups[b].mask
            hit = [a for a in range(b + 1) if self.subgroups[a].mask & ~mb == 0]
            self._subs_of[b] = hit
        return hit

    def conjugate(self, a: int, g: int) -> int:
        hit = self._conj_cache[a].get(g)
        if hit is None:
            hit = self.by_mask[self.group.conjugate_mask(self.subgroups[a].mask, g)]
            self._conj_cache[a][g] = hit
        return hit

    def conjugates(self, a: int) -> list[int]:
        """Distinct conjugates of subgroup a under the whole group."""
        seen = {a}
        frontier = [a]
        gens = [self.group.element_index[p] for p in self.group.generators]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.conjugate(x, g)
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        return sorted(seen)

    def conj_class(self) -> list[int]:
        """Per-subgroup conjugacy class id (id of the least member)."""
        if self._conj_class is None:
            cls = [-1] * len(self.subgroups)
            for a in range(len(self.subgroups)):
                if cls[a] < 0:
                    for b in self.conjugates(a):
                        cls[b] = a
            self._conj_class = cls
        return self._conj_class

    def normalizer(self, a: int) -> int:
        hit = self._normalizers[a]
        if hit is None:
            mask = self.subgroups[a].mask
            nm = 0
            for g in range(self.group.order):
                if self.group.conjugate_mask(mask, g) == mask:
                    nm |= 1 << g
            hit = self.by_mask[nm]
            self._normalizers[a] = hit
        return hit

    def is_normal_in(self, a: int, b: int) -> bool:
        """a normal in b (both lattice ids, a <= b assumed or checked cheaply)."""
        return self.leq(a, b) and self.leq(b, self.normalizer(a))

    def normal_mask(self, a: int) -> bool:
        return self.normalizer(a) == self.top.id

    def centralizer_of_set(self, ordinals: Iterable[int]) -> int:
        mult = self.group.mult
        mask = 0
        members = list(ordinals)
        for g in range(self.group.order):
            if all(mult[g][s] == mult[s][g] for s in members):
                mask |= 1 << g
        return self.by_mask[mask]

    def core(self, a: int, within: int | None = None) -> int:
        """Core of subgroup a inside `within` (default: the whole group)."""
        if within is None:
            within = self.top.id
        mask = self.subgroups[a].mask
        acc = mask
        for g in self.subgroups[within].members:
            acc &= self.group.conjugate_mask(mask, g)
            if acc == self.bottom.mask:
                break
        return self.by_mask[acc]

    def maximal_subgroups(self, b: int) -> list[int]:
        return list(self.hasse_down[b])

    def chain_lengths(self, a: int, b: int) -> frozenset[int]:
        """Achievable lengths of maximal chains a = C0 < ... < Cn = b."""
        if a == b:
            return frozenset({0})
        if not self.leq(a, b):
            return frozenset()
        key = (a, b)
        hit = self._chain_lengths.get(key)
        if hit is None:
            out: set[int] = set()
            for m in self.hasse_down[b]:
                if self.leq(a, m):
                    out.update(n + 1 for n in self.chain_lengths(a, m))
            hit = frozenset(out)
            self._chain_lengths[key] = hit
        return hit

    def n_maximal_chain_exists(self, a: int, b: int, n: int) -> bool:
        if not self.leq(a, b):
            raise ValueError("chain query requires a <= b")
        if n < 0:
            raise ValueError("n must be >= 0")
        return n in self.chain_lengths(a, b)

    def frattini(self) -> int:
        mask = self.top.mask
        for m in self.hasse_down[self.top.id]:
            mask &= self.subgroups[m].mask
        return self.by_mask[mask]

    def comparable_pairs(self) -> list[tuple[int, int]]:
        """All pairs (a, b) with a < b in the lattice order."""
        pairs = []
        for b in range(len(self.subgroups)):
            mb = self.subgroups[b].mask
            for a in range(b):
                if self.subgroups[a].mask & ~mb == 0:
                    pairs.append((a, b))
        return pairs

    # -- subgroup as standalone group ---------------------------------------

    def subgroup_as_group(self, a: int) -> FiniteGroup:
        """Subgroup a as a FiniteGroup, with its lattice pre-seeded.

        The subgroups of the interval [1, a] are exactly the subgroups of the
        standalone group, so its lattice is translated rather than
        re-enumerated.
        """
        sub = self.subgroups[a]
        if a == self.top.id:
            return self.group
        cache = getattr(self, "_as_group", None)
        if cache is None:
            cache = self._as_group = {}
        hit = cache.get(a)
        if hit is not None:
            return hit
        G = self.group
        members = sub.members
        local = {m: i for i, m in enumerate(members)}
        elements = [G.elements[m] for m in members]
        gens = [G.elements[g] for g in (sub.gens or members[1:2])]
        H = FiniteGroup(G.degree, elements, gens,
                        name=f"{G.name}.sub{a}", _trusted=True)
        mask_gens: dict[int, tuple[int, ...]] = {}
        for c in self.subs_of(a):
            sc = self.subgroups[c]
            mask = 0
            for m in sc.members:
                mask |= 1 << local[m]
            mask_gens[mask] = tuple(local[g] for g in sc.gens)
        H._lattice = SubgroupLattice(H, mask_gens)
        cache[a] = H
        return H


def all_subgroups(G: FiniteGroup) -> SubgroupLattice:
    """Enumerate every subgroup of G by cyclic extension."""
    if G.order > order_cap():
        raise OrderCapExceeded(f"|{G.name}| = {G.order} exceeds cap {order_cap()}")
    mult = G.mult
    e = G.identity_ordinal
    n = G.order

    cyclic: dict[int, int] = {}  # mask -> least generator ordinal
    for x in range(n):
        mask = 1 << e
        y = x
        while y != e:
            mask |= 1 << y
            y = mult[y][x]
        if mask not in cyclic:
            cyclic[mask] = x
    cyc_items = sorted(cyclic.items(), key=lambda kv: (bin(kv[0]).count("1"), kv[0]))

    mask_gens: dict[int, tuple[int, ...]] = {1 << e: ()}
    queue: deque[int] = deque()
    for mask, gen in cyc_items:
        if mask not in mask_gens:
            mask_gens[mask] = (gen,)
            queue.append(mask)
    full = G.full_mask()
    while queue:
        h = queue.popleft()
        hgens = mask_gens[h]
        for cmask, cgen in cyc_items:
            if cmask & ~h == 0 or h == full:
                continue
            j = G.closure_mask(hgens + (cgen,))
            if j not in mask_gens:
                mask_gens[j] = hgens + (cgen,)
                queue.append(j)
    if full not in mask_gens:  # trivial group
        mask_gens.setdefault(full, ())
    return SubgroupLattice(G, mask_gens)


# -- spec-level convenience wrappers ----------------------------------------


def generated_subgroup(L: SubgroupLattice, seed: Iterable[int]) -> Subgroup:
    return L.subgroups[L.generated(seed)]


def core(L: SubgroupLattice, H: Subgroup) -> Subgroup:
    return L.subgroups[L.core(H.id)]


def normalizer(L: SubgroupLattice, H: Subgroup) -> Subgroup:
    return L.subgroups[L.normalizer(H.id)]


def centralizer_of_set(L: SubgroupLattice, ordinals: Iterable[int]) -> Subgroup:
    return L.subgroups[L.centralizer_of_set(ordinals)]


def conjugates(L: SubgroupLattice, H: Subgroup) -> list[Subgroup]:
    return [L.subgroups[i] for i in L.conjugates(H.id)]


def intersect(L: SubgroupLattice, A: Subgroup, B: Subgroup) -> Subgroup:
    return L.subgroups[L.meet(A.id, B.id)]


def maximal_subgroups(L: SubgroupLattice, B: Subgroup) -> list[Subgroup]:
    return [L.subgroups[i] for i in L.maximal_subgroups(B.id)]


def n_maximal_chain_exists(L: SubgroupLattice, A: Subgroup, B: Subgroup, n: int) -> bool:
    return L.n_maximal_chain_exists(A.id, B.id, n)


def frattini(L: SubgroupLattice) -> Subgroup:
    return L.subgroups[L.frattini()]
