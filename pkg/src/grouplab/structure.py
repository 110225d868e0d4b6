"""Structural series and predicates: Sylow subgroups, solubility, nilpotency,
supersolubility, Ore dispersivity, Fitting subgroup, chief factors.

Most predicates come in two forms: a whole-group form taking a FiniteGroup
(which uses the group's own lattice) and an `_in` form evaluating a lattice
member as a group in its own right, which avoids rebuilding lattices for
subgroups.
"""
from __future__ import annotations

from dataclasses import dataclass

from .permgroup import FiniteGroup, GroupError, factorize, is_prime, prime_power
from .lattice import Subgroup, SubgroupLattice


class InternalInconsistency(GroupError):
    """Two supposedly equivalent criteria disagreed; indicates an engine bug."""


@dataclass
class ChiefFactor:
    """A pair (K, H) of normal subgroups with H/K minimal normal in G/K."""

    below: Subgroup
    above: Subgroup
    order: int
    complemented: bool
    complement: Subgroup | None
    centralizer: Subgroup


# -- Sylow -------------------------------------------------------------------


def sylow(G: FiniteGroup, p: int) -> Subgroup:
    """One Sylow p-subgroup: the least lattice id of full p-part order."""
    L = G.lattice()
    return L.subgroups[sylow_in(L, L.top.id, p)]


def sylow_in(L: SubgroupLattice, b: int, p: int) -> int:
    order = L.subgroups[b].order
    target = p ** factorize(order).get(p, 0)
    for a in L.subs_of(b):
        if L.subgroups[a].order == target:
            return a
    raise AssertionError("Sylow subgroup missing from lattice")


def all_sylow(G: FiniteGroup) -> list[Subgroup]:
    return [sylow(G, p) for p in G.prime_divisors()]


def sylow_count(G: FiniteGroup, p: int) -> int:
    L = G.lattice()
    return len(L.conjugates(sylow_in(L, L.top.id, p)))


# -- solubility and nilpotency ----------------------------------------------


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    L = G.lattice()
    return L.subgroups[L.by_mask[G.derived_mask()]]


def is_soluble(G: FiniteGroup) -> bool:
    """Derived series reaches the trivial subgroup."""
    mask = G.full_mask()
    while True:
        members = G.mask_members(mask)
        if len(members) == 1:
            return True
        nxt = _derived_of_mask(G, members)
        if nxt == mask:
            return False
        mask = nxt


def _derived_of_mask(G: FiniteGroup, members: list[int]) -> int:
    mult, inv = G.mult, G.inv
    comms = set()
    for x in members:
        row = mult[inv[x]]
        for y in members:
            comms.add(mult[row[inv[y]]][mult[x][y]])
    return G.closure_mask(comms)


def is_nilpotent(G: FiniteGroup) -> bool:
    """Every Sylow subgroup normal (the finite-group criterion)."""
    return all(G.mask_is_normal(G.sylow_mask(p)) for p in G.prime_divisors())


def is_nilpotent_in(L: SubgroupLattice, a: int) -> bool:
    """Nilpotency of lattice member a, via normal Sylows inside a."""
    order = L.subgroups[a].order
    for p, mult in factorize(order).items():
        target = p**mult
        if not any(L.subgroups[s].order == target and L.leq(a, L.normalizer(s))
                   for s in L.subs_of(a)):
            return False
    return True


def is_quotient_nilpotent(L: SubgroupLattice, c: int, b: int) -> bool:
    """Nilpotency of b/c for lattice ids c <= b with c normal in b.

    b/c is nilpotent iff each of its Sylows is normal, i.e. iff for every
    prime r | |b/c| some subgroup between c and b, normal in b, realizes the
    full r-part.
    """
    oc, ob = L.subgroups[c].order, L.subgroups[b].order
    q = ob // oc
    for r, m in factorize(q).items():
        target = oc * r**m
        if not any(L.subgroups[s].order == target
                   and L.leq(c, s) and L.leq(s, b)
                   and L.leq(b, L.normalizer(s))
                   for s in L.subs_of(b)):
            return False
    return True


# -- normal structure --------------------------------------------------------


def normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    L = G.lattice()
    return [L.subgroups[i] for i in normal_ids_in(L, L.top.id)]


def normal_ids_in(L: SubgroupLattice, b: int) -> list[int]:
    return [a for a in L.subs_of(b) if L.leq(b, L.normalizer(a))]


def fitting(G: FiniteGroup) -> Subgroup:
    """Largest normal nilpotent subgroup, as a join over the lattice."""
    L = G.lattice()
    acc = L.bottom.id
    for a in normal_ids_in(L, L.top.id):
        if is_nilpotent_in(L, a):
            acc = L.join(acc, a)
    if not is_nilpotent_in(L, acc):
        raise InternalInconsistency("join of normal nilpotent subgroups not nilpotent")
    return L.subgroups[acc]


def chief_factors(G: FiniteGroup) -> list[ChiefFactor]:
    L = G.lattice()
    return chief_factors_in(L, L.top.id)


def chief_factor_pairs_in(L: SubgroupLattice, b: int) -> list[tuple[int, int]]:
    """All pairs (k, h) of b-normal subgroups with h/k minimal normal in b/k."""
    normals = normal_ids_in(L, b)
    pairs = []
    for k in normals:
        for h in normals:
            if k == h or not L.leq(k, h):
                continue
            if any(w not in (k, h) and L.leq(k, w) and L.leq(w, h)
                   for w in normals):
                continue
            pairs.append((k, h))
    return pairs


def chief_factors_in(L: SubgroupLattice, b: int) -> list[ChiefFactor]:
    out = []
    mult, inv = L.group.mult, L.group.inv
    for k, h in chief_factor_pairs_in(L, b):
        sk, sh = L.subgroups[k], L.subgroups[h]
        complement = None
        for m in L.subs_of(b):
            if L.join(h, m) == b and L.meet(h, m) == k:
                complement = m
                break
        kmask = sk.mask
        cmask = 0
        for g in L.subgroups[b].members:
            gi = inv[g]
            if all(kmask >> mult[mult[gi][inv[x]]][mult[g][x]] & 1
                   for x in sh.members):
                cmask |= 1 << g
        out.append(ChiefFactor(
            below=sk, above=sh, order=sh.order // sk.order,
            complemented=complement is not None,
            complement=None if complement is None else L.subgroups[complement],
            centralizer=L.subgroups[L.by_mask[cmask]],
        ))
    return out


# -- supersolubility and dispersivity ---------------------------------------


def is_soluble_in(L: SubgroupLattice, b: int) -> bool:
    """Solubility of lattice member b: every chief factor of b has
    prime-power order (minimal normal subgroups of prime-power order are
    elementary abelian)."""
    return all(
        prime_power(L.subgroups[h].order // L.subgroups[k].order) is not None
        for k, h in chief_factor_pairs_in(L, b))


def is_supersoluble_in(L: SubgroupLattice, b: int) -> bool:
    primary = is_soluble_in(L, b) and all(
        is_prime(L.subgroups[h].order // L.subgroups[k].order)
        for k, h in chief_factor_pairs_in(L, b))
    # cross-check: all maximal subgroups of b have prime index (Huppert)
    ob = L.subgroups[b].order
    crosscheck = ob == 1 or all(
        is_prime(ob // L.subgroups[m].order) for m in L.hasse_down[b])
    if primary != crosscheck:
        raise InternalInconsistency(
            f"supersolubility criteria disagree on {L.group.name} member {b}")
    return primary


def is_supersoluble(G: FiniteGroup) -> bool:
    """Soluble with all chief factors of prime order; cross-checked against
    the prime-index-maximal-subgroups criterion."""
    L = G.lattice()
    return is_supersoluble_in(L, L.top.id)


def is_ore_dispersive(G: FiniteGroup) -> bool:
    """Sylow tower for the descending prime ordering."""
    L = G.lattice()
    facs = factorize(G.order)
    primes = sorted(facs, reverse=True)
    normal_orders = {L.subgroups[a].order for a in normal_ids_in(L, L.top.id)}
    need = 1
    for p in primes:
        need *= p ** facs[p]
        if need not in normal_orders:
            return False
    return True
