from itertools import combinations

import pytest

from grouplab import named_group
from grouplab.lattice import (core, frattini, generated_subgroup, intersect,
                              maximal_subgroups, normalizer)


def naive_subgroup_masks(G):
    """Independent oracle: closures of all <=2-element subsets, then the join
    fixpoint (every subgroup of these small groups arises this way)."""
    masks = {G.closure_mask([G.identity_ordinal])}
    n = G.order
    for i in range(n):
        masks.add(G.closure_mask([i]))
    for i, j in combinations(range(n), 2):
        masks.add(G.closure_mask([i, j]))
    changed = True
    while changed:
        changed = False
        for a in list(masks):
            for b in list(masks):
                j = G.closure_mask(G.mask_members(a | b))
                if j not in masks:
                    masks.add(j)
                    changed = True
    return masks


@pytest.mark.parametrize("name,args,count", [
    ("cyclic", [12], 6),        # one subgroup per divisor
    ("sym", [3], 6),
    ("sym", [4], 30),
    ("elem_abelian", [2, 2], 5),
    ("dicyclic", [2], 6),       # quaternion group
    ("holomorph_cyclic", [5], 14),
])
def test_lattice_matches_naive_oracle(name, args, count):
    G = named_group(name, args)
    L = G.lattice()
    assert len(L) == count
    assert {s.mask for s in L.subgroups} == naive_subgroup_masks(G)


def test_lattice_ids_sorted_by_order():
    L = named_group("sym", [4]).lattice()
    orders = [s.order for s in L.subgroups]
    assert orders == sorted(orders)
    assert L.bottom.order == 1 and L.top.order == 24


def test_meet_join_are_lattice_ops():
    L = named_group("sym", [4]).lattice()
    for a in range(0, len(L), 3):
        for b in range(0, len(L), 3):
            m, j = L.meet(a, b), L.join(a, b)
            assert L.leq(m, a) and L.leq(m, b)
            assert L.leq(a, j) and L.leq(b, j)
            assert L.subgroups[j].order % L.subgroups[a].order == 0


def test_hasse_covers_have_no_intermediate():
    L = named_group("dihedral", [6]).lattice()
    for a in range(len(L)):
        for b in L.hasse_up[a]:
            assert L.leq(a, b) and a != b
            for c in range(len(L)):
                if c not in (a, b) and L.leq(a, c) and L.leq(c, b):
                    raise AssertionError("cover skips a subgroup")


def test_generated_subgroup():
    G = named_group("sym", [4])
    L = G.lattice()
    s = generated_subgroup(L, [1])
    assert s.order > 1 and s.mask == G.closure_mask([1])


def test_conjugates_and_core(hol5):
    L = hol5.lattice()
    four = [s for s in L.subgroups if s.order == 4]
    assert len(four) == 5
    cls = L.conjugates(four[0].id)
    assert len(cls) == 5
    assert core(L, four[0]).order == 1


def test_normalizer_and_normality(s4):
    L = s4.lattice()
    v4 = next(s for s in L.subgroups if s.order == 4
              and L.normalizer(s.id) == L.top.id)
    assert normalizer(L, v4).order == 24
    s3 = next(s for s in L.subgroups if s.order == 6)
    assert normalizer(L, s3).order == 6


def test_intersect_and_maximal(s4):
    L = s4.lattice()
    top = L.subgroups[L.top.id]
    maxes = maximal_subgroups(L, top)
    assert sorted({m.order for m in maxes}) == [6, 8, 12]
    a4 = next(m for m in maxes if m.order == 12)
    d8 = next(m for m in maxes if m.order == 8)
    assert intersect(L, a4, d8).order == 4


def test_chain_lengths(hol5):
    L = hol5.lattice()
    four = next(s for s in L.subgroups if s.order == 4)
    assert L.n_maximal_chain_exists(L.bottom.id, four.id, 2)
    assert not L.n_maximal_chain_exists(L.bottom.id, four.id, 1)
    assert L.n_maximal_chain_exists(L.top.id, L.top.id, 0)


def test_frattini():
    L = named_group("cyclic", [4]).lattice()
    assert frattini(L).order == 2
    L8 = named_group("dicyclic", [2]).lattice()
    assert frattini(L8).order == 2  # Phi(Q8) = center


def test_subgroup_as_group_matches(s4):
    L = s4.lattice()
    s3 = next(s for s in L.subgroups if s.order == 6)
    H = L.subgroup_as_group(s3.id)
    assert H.order == 6
    assert len(H.lattice()) == 6
    assert not H.is_abelian()


def test_comparable_pairs(s4):
    L = s4.lattice()
    pairs = L.comparable_pairs()
    assert all(a < b and L.leq(a, b) for a, b in pairs)
    # bottom is below every other subgroup, top above
    assert sum(1 for a, _ in pairs if a == 0) == len(L) - 1
