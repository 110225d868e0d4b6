import pytest

from grouplab import named_group
from grouplab import submodular
from grouplab.submodular import (is_k_LM_group, is_k_submodular,
                                 is_modular_subgroup, is_n_maximal_with_index,
                                 is_n_modularly_embedded, is_submodular,
                                 ksub_set, lattice_dot, schmidt_maximal_modular,
                                 step_kind, submodular_set,
                                 thm31_characterization, thm32_characterization)


def _by_order(L, order, **kw):
    return next(s for s in L.subgroups if s.order == order)


def test_modular_in_abelian_group():
    L = named_group("cyclic", [12]).lattice()
    assert all(is_modular_subgroup(L, s) for s in L.subgroups)


def test_normal_implies_modular(s4):
    L = s4.lattice()
    v4 = next(s for s in L.subgroups if s.order == 4
              and L.normalizer(s.id) == L.top.id)
    assert is_modular_subgroup(L, v4)


def test_point_stabilizer_not_modular_in_s4(s4):
    L = s4.lattice()
    assert not is_modular_subgroup(L, _by_order(L, 6))


def test_schmidt_oracle_agrees_on_maximals(s4, hol5):
    for G in (s4, hol5, named_group("dihedral", [6])):
        L = G.lattice()
        for m in L.hasse_down[L.top.id]:
            M = L.subgroups[m]
            assert (schmidt_maximal_modular(L, M)
                    == is_modular_subgroup(L, M))


def test_submodular_basics(s4):
    L = s4.lattice()
    assert is_submodular(L, L.subgroups[L.top.id])
    # subnormal subgroups are submodular: V4 < D8 < S4
    v4_normal = next(s for s in L.subgroups if s.order == 4
                     and L.normalizer(s.id) == L.top.id)
    assert is_submodular(L, v4_normal)
    assert not is_submodular(L, _by_order(L, 6))


def test_k1_chains_collapse_to_submodular(s4, hol5, hol7):
    for G in (s4, hol5, hol7, named_group("dicyclic", [3])):
        L = G.lattice()
        assert ksub_set(L, 1) == submodular_set(L)


def test_n_modular_embedding_hol5(hol5):
    L = hol5.lattice()
    y = next(s for s in L.subgroups if s.order == 4
             and L.subgroups[L.core(s.id)].order == 1)
    assert is_n_modularly_embedded(L, L.top, y, 2)
    assert not is_n_modularly_embedded(L, L.top, y, 1)
    with pytest.raises(Exception):
        is_n_modularly_embedded(L, L.top, y, 0)


def test_normal_is_n_modularly_embedded_for_all_n(hol5):
    L = hol5.lattice()
    five = _by_order(L, 5)
    for n in (1, 2, 3):
        assert is_n_modularly_embedded(L, L.top, five, n)


def test_step_kind_unique_n(hol5):
    L = hol5.lattice()
    y = next(s for s in L.subgroups if s.order == 4
             and L.subgroups[L.core(s.id)].order == 1)
    assert step_kind(L, y.id, L.top.id) == ("nmod", 2)
    assert step_kind(L, _by_order(L, 5).id, L.top.id) == ("normal",)


def test_k_submodular_witness_chain(hol5):
    L = hol5.lattice()
    y = next(s for s in L.subgroups if s.order == 4
             and L.subgroups[L.core(s.id)].order == 1)
    h = next(s for s in L.subgroups if s.order == 2 and L.leq(s.id, y.id))
    ok, wit = is_k_submodular(L, h, 2)
    assert ok
    assert [L.subgroups[i].order for i in wit.ids][0] == 2
    assert wit.ids[-1] == L.top.id
    # every step re-verifiable
    for e in wit.steps:
        kind = step_kind(L, e.lower, e.upper)
        assert kind is not None
        if e.kind == "n_modular":
            assert kind == ("nmod", e.n) and e.n <= 2
    payload = wit.to_json(L)
    assert payload["orders"][-1] == 20


def test_hol7_y_not_1_submodular(hol7):
    L = hol7.lattice()
    y = _by_order(L, 6)
    ok, wit = is_k_submodular(L, y, 1)
    assert not ok and wit is None


def test_subnormal_implies_k_submodular(s4):
    L = s4.lattice()
    reach = ksub_set(L, 1)
    # all subgroups of A4's normal series
    for s in L.subgroups:
        if L.normalizer(s.id) == L.top.id:
            assert s.id in reach


def test_n_maximal_with_index(hol5):
    L = hol5.lattice()
    b = next(s for s in L.subgroups if s.order == 4
             and L.subgroups[L.core(s.id)].order == 1)
    bottom = L.subgroups[L.bottom.id]
    assert is_n_maximal_with_index(L, bottom, b) == (2, 2)
    assert is_n_maximal_with_index(L, b, b) == (0, None)
    s3L = named_group("sym", [3]).lattice()
    z2 = next(s for s in s3L.subgroups if s.order == 2)
    assert is_n_maximal_with_index(s3L, z2, s3L.subgroups[s3L.top.id]) == (1, 3)


def test_k_lm_group(hol5):
    L = hol5.lattice()
    ok2, cex2 = is_k_LM_group(L, 2)
    ok1, cex1 = is_k_LM_group(L, 1)
    assert ok2 and cex2 is None
    assert not ok1 and cex1 is not None
    a, b = cex1
    # counterexample is re-verifiable
    d = L.meet(a, b)
    res = is_n_maximal_with_index(L, L.subgroups[d], L.subgroups[b])
    assert res is None or not 1 <= res[0] <= 1


def test_abelian_groups_are_1_lm():
    for spec in (("cyclic", [12]), ("elem_abelian", [2, 3]), ("elem_abelian", [3, 2])):
        L = named_group(*spec).lattice()
        assert is_k_LM_group(L, 1)[0]


def test_class_membership(hol5, hol7, s4):
    L5, L7, LS4 = hol5.lattice(), hol7.lattice(), s4.lattice()
    assert submodular.in_class(L5, "Y", 2)
    assert not submodular.in_class(L5, "Y", 1)
    for k in (1, 2, 3):
        assert not submodular.in_class(L7, "X", k)
        assert not submodular.in_class(LS4, "X", k)
    q8 = named_group("dicyclic", [2]).lattice()
    for c in submodular.CLASS_IDS:
        assert submodular.in_class(q8, c, 1)


def test_class_membership_a5():
    L = named_group("alt", [5]).lattice()
    for k in (1, 2, 3):
        for c in submodular.CLASS_IDS:
            assert not submodular.in_class(L, c, k)


def test_characterization_predicates_hol5(hol5):
    L = hol5.lattice()
    for k, expect in ((1, False), (2, True)):
        assert all(thm31_characterization(L, v, k) is expect for v in (1, 2, 3))
        assert all(thm32_characterization(L, v, k) is expect
                   for v in (1, 2, 3, 4))


def test_characterization_predicates_trivial_cases():
    Lz = named_group("cyclic", [9]).lattice()
    assert all(thm32_characterization(Lz, v, 1) for v in (1, 2, 3, 4))
    Le = named_group("elem_abelian", [3, 2]).lattice()
    assert all(thm31_characterization(Le, v, 1) for v in (1, 2, 3))


def test_monotone_in_k(hol5, s4):
    for G in (hol5, s4):
        L = G.lattice()
        assert ksub_set(L, 1) <= ksub_set(L, 2) <= ksub_set(L, 3)


def test_conjugation_invariance_of_ksub(s4, hol5):
    for G in (s4, hol5):
        L = G.lattice()
        reach = ksub_set(L, 2)
        for a in reach:
            assert set(L.conjugates(a)) <= reach


def test_degenerate_group():
    L = named_group("cyclic", [1]).lattice()
    assert submodular.in_class(L, "Y", 1)
    assert is_k_LM_group(L, 1)[0]
    assert is_submodular(L, L.subgroups[0])


def test_lattice_dot_output(hol5):
    dot = lattice_dot(hol5.lattice(), k=2)
    assert dot.startswith("digraph")
    assert "n-modular n=2" in dot
    assert "normal" in dot
    assert dot.count("->") > 10
