import pytest
from hypothesis import given, strategies as st

from grouplab import (GroupError, OrderCapExceeded, Permutation, direct_product,
                      generate, group_from_spec, named_group, quotient)
from grouplab.permgroup import factorize, is_prime, order_cap, prime_power


def test_parse_and_cycle_string_roundtrip():
    p = Permutation.parse("(1 2 3)(4 5)", 6)
    assert Permutation.parse(p.cycle_string(), 6) == p


def test_parse_rightmost_cycle_acts_first():
    # (1 2)(2 3) applied to 1: rightmost first leaves 1, then (1 2) sends 1->2
    p = Permutation.parse("(1 2)(2 3)", 3)
    assert p == Permutation.parse("(1 2 3)", 3)


def test_composition_left_factor_first():
    a = Permutation.parse("(1 2)", 3)
    b = Permutation.parse("(2 3)", 3)
    assert (a * b)[0] == b[a[0]]


def test_inverse():
    p = Permutation.parse("(1 2 3 4)", 5)
    assert p * p.inverse() == Permutation.identity(5)


@given(st.permutations(list(range(6))))
def test_inverse_random(images):
    p = Permutation(images)
    ident = Permutation.identity(6)
    assert p * p.inverse() == ident
    assert p.inverse() * p == ident


def test_generate_s3():
    G = generate(3, [Permutation.parse("(1 2)", 3),
                     Permutation.parse("(1 2 3)", 3)])
    assert G.order == 6


def test_generate_trivial():
    assert generate(1, []).order == 1


def test_order_cap_env(monkeypatch):
    monkeypatch.setenv("GROUPLAB_ORDER_CAP", "10")
    assert order_cap() == 10
    with pytest.raises(OrderCapExceeded):
        named_group("sym", [4])


NAMED_ORDERS = [
    (("cyclic", [12]), 12),
    (("elem_abelian", [2, 3]), 8),
    (("dihedral", [6]), 12),
    (("dicyclic", [2]), 8),
    (("sym", [4]), 24),
    (("alt", [5]), 60),
    (("holomorph_cyclic", [5]), 20),
    (("holomorph_cyclic", [7]), 42),
    (("holomorph_cyclic", [9]), 54),
    (("frobenius_metacyclic", [5, 2, 2]), 20),
    (("frobenius_metacyclic", [7, 3, 1]), 21),
]


@pytest.mark.parametrize("args,order", NAMED_ORDERS)
def test_named_group_orders(args, order):
    assert named_group(*args).order == order


def test_named_group_bad_args():
    with pytest.raises(GroupError):
        named_group("frobenius_metacyclic", [13, 3, 2])  # 9 does not divide 12
    with pytest.raises(GroupError):
        named_group("nosuch", [1])


def test_group_axioms_on_tables():
    G = named_group("dicyclic", [3])
    mult, inv = G.mult, G.inv
    e = G.identity_ordinal
    n = G.order
    for x in range(n):
        assert mult[x][e] == x and mult[e][x] == x
        assert mult[x][inv[x]] == e
    # associativity spot check on a fixed triple grid
    for x in range(0, n, 3):
        for y in range(0, n, 3):
            for z in range(0, n, 3):
                assert mult[mult[x][y]][z] == mult[x][mult[y][z]]


def test_element_orders_divide_group_order():
    G = named_group("frobenius_metacyclic", [13, 2, 2])
    assert all(G.order % o == 0 for o in G.element_orders)
    assert G.exponent() == 52 or G.order % G.exponent() == 0


def test_direct_product_order_and_commuting_factors():
    A = named_group("cyclic", [4])
    B = named_group("sym", [3])
    P = direct_product(A, B)
    assert P.order == 24
    assert P.exponent() == 12


def test_quotient_epimorphism_verified():
    G = named_group("sym", [4])
    gens = [G.element_index[Permutation.parse(c, 4)]
            for c in ("(1 2)(3 4)", "(1 3)(2 4)")]
    nmask = G.closure_mask(gens)
    Q, epi = quotient(G, nmask)
    assert Q.order == 6
    assert epi.kernel_mask() == nmask
    epi.verify()


def test_quotient_rejects_non_normal():
    G = named_group("sym", [3])
    mask = G.closure_mask([G.element_index[Permutation.parse("(1 2)", 3)]])
    with pytest.raises(GroupError):
        quotient(G, mask)


def test_group_from_spec_kinds():
    g1 = group_from_spec({"kind": "named", "name": "cyclic", "args": [6]})
    assert g1.order == 6
    g2 = group_from_spec({"kind": "generators", "degree": 3,
                          "cycles": ["(1 2)", "(1 2 3)"]})
    assert g2.order == 6
    g3 = group_from_spec({"kind": "direct", "parts": [
        {"kind": "named", "name": "cyclic", "args": [2]},
        {"kind": "named", "name": "cyclic", "args": [3]}]})
    assert g3.order == 6 and g3.is_cyclic()


def test_group_from_spec_errors():
    from grouplab import ParseError
    with pytest.raises(ParseError):
        group_from_spec({"no": "kind"})
    with pytest.raises(ParseError):
        group_from_spec({"kind": "wat"})


@given(st.integers(min_value=2, max_value=400))
def test_factorize_reconstructs(n):
    facs = factorize(n)
    prod = 1
    for p, m in facs.items():
        assert is_prime(p)
        prod *= p**m
    assert prod == n


def test_prime_power():
    assert prime_power(32) == (2, 5)
    assert prime_power(27) == (3, 3)
    assert prime_power(12) is None
    assert prime_power(1) is None
