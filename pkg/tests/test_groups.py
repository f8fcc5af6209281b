from collections import Counter

import numpy as np
import pytest

from charinv.groups import (
    BudgetExceeded, PermGroup, center_mask, centralizer_order, characteristic_subgroups,
    construct_named, coset_action, derived_mask, direct_product, family_order,
    o_p_prime_mask, p_decompose, p_part, p_prime_part, sylow_mask,
)
from charinv.metabelian import MetabelianGroup, brute_centralizer_order
from charinv.perm import Permutation, format_cycles, parse_cycles, read_permutation_file

import oracles

SMALL = ["sym:3", "sym:4", "alt:4", "alt:5", "dihedral:8", "dihedral:12", "quaternion:8",
         "quaternion:16", "cyclic:6", "sl2:3", "gl2:2", "psl2:7", "product:sym:3+cyclic:2"]


def tuples(G):
    return [g.images for g in G.generators]


@pytest.mark.parametrize("spec", SMALL + ["sym:6", "gl2:3", "gl2:4", "sl2:5", "psl2:9"])
def test_order_matches_family_formula(spec):
    G = construct_named(spec)
    if spec.startswith("product:"):
        assert G.order == 12
    else:
        assert G.order == family_order(spec)


@pytest.mark.parametrize("spec", SMALL)
def test_classes_match_brute_force(spec):
    G = construct_named(spec)
    elems = oracles.closure(tuples(G))
    assert len(elems) == G.order
    want = Counter((len(c), oracles.element_order(min(c))) for c in oracles.classes(elems))
    got = Counter((c.size, c.element_order) for c in G.classes())
    assert got == want
    for c in G.classes():
        rep = c.representative.images
        assert c.centralizer_order == oracles.centralizer_order(elems, rep)
        assert c.size * c.centralizer_order == G.order


@pytest.mark.parametrize("spec", ["sym:4", "alt:5", "quaternion:8"])
def test_power_maps_land_in_right_class(spec):
    G = construct_named(spec)
    for c in G.classes():
        for q, target in c.power_map.items():
            assert G.class_index(c.representative ** q) == target


def test_identity_class_first_and_orders_sorted():
    G = construct_named("sym:5")
    cls = G.classes()
    assert cls[0].size == 1 and cls[0].element_order == 1
    assert [c.element_order for c in cls[1:]] == sorted(c.element_order for c in cls[1:])


def test_membership_and_centralizer():
    G = construct_named("alt:4")
    assert G.contains(Permutation.from_cycles([[0, 1, 2]], 4))
    t = Permutation.from_cycles([[0, 1]], 4)
    assert not G.contains(t)
    with pytest.raises(ValueError):
        centralizer_order(G, t)
    assert centralizer_order(G, Permutation.identity(4)) == 12


def test_characteristic_subgroups_of_s4():
    G = construct_named("sym:4")
    assert characteristic_subgroups(G, "center").order == 1
    assert characteristic_subgroups(G, "derived").order == 12
    assert characteristic_subgroups(G, "o_p_prime", 3).order == 4
    assert characteristic_subgroups(G, "o_p_prime", 2).order == 1
    assert characteristic_subgroups(G, "sylow", 2).order == 8
    assert characteristic_subgroups(G, "sylow_normalizer", 3).order == 6
    with pytest.raises(ValueError):
        characteristic_subgroups(G, "sylow", 4)


def test_quaternion_center_and_derived():
    G = construct_named("quaternion:8")
    assert center_mask(G).sum() == 2
    assert derived_mask(G).sum() == 2
    assert o_p_prime_mask(G, 2).sum() == 1


@pytest.mark.parametrize("spec,p", [("alt:5", 2), ("alt:5", 5), ("sl2:3", 3), ("gl2:3", 2)])
def test_sylow_order_and_p_group(spec, p):
    G = construct_named(spec)
    S = sylow_mask(G, p)
    assert S.sum() == p_part(G.order, p)
    orders = G.element_orders()[S]
    assert all(p_part(int(o), p) == o for o in orders)


def test_quotient_by_klein_is_s3():
    G = construct_named("sym:4")
    V = characteristic_subgroups(G, "o_p_prime", 3)
    Q = coset_action(G, V)
    assert Q.order == 6
    assert not Q.is_abelian()


def test_quotient_rejects_non_normal():
    G = construct_named("sym:3")
    S = characteristic_subgroups(G, "sylow", 2)
    with pytest.raises(ValueError):
        coset_action(G, S)


def test_direct_product_records_factors():
    G = direct_product(construct_named("sym:3"), construct_named("cyclic:4"))
    assert G.order == 24
    assert [f.name for f in G.factors] == ["sym:3", "cyclic:4"]
    assert len(G.classes()) == 12


def test_p_decompose_commuting_parts():
    g = Permutation.from_cycles([[0, 1, 2, 3, 4, 5]], 6)
    gp, gq = p_decompose(g, 6, 2)
    assert gp.order() == 2 and gq.order() == 3
    assert gp * gq == g == gq * gp


def test_p_parts():
    assert p_part(360, 2) == 8 and p_prime_part(360, 2) == 45
    assert p_part(7, 3) == 1


def test_budget_guard():
    G = construct_named("sym:9")
    G.max_order = 1000
    assert G.order == 362880  # the chain is not budgeted
    with pytest.raises(BudgetExceeded):
        G.classes()
    H = construct_named("sym:6")
    H.max_classes = 5
    with pytest.raises(BudgetExceeded):
        H.classes()


@pytest.mark.parametrize("spec", ["foo:3", "sym:x", "gl2:6", "product:sym:3", "sym:0"])
def test_bad_descriptors(spec):
    with pytest.raises(ValueError):
        construct_named(spec)


def test_degree_mismatch():
    with pytest.raises(ValueError):
        PermGroup([Permutation((1, 0)), Permutation((1, 2, 0))])


def test_cycle_notation_round_trip():
    p = parse_cycles("(1,3,2)(4,5)")
    assert p.images == (2, 0, 1, 4, 3)
    assert format_cycles(p) == "(1,3,2)(4,5)"
    assert format_cycles(Permutation.identity(3)) == "()"


def test_right_action_composition():
    a = parse_cycles("(1,2)", 3)
    b = parse_cycles("(2,3)", 3)
    # apply a then b: 1 -> 2 -> 3
    assert (a * b)(0) == 2


def test_permutation_file(tmp_path):
    p = tmp_path / "g.perm"
    p.write_text("# two generators\n(1,2,3)\n(1,2)\n", encoding="utf-8")
    gens = read_permutation_file(p)
    assert PermGroup(gens).order == 6
    G = construct_named(f"perm:{p}")
    assert G.order == 6


def test_m11_from_file(m11_path):
    G = construct_named(f"perm:{m11_path}")
    assert G.order == 7920
    assert len(G.classes()) == 10


def test_metabelian_order_and_action():
    M = MetabelianGroup()
    assert M.order == 3**9 * 5**5
    assert M.action_orders()[0] == 15


@pytest.mark.parametrize("which", ["c", "a0c5", "b1"])
def test_metabelian_centralizer_matches_enumeration(which):
    M = MetabelianGroup()
    g = {"c": M.c(), "a0c5": M.mul(M.a(0), M.c(5)), "b1": M.b(1)}[which]
    assert M.centralizer_order(g) == brute_centralizer_order(M, g)


def test_metabelian_group_law():
    M = MetabelianGroup()
    x = M.mul(M.a(1, 2), M.c(4))
    y = M.mul(M.b(0, 3), M.c(7))
    z = M.c(2)
    assert M.mul(M.mul(x, y), z) == M.mul(x, M.mul(y, z))
    assert M.mul(x, M.inv(x)) == M.identity()


def test_index_of_is_inverse_of_enumeration():
    G = construct_named("sym:4")
    idx = G.index_of(G.elements)
    assert (idx == np.arange(24)).all()
