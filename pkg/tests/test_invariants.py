import json
from fractions import Fraction

import pytest

from charinv.chartab import dixon_schneider
from charinv.chartab.symmetric import mn_symmetric_table
from charinv.cyclo import prime_factors
from charinv.groups import center_mask, construct_named, p_part, p_prime_part
from charinv.invariants import (
    analyze, audit_theorems, center_order, class_function_inner, compute_e,
    compute_e_via_snf, compute_f_p, conjecture_scan, constituents, family_closed_form,
    integer_gram, p_adic_digits, pi_tilde_inner, symmetric_digit_criterion, verify_3955_example,
)

import oracles

F = Fraction
_TABLES = {}


def table(spec):
    if spec not in _TABLES:
        _TABLES[spec] = dixon_schneider(construct_named(spec))
    return _TABLES[spec]


def test_s3_inner_products():
    assert pi_tilde_inner(table("sym:3")) == [F(7, 18), F(-1, 9), F(-1, 18)]


@pytest.mark.parametrize("spec", ["sym:3", "sym:4", "alt:4", "quaternion:8", "dihedral:10"])
def test_trivial_inner_product_matches_brute_force(spec):
    G = construct_named(spec)
    elems = oracles.closure([g.images for g in G.generators])
    want = oracles.reciprocal_sum(elems) / G.order**2
    assert pi_tilde_inner(table(spec))[0] == want


@pytest.mark.parametrize("spec", ["cyclic:5", "product:cyclic:2+cyclic:4"])
def test_abelian_inner_products(spec):
    T = table(spec)
    inner = pi_tilde_inner(T)
    assert inner[0] == F(1, T.order)
    assert all(v == 0 for v in inner[1:])
    assert compute_e(T) == (1, T.order)
    assert constituents(T) == [True] + [False] * (T.nclasses - 1)


@pytest.mark.parametrize("spec,e,ep", [
    ("sym:3", 3, 2), ("dihedral:12", 3, 4), ("quaternion:8", 4, 2), ("alt:5", 30, 2),
    ("cyclic:2", 1, 2),
])
def test_e_examples(spec, e, ep):
    T = table(spec)
    assert compute_e(T) == (e, ep)
    assert compute_e_via_snf(T) == (e, ep)


def test_s3_gram_and_snf_route():
    T = table("sym:3")
    assert integer_gram(T) == [[3, 1, 1], [1, 3, 1], [1, 1, 5]]
    assert compute_e_via_snf(T) == (3, 2)


def test_f_p_examples():
    T = table("sym:3")
    assert compute_f_p(T, 3) == 1
    assert compute_f_p(T, 2) == 3
    for spec in ["sym:3", "alt:4", "dihedral:10"]:
        e, _ = compute_e(table(spec))
        assert compute_f_p(table(spec), 7) == e


@pytest.mark.parametrize("spec", ["sym:4", "alt:5", "sl2:3", "gl2:3", "psl2:7"])
def test_f_p_is_p_prime_and_divides_e(spec):
    T = table(spec)
    e, _ = compute_e(T)
    for p in (2, 3, 5, 7):
        f = compute_f_p(T, p)
        assert f % p != 0
        assert p_prime_part(e, p) % f == 0


def test_q8_constituents():
    T = table("quaternion:8")
    assert constituents(T) == [True, True, True, True, False]


def test_class_function_inner_of_regular_character():
    T = table("sym:4")
    reg = [T.order] + [0] * (T.nclasses - 1)
    assert class_function_inner(T, reg) == T.degrees


def test_center_order_from_table():
    assert center_order(table("quaternion:8")) == 2
    assert center_order(table("sym:4")) == 1


# -- corpus properties ----------------------------------------------------------

CORPUS = [
    "cyclic:1", "cyclic:6", "sym:3", "sym:4", "alt:4", "alt:5", "dihedral:8", "dihedral:12",
    "quaternion:8", "quaternion:16", "sl2:3", "gl2:3", "psl2:7",
    "product:sym:3+cyclic:2", "product:quaternion:8+cyclic:3", "product:cyclic:3+cyclic:3",
]


@pytest.mark.parametrize("spec", CORPUS)
def test_basic_identities(spec):
    G = construct_named(spec)
    T = table(spec)
    e, ep = compute_e(T)
    assert e * ep == G.order
    assert compute_e_via_snf(T) == (e, ep)
    z = int(center_mask(G).sum())
    assert ep % z == 0
    assert (G.order // z) % e == 0
    if G.order % 2 == 0:
        assert ep % 2 == 0
    assert (e == 1) == G.is_abelian()


NILPOTENT = ["dihedral:8", "dihedral:16", "quaternion:8", "quaternion:16", "quaternion:32",
             "product:quaternion:8+cyclic:3", "product:dihedral:8+cyclic:9",
             "product:dihedral:8+quaternion:8", "product:cyclic:4+dihedral:16",
             "product:quaternion:16+cyclic:5"]


@pytest.mark.parametrize("spec", NILPOTENT)
def test_nilpotent_e_prime_is_centre_order(spec):
    G = construct_named(spec)
    assert G.order <= 128
    T = table(spec)
    _, ep = compute_e(T)
    assert ep == int(center_mask(G).sum())
    flags = constituents(T)
    central = [i for i, c in enumerate(T.classes) if c.size == 1]
    for i, row in enumerate(T.irr):
        if all(row[c] == row[0] for c in central):
            assert flags[i]


@pytest.mark.parametrize("a,b", [("sym:3", "cyclic:2"), ("sym:3", "sym:3"),
                                 ("alt:4", "cyclic:5"), ("quaternion:8", "dihedral:8")])
def test_e_multiplicative(a, b):
    eA, _ = compute_e(table(a))
    eB, _ = compute_e(table(b))
    e, _ = compute_e(table(f"product:{a}+{b}"))
    assert e == eA * eB


# -- closed forms -------------------------------------------------------------------


def test_digits_and_criterion():
    assert p_adic_digits(15, 3) == [0, 2, 1]
    assert symmetric_digit_criterion(4) == {2}
    assert symmetric_digit_criterion(15) == {2, 3, 5}
    assert symmetric_digit_criterion(9) == {2}
    with pytest.raises(ValueError):
        symmetric_digit_criterion(0)


@pytest.mark.parametrize("n", range(2, 9))
def test_symmetric_prime_support(n):
    _, ep = compute_e(mn_symmetric_table(n))
    assert set(prime_factors(ep)) == symmetric_digit_criterion(n)


def test_family_closed_forms():
    assert family_closed_form("gl2", 4) == 6
    assert family_closed_form("gl2", 5) == 4
    assert family_closed_form("sl2", 9) == 6
    assert family_closed_form("psl2", 7) == 2
    assert family_closed_form("dihedral", 10) == 4
    assert family_closed_form("dihedral", 3) == 2
    for bad in [("sl2", 6), ("dihedral", 1), ("sym", 4)]:
        with pytest.raises(ValueError):
            family_closed_form(*bad)


@pytest.mark.parametrize("q", [4, 5, 7])
def test_psl2_closed_form(q):
    assert compute_e(table(f"psl2:{q}"))[1] == family_closed_form("psl2", q)


# -- the order 3^9 5^5 group -----------------------------------------------------------------


def test_order_3955_example():
    v = verify_3955_example()
    assert v.ok, v.failures
    assert (v.centralizer_P, v.centralizer_Q) == (81, 25)
    assert v.sum_mod_3 == 2 and v.sum_mod_5 == 3
    assert v.e == 3**9 * 5**5 and v.e_prime == 1


# -- audits and reports -----------------------------------------------------------------


def _by_id(verdicts):
    return {v.audit: v for v in verdicts}


def test_sl2_3_audit_f():
    a = _by_id(audit_theorems(construct_named("sl2:3")))
    assert a["f"].verdict == "pass"
    assert a["f"].witness["|Z(G/O_p')|@2"] == 2 and a["f"].witness["e'@2"] == 6


def test_s3_audit_g():
    a = _by_id(audit_theorems(construct_named("sym:3")))
    assert a["g"].verdict == "pass"
    assert a["g"].witness["e'_p@2"] == 2 and a["g"].witness["|Z(P)|@2"] == 2
    assert a["e"].verdict == "n/a"


def test_c6_audit_h():
    a = _by_id(audit_theorems(construct_named("cyclic:6")))
    assert a["h"].verdict == "pass"
    assert a["a"].witness["e"] == 1


def test_product_audit_d():
    a = _by_id(audit_theorems(construct_named("product:sym:3+cyclic:4")))
    assert a["d"].verdict == "pass"
    assert a["d"].witness["e(G)"] == a["d"].witness["e(A)"] * a["d"].witness["e(B)"]


def test_budget_turns_audits_into_skips():
    G = construct_named("alt:5")
    T = table("alt:5")
    G.max_order = 30  # the audits enumerate subgroups of G
    verdicts = audit_theorems(G, T)
    assert all(v.verdict in ("skipped", "pass", "n/a") for v in verdicts)
    assert any(v.verdict == "skipped" for v in verdicts)


def test_mismatched_table_rejected():
    with pytest.raises(ValueError):
        audit_theorems(construct_named("sym:4"), table("alt:4"))


def test_report_json_is_exact_strings():
    R = analyze(construct_named("sym:3"))
    obj = json.loads(R.dumps())
    assert obj["e"] == "3" and obj["e_prime"] == "2" and obj["e_tilde"] == "1"
    assert obj["pi_tilde_inner"] == ["7/18", "-1/9", "-1/18"]
    assert obj["f"] == {"2": "3", "3": "1"}
    assert R.audits_ok


def test_report_flags_odd_e_prime():
    R = analyze(construct_named("cyclic:3"), audit=False)
    assert R.e_tilde is None
    assert "undefined" in R.text()
    assert R.audit == []


def test_conjecture_scan_reports_without_asserting():
    rows = conjecture_scan(max_sym=6, max_alt=6)
    assert rows
    assert all(isinstance(r, dict) for r in rows)


def test_p_parts_consistent():
    assert p_part(48, 2) * p_prime_part(48, 2) == 48
