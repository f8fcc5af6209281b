import copy
import json

import pytest

from charinv.brauer import (
    BUNDLED, analyze_brauer, as_brauer, audit_brauer, build_Yp, derived_order_from_table,
    f_p_coefficient_route, f_p_from_brauer, f_p_snf_route, load_bundled, recover_centralizer,
)
from charinv.chartab import dixon_schneider, verify_table
from charinv.chartab.io import TableVerificationError, dumps_table, loads_table
from charinv.cyclo import Cyc
from charinv.exactla import determinant
from charinv.groups import construct_named, p_prime_part
from charinv.invariants import CorruptTableError, compute_e, compute_f_p


def ordinary(B):
    return dixon_schneider(construct_named(B.ordinary_ref))


def test_s3_p3_values():
    B = load_bundled("s3_p3")
    assert [[int(v.to_rational()) for v in r] for r in B.irr] == [[1, 1], [1, -1]]
    assert build_Yp(B) == [[2, 0], [0, 2]]
    assert f_p_from_brauer(B) == 1
    assert determinant(build_Yp(B)) == 4


def test_s3_p2_values():
    B = load_bundled("s3_p2")
    assert [[int(v.to_rational()) for v in r] for r in B.irr] == [[1, 1], [2, -1]]
    assert build_Yp(B) == [[2, 1], [1, 5]]
    assert f_p_coefficient_route(B) == f_p_snf_route(B) == 3
    assert [recover_centralizer(B, j) for j in range(2)] == [3, 3]


@pytest.mark.parametrize("stem", BUNDLED)
def test_bundled_tables_three_routes(stem):
    B = load_bundled(stem)
    assert verify_table(B)
    A = analyze_brauer(B, ordinary(B))
    assert A.routes_agree, (A.f_ordinary, A.f_coefficients, A.f_snf)
    assert A.det == A.det_expected
    assert A.recovered == A.stored
    assert A.largest_divisor == A.f_p * p_prime_part(B.order, B.prime)
    e, _ = compute_e(ordinary(B))
    assert p_prime_part(e, B.prime) % A.f_p == 0


@pytest.mark.parametrize("stem,f", [("a4_p2", 1), ("a4_p3", 2), ("s4_p2", 3), ("s4_p3", 4)])
def test_bundled_f_values(stem, f):
    assert f_p_from_brauer(load_bundled(stem)) == f


@pytest.mark.parametrize("stem", BUNDLED)
def test_brauer_audits_pass(stem):
    B = load_bundled(stem)
    T = ordinary(B)
    verdicts = audit_brauer(B, T, derived_order_from_table(T))
    assert [v.audit for v in verdicts] == ["a", "b", "c", "d"]
    assert all(v.verdict == "pass" for v in verdicts), verdicts


def test_audits_skip_without_ordinary_data():
    v = audit_brauer(load_bundled("s3_p2"))
    assert [x.verdict for x in v] == ["skipped", "pass", "skipped", "pass"]


@pytest.mark.parametrize("spec,p", [("sym:3", 5), ("alt:5", 7), ("quaternion:8", 3)])
def test_coprime_prime_reuses_ordinary_table(spec, p):
    T = dixon_schneider(construct_named(spec))
    B = as_brauer(T, p)
    e, _ = compute_e(T)
    assert f_p_from_brauer(B) == e == compute_f_p(T, p)
    A = analyze_brauer(B, T)
    assert A.recovered == [c.centralizer for c in T.classes]


def test_as_brauer_rejects_dividing_prime():
    with pytest.raises(ValueError):
        as_brauer(dixon_schneider(construct_named("sym:3")), 3)


def test_corrupted_brauer_file_rejected():
    B = load_bundled("s3_p2")
    obj = json.loads(dumps_table(B))
    obj["irr"][1][1] = 1
    with pytest.raises(TableVerificationError):
        loads_table(json.dumps(obj))


def test_non_p_regular_class_rejected():
    B = copy.deepcopy(load_bundled("s3_p3"))
    B.classes[1].element_order = 3
    assert "divisible by 3" in " ".join(verify_table(B).failures)


def test_inconsistent_routes_raise():
    B = copy.deepcopy(load_bundled("s3_p2"))
    B.irr[1][1] = Cyc(1)
    with pytest.raises(CorruptTableError):
        f_p_from_brauer(B)


def test_bundled_metadata():
    B = load_bundled("a4_p2")
    assert B.prime == 2 and B.ordinary_ref == "alt:4"
    with pytest.raises(KeyError):
        load_bundled("m11_p2")
