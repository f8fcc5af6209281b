"""Brauer-table analyses: Y_p, f_p by three routes, centralizer recovery."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .chartab.table import BrauerTable, CharTable
from .cyclo import Cyc, prime_factors
from .exactla import determinant, elementary_divisor_largest, nullspace_left, solve_left
from .groups import p_part, p_prime_part
from .invariants import (
    AuditVerdict, CorruptTableError, compute_e, compute_f_p, integer_gram,
)


def as_brauer(T: CharTable, p: int) -> BrauerTable:
    """Reuse an ordinary table as the p-modular one when p does not divide |G|."""
    if T.order % p == 0:
        raise ValueError(f"{p} divides |G| = {T.order}; an ingested Brauer table is required")
    return BrauerTable(T.name, T.order, T.classes, T.irr, p, ordinary_ref=T.name)


def build_Yp(B: BrauerTable) -> list[list[int]]:
    return integer_gram(B)


def f_p_coefficients(B: BrauerTable) -> list[Fraction]:
    """Coefficients ``c`` with ``pt^0 = sum c_i phi_i`` (exact, asserted rational)."""
    target = [Fraction(1, c.centralizer) for c in B.classes]
    coeffs = solve_left(B.irr, target)
    out = []
    for i, c in enumerate(coeffs):
        if not c.is_rational():
            raise CorruptTableError(f"coefficient of phi_{i + 1} is not rational: {c}")
        out.append(Fraction(c.to_rational()))
    return out


def f_p_coefficient_route(B: BrauerTable) -> int:
    return lcm(*((B.order * c).denominator for c in f_p_coefficients(B)))


def f_p_snf_route(B: BrauerTable) -> int:
    top = elementary_divisor_largest(build_Yp(B))
    pp = p_prime_part(B.order, B.prime)
    if top % pp:
        raise CorruptTableError(f"largest elementary divisor {top} is not a multiple of |G|_p' = {pp}")
    return top // pp


def f_p_from_brauer(B: BrauerTable) -> int:
    """f_p from the Brauer table; the coefficient and SNF routes must agree."""
    a = f_p_coefficient_route(B)
    b = f_p_snf_route(B)
    if a != b:
        raise CorruptTableError(f"coefficient route gives {a}, SNF route gives {b}")
    return a


def _null_vector(B: BrauerTable, j: int) -> list[Cyc]:
    l = len(B.classes)
    reduced = [[row[c] for c in range(l) if c != j] for row in B.irr]
    basis = nullspace_left(reduced) if l > 1 else [[Cyc(1)]]
    if len(basis) != 1:
        raise CorruptTableError(f"null space for column {j + 1} has dimension {len(basis)}")
    return basis[0]


def recover_centralizer(B: BrauerTable, j: int) -> int:
    """``|C_G(x_j)|_p'`` read off the table alone."""
    w = _null_vector(B, j)
    s = sum((wi * row[j] for wi, row in zip(w, B.irr)), Cyc(0))
    if s.is_zero():
        raise CorruptTableError(f"null vector vanishes on column {j + 1}")
    sinv = s.inverse()
    v = [wi * sinv for wi in w]
    L = lcm(*(x.conductor for x in v))
    coords = [c for x in v for c in x.coordinates(L)]
    coords = [Fraction(c) for c in coords]
    den = lcm(*(c.denominator for c in coords))
    num = reduce(gcd, (int(c * den) for c in coords))
    return den // num


@dataclass
class BrauerAnalysis:
    prime: int
    f_ordinary: int | None
    f_coefficients: int
    f_snf: int
    Yp: list[list[int]]
    largest_divisor: int
    det: int
    det_expected: int
    recovered: list[int]
    stored: list[int]

    @property
    def routes_agree(self) -> bool:
        fs = {self.f_coefficients, self.f_snf}
        if self.f_ordinary is not None:
            fs.add(self.f_ordinary)
        return len(fs) == 1

    @property
    def f_p(self) -> int:
        return self.f_coefficients


def analyze_brauer(B: BrauerTable, T: CharTable | None = None) -> BrauerAnalysis:
    Y = build_Yp(B)
    p = B.prime
    expected = 1
    for c in B.classes:
        expected *= p_prime_part(c.centralizer, p)
    return BrauerAnalysis(
        prime=p,
        f_ordinary=compute_f_p(T, p) if T is not None else None,
        f_coefficients=f_p_coefficient_route(B),
        f_snf=f_p_snf_route(B),
        Yp=Y,
        largest_divisor=elementary_divisor_largest(Y),
        det=determinant(Y),
        det_expected=expected,
        recovered=[recover_centralizer(B, j) for j in range(len(B.classes))],
        stored=[p_prime_part(c.centralizer, p) for c in B.classes],
    )


def audit_brauer(B: BrauerTable, T: CharTable | None = None,
                 derived_order: int | None = None) -> list[AuditVerdict]:
    """Brauer-side audits (a)-(d); (a) and (c) need the ordinary table or |G'|."""
    A = analyze_brauer(B, T)
    p = B.prime
    out = []
    if T is None:
        out.append(AuditVerdict("a", "skipped", {}, "no ordinary table"))
    else:
        e, _ = compute_e(T)
        ep = p_prime_part(e, p)
        ok = ep % A.f_p == 0 and A.routes_agree
        out.append(AuditVerdict("a", "pass" if ok else "fail",
                                {"f_p": A.f_p, "e_p'": ep, "f_p (ordinary)": A.f_ordinary}))
    out.append(AuditVerdict("b", "pass" if A.det == A.det_expected else "fail",
                            {"det(Y_p)": A.det, "prod |C|_p'": A.det_expected}))
    if derived_order is None:
        out.append(AuditVerdict("c", "skipped", {}, "|G'| unknown"))
    else:
        witness, ok = {}, True
        for q in prime_factors(B.order):
            if q == p:
                continue
            fq, dq = p_part(A.f_p, q), p_part(derived_order, q)
            witness[f"f_p,{q}"] = fq
            witness[f"|G'|_{q}"] = dq
            ok &= (fq == 1) == (dq == 1)
        out.append(AuditVerdict("c", "pass" if ok else "fail", witness))
    mismatch = [j + 1 for j, (a, b) in enumerate(zip(A.recovered, A.stored)) if a != b]
    out.append(AuditVerdict("d", "pass" if not mismatch else "fail",
                            {"recovered": A.recovered, "stored": A.stored}))
    return out


def derived_order_from_table(T: CharTable) -> int:
    """``|G'| = |G| / #linear characters``."""
    linear = sum(1 for d in T.degrees if d == 1)
    return T.order // linear


BUNDLED = ("s3_p2", "s3_p3", "a4_p2", "a4_p3", "s4_p2", "s4_p3")


def bundled_table_path(stem: str):
    from importlib.resources import files

    if stem not in BUNDLED:
        raise KeyError(f"no bundled Brauer table {stem!r}")
    return files("charinv") / "data" / "brauer" / f"{stem}.tbl"


def load_bundled(stem: str) -> BrauerTable:
    from .chartab.io import loads_table

    return loads_table(bundled_table_path(stem).read_text(encoding="utf-8"), f"{stem}.tbl")
