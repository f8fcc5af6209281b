"""Invariants of the reciprocal centralizer class function.

For ``pt(g) = 1/|C_G(g)|`` the integer ``e(G)`` is the least positive
``m`` with ``m |G| pt`` a generalized character; ``e'(G) = |G| / e(G)``.
Everything here is exact: inner products are Fractions, table sums run
in a common cyclotomic field.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .chartab.dixon import dixon_schneider
from .chartab.symmetric import mn_symmetric_table
from .chartab.table import CharTable, _Lifted, gram_matrix, p_regular_classes
from .cyclo import Cyc, prime_factors
from .exactla import elementary_divisor_largest
from .groups import (
    BudgetExceeded, PermGroup, construct_named, derived_mask, normalizer_mask,
    o_p_prime_mask, p_decompose, p_part, p_prime_part, sylow_mask,
)
from .metabelian import MetabelianGroup, metabelian_centralizer_index


class CorruptTableError(ValueError):
    """A table produced a value the theory forbids (irrational inner product, ...)."""


# -- inner products --------------------------------------------------------


def _conj_class_sums(T: CharTable, weights) -> list[Cyc]:
    """``sum_c weights[c] * conj(chi(c))`` for every row."""
    lifted = _Lifted(T.irr)
    one = {0: 1}
    return [lifted.weighted_sum((w, one, x) for w, x in zip(weights, row)) for row in lifted.rows]


def _rational(v: Cyc, what: str) -> Fraction:
    if not v.is_rational():
        raise CorruptTableError(f"{what} is not rational: {v}")
    return Fraction(v.to_rational())


def pi_tilde_inner(T: CharTable) -> list[Fraction]:
    """``[pt, chi]`` per character, via ``|G|^2 [pt, chi] = sum size^2 conj(chi)``."""
    G2 = T.order**2
    sums = _conj_class_sums(T, [c.size**2 for c in T.classes])
    return [_rational(s, f"|G|^2 [pt, chi_{i + 1}]") / G2 for i, s in enumerate(sums)]


def pi_tilde_inner_regular(T: CharTable, p: int) -> list[Fraction]:
    """``[pt, chi]^0``: the same sum restricted to p-regular classes."""
    reg = set(p_regular_classes(T, p))
    w = [c.size**2 if i in reg else 0 for i, c in enumerate(T.classes)]
    G2 = T.order**2
    return [_rational(s, f"regular sum for chi_{i + 1}") / G2
            for i, s in enumerate(_conj_class_sums(T, w))]


def compute_e(T: CharTable) -> tuple[int, int]:
    e = lcm(*((T.order * v).denominator for v in pi_tilde_inner(T)))
    if T.order % e:
        raise CorruptTableError(f"e = {e} does not divide |G| = {T.order}")
    return e, T.order // e


def integer_gram(T: CharTable) -> list[list[int]]:
    """``Y = conj(X) X^t`` checked to be a symmetric non-negative integer matrix."""
    Y = gram_matrix(T)
    out = []
    for s, row in enumerate(Y):
        ints = []
        for t, v in enumerate(row):
            if not (v.is_rational() and v.to_rational().denominator == 1 and v.to_rational() >= 0):
                raise CorruptTableError(f"Y[{s + 1},{t + 1}] = {v} is not a non-negative integer")
            ints.append(int(v.to_rational()))
        out.append(ints)
    if any(out[s][t] != out[t][s] for s in range(len(out)) for t in range(s)):
        raise CorruptTableError("Y is not symmetric")
    return out


def compute_e_via_snf(T: CharTable) -> tuple[int, int]:
    top = elementary_divisor_largest(integer_gram(T))
    if top % T.order:
        raise CorruptTableError(f"largest elementary divisor {top} is not a multiple of |G|")
    e = top // T.order
    return e, T.order // e


def compute_f_p(T: CharTable, p: int) -> int:
    scale = p_part(T.order, p) * T.order
    return lcm(*((scale * v).denominator for v in pi_tilde_inner_regular(T, p)))


def center_order(T: CharTable) -> int:
    return sum(1 for c in T.classes if c.size == 1)


def constituents(T: CharTable) -> list[bool]:
    """``[pt, chi] != 0``; flagged characters are checked to contain Z(G) in their kernel."""
    flags = [v != 0 for v in pi_tilde_inner(T)]
    central = [i for i, c in enumerate(T.classes) if c.size == 1]
    for i, flag in enumerate(flags):
        if flag:
            deg = T.irr[i][0]
            if any(T.irr[i][c] != deg for c in central):
                raise CorruptTableError(
                    f"chi_{i + 1} meets the reciprocal centralizer function but is not trivial on Z(G)")
    return flags


def class_function_inner(T: CharTable, values) -> list[Cyc]:
    """``[f, chi]`` for a class function ``f`` with rational values."""
    w = [Fraction(v) * c.size for v, c in zip(values, T.classes)]
    return [s * Fraction(1, T.order) for s in _conj_class_sums(T, w)]


# -- group-side helpers -------------------------------------------------------


def _is_nilpotent(G: PermGroup) -> bool:
    return all(G.is_normal(sylow_mask(G, p)) for p in prime_factors(G.order))


def _center_of(G: PermGroup, mask: np.ndarray) -> int:
    gens = G.generators_of(mask)
    out = mask.copy()
    for h in gens:
        out &= G.centralizer_mask(h)
    return int(out.sum())


def _center_mod(G: PermGroup, N: np.ndarray) -> int:
    """``|Z(G/N)|`` as ``|{g : [g, s] in N for all generators s}| / |N|``."""
    n = len(G.elements)
    allx = np.arange(n, dtype=np.int64)
    inv = G.inverse_idx
    ok = np.ones(n, dtype=bool)
    gidx = G.index_of(np.array([s.images for s in G.generators]))
    for s in gidx:
        comm = G.mul_idx(G.mul_idx(G.mul_idx(inv, inv[s]), allx), s)
        ok &= N[comm]
    return int(ok.sum()) // int(N.sum())


# -- audits ----------------------------------------------------------------------


@dataclass
class AuditVerdict:
    audit: str
    verdict: str  # "pass", "fail", "skipped" or "n/a"
    witness: dict = field(default_factory=dict)
    note: str = ""

    def to_json(self) -> dict:
        return {"id": self.audit, "verdict": self.verdict,
                "witness": {k: str(v) for k, v in self.witness.items()}, "note": self.note}


AUDIT_TITLES = {
    "a": "e divides |G:Z|",
    "b": "|G| even implies e' even",
    "c": "|G||G:Z|[pt,chi]/chi(1) integral",
    "d": "e multiplicative on direct products",
    "e": "nilpotent: e' = |Z|",
    "f": "|Z(G/O_p'(G))| divides e'",
    "g": "p-nilpotent: e'_p = |Z(P)|",
    "h": "e_p = 1 iff |G'|_p = 1",
    "i": "p | e'(G) iff p | e'(N_G(P))",
    "j": "g -> |N:C_N(g_p)| is a generalized character",
}


def _verdict(name, ok, witness, note=""):
    return AuditVerdict(name, "pass" if ok else "fail", witness, note)


def _guard(name, fn):
    try:
        return fn()
    except BudgetExceeded as exc:
        return AuditVerdict(name, "skipped", {}, str(exc))


def _audit_products(G: PermGroup, e: int) -> AuditVerdict:
    if not G.factors:
        return AuditVerdict("d", "n/a", {}, "not built as a direct product")
    A, B = G.factors
    eA, _ = compute_e(dixon_schneider(A))
    eB, _ = compute_e(dixon_schneider(B))
    return _verdict("d", e == eA * eB, {"e(G)": e, "e(A)": eA, "e(B)": eB})


def audit_theorems(G: PermGroup, T: CharTable | None = None) -> list[AuditVerdict]:
    """Run the sub-audits (a)-(j); skipped means a budget ran out, n/a an unmet hypothesis."""
    T = T if T is not None else dixon_schneider(G)
    order = T.order
    e, ep = compute_e(T)
    z = center_order(T)
    primes = prime_factors(order) if order > 1 else []
    inner = pi_tilde_inner(T)
    out: list[AuditVerdict] = []

    out.append(_verdict("a", (order // z) % e == 0, {"e": e, "|G:Z|": order // z}))
    if order % 2:
        out.append(AuditVerdict("b", "n/a", {"|G|": order}, "odd order"))
    else:
        out.append(_verdict("b", ep % 2 == 0, {"e'": ep}))
    vals = [order * (order // z) * v / T.irr[i][0].to_rational() for i, v in enumerate(inner)]
    bad = [i + 1 for i, v in enumerate(vals) if v.denominator != 1]
    out.append(_verdict("c", not bad, {"non-integral characters": bad or "none"}))
    out.append(_guard("d", lambda: _audit_products(G, e)))

    def nil():
        if not _is_nilpotent(G):
            return AuditVerdict("e", "n/a", {}, "not nilpotent")
        return _verdict("e", ep == z, {"e'": ep, "|Z|": z})

    out.append(_guard("e", nil))

    def per_prime(name, body):
        def run():
            witness, ok, notes = {}, True, []
            applicable = False
            for p in primes:
                res = body(p)
                if res is None:
                    continue
                applicable = True
                good, w = res
                ok &= good
                witness.update({f"{k}@{p}": v for k, v in w.items()})
            if not applicable:
                return AuditVerdict(name, "n/a", {}, "no prime satisfies the hypothesis")
            return _verdict(name, ok, witness, "; ".join(notes))
        return _guard(name, run)

    opp = {}

    def o_pp(p):
        if p not in opp:
            opp[p] = o_p_prime_mask(G, p)
        return opp[p]

    def f_body(p):
        zq = _center_mod(G, o_pp(p))
        return ep % zq == 0, {"|Z(G/O_p')|": zq, "e'": ep}

    def g_body(p):
        if int(o_pp(p).sum()) * p_part(order, p) != order:
            return None
        zp = _center_of(G, sylow_mask(G, p))
        return p_part(ep, p) == zp, {"e'_p": p_part(ep, p), "|Z(P)|": zp}

    derived = {}

    def h_body(p):
        if "d" not in derived:
            derived["d"] = int(derived_mask(G).sum())
        dp = p_part(derived["d"], p)
        return (p_part(e, p) == 1) == (dp == 1), {"e_p": p_part(e, p), "|G'|_p": dp}

    def i_body(p):
        P = sylow_mask(G, p)
        N = normalizer_mask(G, P)
        if N.all():
            epn = ep
        else:
            H = G.subgroup(N, name=f"N_G(P_{p})")
            _, epn = compute_e(dixon_schneider(H))
        return (ep % p == 0) == (epn % p == 0), {"e'(G)": ep, "e'(N)": epn}

    def j_body(p):
        N = o_pp(p)
        n = int(N.sum())
        gamma = []
        for c, data in enumerate(G.classes()):
            gp, _ = p_decompose(data.representative, data.element_order, p)
            idx = int(G.index_of(np.array(gp.images))[0])
            gamma.append(Fraction(n, int(G.centralizer_mask(idx, within=N).sum())))
        vals = class_function_inner(_table_for_group(T, G), gamma)
        bad = [i + 1 for i, v in enumerate(vals)
               if not (v.is_rational() and v.to_rational().denominator == 1)]
        return not bad, {"|O_p'|": n, "non-integral": bad or "none"}

    out.append(per_prime("f", f_body))
    out.append(per_prime("g", g_body))
    out.append(per_prime("h", h_body))
    out.append(per_prime("i", i_body))
    out.append(per_prime("j", j_body))
    return out


def _table_for_group(T: CharTable, G: PermGroup) -> CharTable:
    """Check that the table columns follow the group's class order."""
    cls = G.classes()
    if len(cls) != len(T.classes) or any(
        a.size != b.size or a.element_order != b.element_order for a, b in zip(cls, T.classes)
    ):
        raise ValueError("table columns do not match the group's classes")
    return T


# -- closed forms and criteria --------------------------------------------------------


def p_adic_digits(n: int, p: int) -> list[int]:
    out = []
    while n:
        out.append(n % p)
        n //= p
    return out


def symmetric_digit_criterion(n: int) -> set[int]:
    """Primes ``p <= n`` with a non-unit p-adic digit ``a_i`` of n satisfying ``2 a_i >= p``."""
    if n < 1:
        raise ValueError("n must be positive")
    return {p for p in range(2, n + 1) if prime_factors(p) == [p]
            and any(2 * a >= p for a in p_adic_digits(n, p)[1:])}


def family_closed_form(family: str, param: int) -> int:
    """Predicted ``e'`` for ``dihedral`` (param n, order 2n), ``gl2``, ``sl2``, ``psl2`` (param q)."""
    if family == "dihedral":
        if param < 2:
            raise ValueError("dihedral groups need n >= 2")
        return 4 if param % 4 == 2 else 2
    if family in ("gl2", "sl2", "psl2"):
        fs = prime_factors(param) if param > 1 else []
        if len(fs) != 1:
            raise ValueError(f"q = {param} is not a prime power")
        if family == "gl2":
            return param - 1 if param % 2 else 2 * (param - 1)
        return 6 if param % 3 == 0 else 2
    raise ValueError(f"unsupported family {family!r}")


# -- the group of order 3^9 * 5^5 --------------------------------------------------------


@dataclass
class MetabelianVerdict:
    ok: bool
    centralizer_P: int
    centralizer_Q: int
    sum_mod_3: int
    sum_mod_5: int
    e: int
    e_prime: int
    failures: list[str]


def verify_3955_example() -> MetabelianVerdict:
    M = MetabelianGroup()
    fails = []
    P_gens = [M.a(i) for i in range(4)] + [M.c(5)]
    Q_gens = [M.b(i) for i in range(2)] + [M.c(3)]
    cP = M.centralizer_order_of_set(P_gens)
    cQ = M.centralizer_order_of_set(Q_gens)
    if cP != 81:
        fails.append(f"|C_G(P)| = {cP}, expected 81")
    if cQ != 25:
        fails.append(f"|C_G(Q)| = {cQ}, expected 25")
    CP = M.subgroup_elements([M.a(i, 3) for i in range(4)])
    CQ = M.subgroup_elements([M.b(i, 5) for i in range(2)])
    if len(CP) != cP or not all(M.commute(x, g) for x in CP for g in P_gens):
        fails.append("<a_i^3> is not the centralizer of P")
    if len(CQ) != cQ or not all(M.commute(x, g) for x in CQ for g in Q_gens):
        fails.append("<b_j^5> is not the centralizer of Q")
    s3 = sum(metabelian_centralizer_index(M, g) for g in CP) % 3
    s5 = sum(metabelian_centralizer_index(M, g) for g in CQ) % 5
    if s3 != 3 - 1:
        fails.append(f"sum over C_G(P) is {s3} mod 3, expected -1")
    if s5 != 5 - 2:
        fails.append(f"sum over C_G(Q) is {s5} mod 5, expected -2")
    # |G|^2 [pt, 1] is prime to 3 and 5, so e = |G|
    e = M.order if not fails else 0
    return MetabelianVerdict(not fails, cP, cQ, s3, s5, e, M.order // e if e else 0, fails)


# -- reports ----------------------------------------------------------------------------


@dataclass
class InvariantReport:
    group: str
    order: int
    e: int
    e_prime: int
    e_snf: int
    f: dict[int, int]
    inner: list[Fraction]
    constituent_flags: list[bool]
    audit: list[AuditVerdict]

    @property
    def e_tilde(self) -> Fraction | None:
        return Fraction(self.e_prime, 2) if self.e_prime % 2 == 0 else None

    @property
    def audits_ok(self) -> bool:
        return all(a.verdict != "fail" for a in self.audit) and self.e == self.e_snf

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "order": str(self.order),
            "e": str(self.e),
            "e_prime": str(self.e_prime),
            "e_tilde": None if self.e_tilde is None else str(self.e_tilde),
            "e_tilde_defined": self.e_tilde is not None,
            "e_snf": str(self.e_snf),
            "f": {str(p): str(v) for p, v in sorted(self.f.items())},
            "pi_tilde_inner": [str(v) for v in self.inner],
            "constituents": self.constituent_flags,
            "audit": [a.to_json() for a in self.audit],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def text(self) -> str:
        tilde = self.e_tilde if self.e_tilde is not None else "undefined (e' is odd)"
        lines = [
            f"group   {self.group}",
            f"order   {self.order}",
            f"e       {self.e}",
            f"e'      {self.e_prime}",
            f"e~      {tilde}",
            f"e(SNF)  {self.e_snf}",
            "f_p     " + ", ".join(f"{p}:{v}" for p, v in sorted(self.f.items())),
            "[pt,chi] " + " ".join(str(v) for v in self.inner),
        ]
        for a in self.audit:
            w = ", ".join(f"{k}={v}" for k, v in a.witness.items())
            extra = f" ({a.note})" if a.note else ""
            lines.append(f"audit {a.audit} {a.verdict:7s} {AUDIT_TITLES[a.audit]}: {w}{extra}")
        return "\n".join(lines)


def analyze(G: PermGroup, T: CharTable | None = None, audit: bool = True) -> InvariantReport:
    T = T if T is not None else dixon_schneider(G)
    e, ep = compute_e(T)
    e_snf, _ = compute_e_via_snf(T)
    primes = prime_factors(T.order) if T.order > 1 else []
    f = {p: compute_f_p(T, p) for p in primes}
    return InvariantReport(
        group=T.name, order=T.order, e=e, e_prime=ep, e_snf=e_snf, f=f,
        inner=pi_tilde_inner(T), constituent_flags=constituents(T),
        audit=audit_theorems(G, T) if audit else [],
    )


def conjecture_scan(max_sym: int = 12, max_alt: int = 9) -> list[dict]:
    """Evidence for the open observations on symmetric and alternating groups.

    Each row reports the observed and the conjectured values side by side;
    nothing here is asserted.
    """
    rows = []
    alt = {}
    for n in range(5, max_alt + 1):
        _, alt[n] = compute_e(dixon_schneider(construct_named(f"alt:{n}")))
    for n in range(2, max_sym + 1):
        _, ep = compute_e(mn_symmetric_table(n))
        guess2 = 2 ** sum(p_adic_digits(n, 2)[1:])
        row = {"n": n, "e'(S_n)": ep, "e'(S_n)_2": p_part(ep, 2), "2^(a1+a2+...)": guess2,
               "odd part": p_prime_part(ep, 2)}
        if n in alt:
            factor = 1 if n % 4 in (0, 1) else 2
            row["e'(A_n)"] = alt[n]
            row["ratio matches"] = ep == factor * alt[n]
        rows.append(row)
    return rows
