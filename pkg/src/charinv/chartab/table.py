"""Character-table containers and exact verification."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm

from ..cyclo import Cyc
from ..exactla import determinant
from ..groups import p_prime_part


@dataclass
class ClassInfo:
    size: int
    centralizer: int
    element_order: int
    power_maps: dict[int, int] = field(default_factory=dict)
    label: str | None = None


@dataclass
class CharTable:
    """Irreducible characters (rows) over conjugacy classes (columns)."""

    name: str
    order: int
    classes: list[ClassInfo]
    irr: list[list[Cyc]]
    prime: int = 0

    @property
    def nclasses(self) -> int:
        return len(self.classes)

    @property
    def degrees(self) -> list[int]:
        return [int(row[0].to_rational()) for row in self.irr]

    @property
    def conductor(self) -> int:
        return lcm(*(v.conductor for row in self.irr for v in row)) if self.irr else 1

    def __eq__(self, other):
        if not isinstance(other, CharTable):
            return NotImplemented
        return (
            type(self) is type(other)
            and self.name == other.name
            and self.order == other.order
            and self.prime == other.prime
            and self.classes == other.classes
            and self.irr == other.irr
        )


@dataclass(eq=False)
class BrauerTable(CharTable):
    """Irreducible Brauer characters over the p-regular classes."""

    ordinary_ref: str | None = None

    def __eq__(self, other):
        return CharTable.__eq__(self, other) and self.ordinary_ref == getattr(other, "ordinary_ref", None)


@dataclass
class Verdict:
    ok: bool
    failures: list[str]
    checked: list[str]

    @property
    def first_failure(self) -> str | None:
        return self.failures[0] if self.failures else None

    def __bool__(self):
        return self.ok


def canonical_row_key(row: list[Cyc]):
    """Degree first, then values; the trivial character sorts first."""
    return (row[0].to_rational(), tuple(v.sort_key() for v in row[1:]))


def sort_rows(irr: list[list[Cyc]]) -> list[list[Cyc]]:
    return sorted(irr, key=canonical_row_key)


# -- exact sums in a common cyclotomic field -----------------------------


class _Lifted:
    """All table values written over one root of unity ``zeta_L``."""

    def __init__(self, irr):
        self.L = lcm(*(v.conductor for row in irr for v in row)) if irr else 1
        self.rows = [[v.exponent_terms(self.L) for v in row] for row in irr]

    def conj(self, terms):
        L = self.L
        return {(-e) % L: c for e, c in terms.items()}

    def weighted_sum(self, pairs) -> Cyc:
        """``sum w * x * conj(y)`` over ``(w, x, y)`` term dictionaries."""
        L = self.L
        acc: dict[int, object] = {}
        for w, x, y in pairs:
            if not w:
                continue
            for e1, c1 in x.items():
                for e2, c2 in y.items():
                    e = (e1 - e2) % L
                    acc[e] = acc.get(e, 0) + w * c1 * c2
        return Cyc.from_terms(L, acc)


def _one_based(i: int) -> int:
    return i + 1


def verify_table(T: CharTable) -> Verdict:
    """Check the defining identities of an ordinary or Brauer table.

    Messages use 1-based class and character numbers.
    """
    if isinstance(T, BrauerTable) or T.prime:
        return _verify_brauer(T)
    fails: list[str] = []
    checked: list[str] = []
    k = len(T.classes)

    def check(name, ok, msg):
        checked.append(name)
        if not ok:
            fails.append(msg)
        return ok

    if not check("shape", len(T.irr) == k and all(len(r) == k for r in T.irr),
                 f"table is not {k}x{k}"):
        return Verdict(False, fails, checked)
    _check_classes(T, check)
    check("class sizes", sum(c.size for c in T.classes) == T.order,
          f"class sizes sum to {sum(c.size for c in T.classes)}, not {T.order}")
    _check_degrees(T, check)
    if fails:
        return Verdict(False, fails, checked)

    lifted = _Lifted(T.irr)
    sizes = [c.size for c in T.classes]
    checked.append("row orthogonality")
    for i in range(k):
        for j in range(i, k):
            s = lifted.weighted_sum(zip(sizes, lifted.rows[i], lifted.rows[j]))
            want = T.order if i == j else 0
            if s != want:
                fails.append(f"row orthogonality ({_one_based(i)},{_one_based(j)}): "
                             f"got {s}, expected {want}")
    checked.append("column orthogonality")
    cols = list(zip(*lifted.rows))
    for a in range(k):
        for b in range(a, k):
            s = lifted.weighted_sum(zip([1] * k, cols[a], cols[b]))
            want = T.classes[a].centralizer if a == b else 0
            if s != want:
                fails.append(f"column orthogonality ({_one_based(a)},{_one_based(b)}): "
                             f"got {s}, expected {want}")
    return Verdict(not fails, fails, checked)


def _check_classes(T: CharTable, check) -> None:
    if not T.classes:
        check("classes", False, "no classes")
        return
    c0 = T.classes[0]
    check("identity class", c0.size == 1 and c0.element_order == 1,
          "class 1 is not the identity class")
    for i, c in enumerate(T.classes):
        check("orbit-stabilizer", c.size * c.centralizer == T.order,
              f"class {_one_based(i)}: orbit-stabilizer violated")
        for q, j in c.power_maps.items():
            if not 0 <= j < len(T.classes):
                check("power maps", False, f"class {_one_based(i)}: power map {q} out of range")
                continue
            want = c.element_order // gcd(c.element_order, q)
            check("power maps", T.classes[j].element_order == want,
                  f"class {_one_based(i)}: {q}-th power has order "
                  f"{T.classes[j].element_order}, expected {want}")


def _check_degrees(T: CharTable, check) -> None:
    degs = []
    for i, row in enumerate(T.irr):
        d = row[0]
        ok = d.is_rational() and d.to_rational().denominator == 1 and d.to_rational() > 0
        check("degrees", ok, f"character {_one_based(i)}: degree {d} is not a positive integer")
        if ok:
            degs.append(int(d.to_rational()))
            check("degrees", T.order % degs[-1] == 0,
                  f"character {_one_based(i)}: degree {degs[-1]} does not divide {T.order}")
        for j, v in enumerate(row):
            if not v.is_integral():
                check("integrality", False,
                      f"character {_one_based(i)}, class {_one_based(j)}: {v} is not an algebraic integer")
    if not T.prime and len(degs) == len(T.irr):
        check("degree sum", sum(d * d for d in degs) == T.order,
              f"sum of squared degrees is {sum(d * d for d in degs)}, not {T.order}")


def gram_matrix(T: CharTable) -> list[list[Cyc]]:
    """``conj(X) X^t`` as cyclotomic numbers."""
    lifted = _Lifted(T.irr)
    k = len(T.irr)
    ones = [1] * len(T.classes)
    out = [[None] * k for _ in range(k)]
    for s in range(k):
        for t in range(s, k):
            # entry (s, t) = sum conj(phi_s) phi_t
            v = lifted.weighted_sum(zip(ones, lifted.rows[t], lifted.rows[s]))
            out[s][t] = v
            out[t][s] = v if s == t else lifted.weighted_sum(zip(ones, lifted.rows[s], lifted.rows[t]))
    return out


def _verify_brauer(T: CharTable) -> Verdict:
    fails: list[str] = []
    checked: list[str] = []
    p = T.prime
    l = len(T.classes)

    def check(name, ok, msg):
        checked.append(name)
        if not ok:
            fails.append(msg)
        return ok

    if not check("shape", len(T.irr) == l and all(len(r) == l for r in T.irr),
                 f"table is not {l}x{l}"):
        return Verdict(False, fails, checked)
    _check_classes(T, check)
    for i, c in enumerate(T.classes):
        check("p-regular", p < 2 or c.element_order % p != 0,
              f"class {_one_based(i)}: element order {c.element_order} is divisible by {p}")
    _check_degrees(T, check)
    if fails:
        return Verdict(False, fails, checked)
    Y = gram_matrix(T)
    checked.append("gram integrality")
    for s in range(l):
        for t in range(l):
            v = Y[s][t]
            if not (v.is_rational() and v.to_rational().denominator == 1 and v.to_rational() >= 0):
                fails.append(f"gram entry ({_one_based(s)},{_one_based(t)}) = {v} "
                             "is not a non-negative integer")
            elif Y[t][s] != v:
                fails.append(f"gram matrix is not symmetric at ({_one_based(s)},{_one_based(t)})")
    if fails:
        return Verdict(False, fails, checked)
    Yi = [[int(v.to_rational()) for v in r] for r in Y]
    det = determinant(Yi)
    want = 1
    for c in T.classes:
        want *= p_prime_part(c.centralizer, p) if p else c.centralizer
    check("determinant identity", det == want,
          f"det(Y_p) = {det}, expected product of centralizer p'-parts {want}")
    return Verdict(not fails, fails, checked)


def p_regular_classes(T: CharTable, p: int) -> list[int]:
    return [i for i, c in enumerate(T.classes) if c.element_order % p != 0]


def galois_permutes(T: CharTable, k: int) -> bool:
    """Whether ``zeta -> zeta^k`` permutes both the rows and the columns."""
    rows = {tuple(r) for r in T.irr}
    images = [[v.galois(k) for v in r] for r in T.irr]
    if {tuple(r) for r in images} != rows:
        return False
    cols = {tuple(c) for c in zip(*T.irr)}
    return {tuple(c) for c in zip(*images)} == cols
