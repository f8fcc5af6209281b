"""The metabelian group ``(C9^4 x C25^2) : C15`` of order 3^9 * 5^5.

Elements are ``v * c^k`` with ``v = (a, b)`` in ``Z9^4 x Z25^2`` written
additively.  Conjugation by ``c`` acts on ``A`` and ``B`` through integer
matrices ``T_A`` (mod 9) and ``T_B`` (mod 25): ``c^-1 v c = T v``.
Products follow ``(v, k)(w, j) = (v + T^-k w, k + j)``.

Centralizers are counted rather than enumerated: ``(w, j)`` commutes with
``(v, k)`` iff ``(I - T^-k) w = (I - T^-j) v``, one linear congruence system
per value of ``j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import lcm

from .exactla import count_solutions_mod, matmul

MOD_A, DIM_A = 9, 4
MOD_B, DIM_B = 25, 2
C_ORDER = 15


def _matpow_mod(M, k, m):
    n = len(M)
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    base = [r[:] for r in M]
    while k:
        if k & 1:
            out = [[x % m for x in r] for r in matmul(out, base)]
        base = [[x % m for x in r] for r in matmul(base, base)]
        k >>= 1
    return out


def _apply(M, v, m):
    return tuple(sum(x * y for x, y in zip(row, v)) % m for row in M)


def _action_matrices():
    # columns are the images of the generators:
    # a1 -> 4 a2, a2 -> 4 a3, a3 -> 4 a4, a4 -> -4 (a1 + a2 + a3 + a4)
    cols_a = [
        (0, 4, 0, 0),
        (0, 0, 4, 0),
        (0, 0, 0, 4),
        (-4 % 9,) * 4,
    ]
    # b1 -> 6 b2, b2 -> -6 (b1 + b2)
    cols_b = [(0, 6), (-6 % 25, -6 % 25)]
    TA = [[cols_a[j][i] for j in range(DIM_A)] for i in range(DIM_A)]
    TB = [[cols_b[j][i] for j in range(DIM_B)] for i in range(DIM_B)]
    return TA, TB


@dataclass(frozen=True)
class MetaElement:
    a: tuple[int, ...]
    b: tuple[int, ...]
    k: int


class MetabelianGroup:
    order = MOD_A**DIM_A * MOD_B**DIM_B * C_ORDER

    def __init__(self):
        self.TA, self.TB = _action_matrices()
        # T^k for k mod 15; T^-k is T^(15-k)
        self.TA_pow = [_matpow_mod(self.TA, k, MOD_A) for k in range(C_ORDER)]
        self.TB_pow = [_matpow_mod(self.TB, k, MOD_B) for k in range(C_ORDER)]

    def _tinv(self, k):
        k %= C_ORDER
        return self.TA_pow[(-k) % C_ORDER], self.TB_pow[(-k) % C_ORDER]

    # -- group law ------------------------------------------------------
    def identity(self) -> MetaElement:
        return MetaElement((0,) * DIM_A, (0,) * DIM_B, 0)

    def a(self, i: int, e: int = 1) -> MetaElement:
        v = [0] * DIM_A
        v[i] = e % MOD_A
        return MetaElement(tuple(v), (0,) * DIM_B, 0)

    def b(self, i: int, e: int = 1) -> MetaElement:
        v = [0] * DIM_B
        v[i] = e % MOD_B
        return MetaElement((0,) * DIM_A, tuple(v), 0)

    def c(self, e: int = 1) -> MetaElement:
        return MetaElement((0,) * DIM_A, (0,) * DIM_B, e % C_ORDER)

    def mul(self, x: MetaElement, y: MetaElement) -> MetaElement:
        ta, tb = self._tinv(x.k)
        wa = _apply(ta, y.a, MOD_A)
        wb = _apply(tb, y.b, MOD_B)
        return MetaElement(
            tuple((p + q) % MOD_A for p, q in zip(x.a, wa)),
            tuple((p + q) % MOD_B for p, q in zip(x.b, wb)),
            (x.k + y.k) % C_ORDER,
        )

    def inv(self, x: MetaElement) -> MetaElement:
        # (v, k)^-1 = (-T^k v, -k)
        ta = self.TA_pow[x.k % C_ORDER]
        tb = self.TB_pow[x.k % C_ORDER]
        return MetaElement(
            tuple((-y) % MOD_A for y in _apply(ta, x.a, MOD_A)),
            tuple((-y) % MOD_B for y in _apply(tb, x.b, MOD_B)),
            (-x.k) % C_ORDER,
        )

    def conj(self, x: MetaElement, g: MetaElement) -> MetaElement:
        """``g^-1 x g``."""
        return self.mul(self.mul(self.inv(g), x), g)

    def commute(self, x: MetaElement, y: MetaElement) -> bool:
        return self.mul(x, y) == self.mul(y, x)

    def action_orders(self) -> tuple[int, int, int, int]:
        """Orders of c on A x B, of c on A, of c^5 on A and of c^3 on B."""
        ident_a = _matpow_mod(self.TA, 0, MOD_A)
        ident_b = _matpow_mod(self.TB, 0, MOD_B)

        def order(M, ident, m):
            k, P = 1, [r[:] for r in M]
            while P != ident:
                P = [[x % m for x in r] for r in matmul(P, M)]
                k += 1
            return k

        full = order(self.TA, ident_a, MOD_A)
        full_b = order(self.TB, ident_b, MOD_B)
        c5 = order(self.TA_pow[5], ident_a, MOD_A)
        c3 = order(self.TB_pow[3], ident_b, MOD_B)
        return lcm(full, full_b), full, c5, c3

    # -- centralizers ---------------------------------------------------
    def centralizer_order_of_set(self, elems) -> int:
        """``|C_G(S)|`` for a finite set ``S`` by stacking the congruence systems."""
        elems = list(elems)
        total = 0
        for j in range(C_ORDER):
            rows_a, rhs_a, rows_b, rhs_b = [], [], [], []
            for x in elems:
                ta, tb = self._tinv(x.k)
                tja, tjb = self._tinv(j)
                lhs_a = [[(int(r == s) - ta[r][s]) % MOD_A for s in range(DIM_A)] for r in range(DIM_A)]
                lhs_b = [[(int(r == s) - tb[r][s]) % MOD_B for s in range(DIM_B)] for r in range(DIM_B)]
                va = _apply(tja, x.a, MOD_A)
                vb = _apply(tjb, x.b, MOD_B)
                rows_a += lhs_a
                rhs_a += [(p - q) % MOD_A for p, q in zip(x.a, va)]
                rows_b += lhs_b
                rhs_b += [(p - q) % MOD_B for p, q in zip(x.b, vb)]
            na = count_solutions_mod(rows_a, rhs_a, MOD_A)
            if na == 0:
                continue
            total += na * count_solutions_mod(rows_b, rhs_b, MOD_B)
        return total

    def centralizer_order(self, g: MetaElement) -> int:
        return self.centralizer_order_of_set([g])

    def subgroup_elements(self, gens) -> list[MetaElement]:
        """Enumerate a (small) subgroup by closure."""
        seen = {self.identity()}
        frontier = [self.identity()]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        return sorted(seen, key=lambda e: (e.k, e.a, e.b))


def metabelian_centralizer_index(M: MetabelianGroup, g: MetaElement) -> int:
    """``|G : C_G(g)|``."""
    return M.order // M.centralizer_order(g)


def brute_centralizer_order(M: MetabelianGroup, g: MetaElement) -> int:
    """Independent count by enumeration, one ``c``-exponent at a time.

    For fixed ``j`` the commuting condition splits into an ``A`` part and a
    ``B`` part, so the ``A`` and ``B`` candidates are enumerated separately.
    """
    zero_a, zero_b = (0,) * DIM_A, (0,) * DIM_B
    total = 0
    for j in range(C_ORDER):
        na = 0
        for a in product(range(MOD_A), repeat=DIM_A):
            h = MetaElement(a, zero_b, j)
            if M.mul(g, h).a == M.mul(h, g).a:
                na += 1
        nb = 0
        for b in product(range(MOD_B), repeat=DIM_B):
            h = MetaElement(zero_a, b, j)
            if M.mul(g, h).b == M.mul(h, g).b:
                nb += 1
        total += na * nb
    return total
