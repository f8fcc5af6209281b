"""Ordinary character tables of permutation groups by Dixon-Schneider.

Class multiplication matrices are built over a prime field ``F_l`` with
``l = 1 (mod exp G)``; their common eigenvectors give the central
characters, which are scaled to character values mod ``l`` and lifted to
exact cyclotomic integers through the ``<g>``-eigenvalue multiplicities.
"""
from __future__ import annotations

from math import isqrt

import numpy as np

from ..cyclo import Cyc, prime_factors
from ..groups import PermGroup
from ..perm import format_cycles
from .table import CharTable, ClassInfo, sort_rows, verify_table


class InternalConsistencyError(RuntimeError):
    """A computed table failed its own exact verification."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, isqrt(n) + 1, 2))


def choose_prime(order: int, exponent: int) -> int:
    """Smallest prime ``l = 1 (mod exponent)`` with ``l^2 > 4 |G|``."""
    l = exponent + 1
    while not (_is_prime(l) and l * l > 4 * order):
        l += exponent
    return l


def _primitive_root(l: int) -> int:
    qs = prime_factors(l - 1)
    return next(g for g in range(2, l) if all(pow(g, (l - 1) // q, l) != 1 for q in qs))


# -- linear algebra over F_l (numpy int64; caller keeps l < 2^26) ------------


def _rref(A: np.ndarray, l: int):
    A = A.copy() % l
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, l) % l
        f = A[:, c].copy()
        f[r] = 0
        A = (A - np.outer(f, A[r])) % l
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _nullspace(A: np.ndarray, l: int) -> np.ndarray:
    """Columns spanning ``{x : A x = 0}``."""
    n = A.shape[1]
    R, piv = _rref(A, l)
    free = [c for c in range(n) if c not in set(piv)]
    N = np.zeros((n, len(free)), dtype=np.int64)
    for t, f in enumerate(free):
        N[f, t] = 1
        for r, p in enumerate(piv):
            N[p, t] = (-R[r, f]) % l
    return N


def _column_echelon(B: np.ndarray, l: int):
    """Basis with an identity block on the returned pivot rows."""
    R, piv = _rref(B.T, l)
    return R.T.copy(), piv


def _charpoly(M: np.ndarray, l: int) -> list[int]:
    """Characteristic polynomial (low degree first) via Hessenberg form."""
    H = [[int(x) % l for x in row] for row in M]
    n = len(H)
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if H[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for row in H:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = pow(H[j + 1][j], -1, l)
        for i in range(j + 2, n):
            u = H[i][j] * inv % l
            if not u:
                continue
            ri, rp = H[i], H[j + 1]
            for c in range(n):
                ri[c] = (ri[c] - u * rp[c]) % l
            for row in H:
                row[j + 1] = (row[j + 1] + u * row[i]) % l
    polys = [np.array([1], dtype=np.int64)]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = np.zeros(m + 1, dtype=np.int64)
        cur[1:] = prev
        cur[:-1] = (cur[:-1] - H[m - 1][m - 1] * prev) % l
        t = 1
        for i in range(1, m):
            t = t * H[m - i][m - i - 1] % l
            if not t:
                break
            coef = t * H[m - i - 1][m - 1] % l
            if coef:
                q = polys[m - i - 1]
                cur[: len(q)] = (cur[: len(q)] - coef * q) % l
        polys.append(cur % l)
    return [int(x) for x in polys[n]]


def _roots(poly: list[int], l: int) -> list[int]:
    xs = np.arange(l, dtype=np.int64)
    acc = np.zeros(l, dtype=np.int64)
    for c in reversed(poly):
        acc = (acc * xs + c) % l
    return [int(x) for x in np.flatnonzero(acc == 0)]


# -- class matrices ------------------------------------------------------------


class _ClassMatrices:
    def __init__(self, G: PermGroup, l: int):
        self.G = G
        self.l = l
        self.k = len(G.classes())
        E = G.elements
        self.reps = E[G.rep_indices]
        self.members = [np.flatnonzero(G.class_labels == c) for c in range(self.k)]
        self.inv_rows = None
        self._cache = {}

    def matrix(self, j: int) -> np.ndarray:
        """``M[i, k] = #{x in C_j : class(x^-1 z_k) = i}``."""
        if j in self._cache:
            return self._cache[j]
        G = self.G
        E = G.elements
        xinv = E[G.inverse_idx[self.members[j]]]
        M = np.zeros((self.k, self.k), dtype=np.int64)
        labels = G.class_labels
        for kk in range(self.k):
            prods = self.reps[kk][xinv]
            idx = G.index_of(prods)
            M[:, kk] = np.bincount(labels[idx], minlength=self.k)
        M %= self.l
        self._cache[j] = M
        return M


def _split(cm: _ClassMatrices, order_of_use: list[int], l: int) -> list[np.ndarray]:
    k = cm.k
    pending = [np.eye(k, dtype=np.int64)]
    done: list[np.ndarray] = []
    for j in order_of_use:
        if not pending:
            break
        M = cm.matrix(j)
        nxt = []
        for B in pending:
            B, piv = _column_echelon(B, l)
            d = B.shape[1]
            R = (M @ B % l)[piv, :]
            roots = _roots(_charpoly(R, l), l)
            total = 0
            for lam in roots:
                N = _nullspace((R - lam * np.eye(d, dtype=np.int64)) % l, l)
                total += N.shape[1]
                sub = B @ N % l
                (done if N.shape[1] == 1 else nxt).append(sub)
            if total != d:
                raise InternalConsistencyError(
                    f"class matrix {j} is not diagonalizable mod {l} on a {d}-dimensional space")
        pending = nxt
    if pending:
        raise InternalConsistencyError("class matrices did not separate all characters")
    return done


def _lift(values_mod: list[int], d: int, class_power: list[list[int]], orders: list[int],
          exponent: int, z_e: int, l: int) -> list[Cyc]:
    out = []
    for c, n in enumerate(orders):
        z_n = pow(z_e, exponent // n, l)
        ninv = pow(n, -1, l)
        vals = [values_mod[class_power[c][s]] for s in range(n)]
        terms = {}
        total = 0
        for t in range(n):
            acc = 0
            zt = pow(z_n, (-t) % n, l)
            w = 1
            for s in range(n):
                acc += vals[s] * w
                w = w * zt % l
            m = acc * ninv % l
            if m > d:
                raise InternalConsistencyError(
                    f"eigenvalue multiplicity {m} exceeds degree {d} at class {c + 1}")
            if m:
                terms[t] = m
            total += m
        if total != d:
            raise InternalConsistencyError(f"multiplicities at class {c + 1} do not sum to {d}")
        out.append(Cyc.from_terms(n, terms))
    return out


def dixon_schneider(G: PermGroup, name: str | None = None) -> CharTable:
    """Exact ordinary character table of ``G``, verified before returning."""
    cls = G.classes()
    k = len(cls)
    order = G.order
    exponent = G.exponent()
    sizes = [c.size for c in cls]
    orders = [c.element_order for c in cls]
    infos = [
        ClassInfo(c.size, c.centralizer_order, c.element_order, dict(c.power_map),
                  format_cycles(c.representative))
        for c in cls
    ]
    name = name or G.name
    if k == 1:
        return CharTable(name, order, infos, [[Cyc(1)]])
    l = choose_prime(order, exponent)
    if k * l * l >= 2**63:
        raise OverflowError(f"prime {l} too large for int64 arithmetic")
    inv_class = [G.class_index(~c.representative) for c in cls]
    class_power = [[G.power_class(c, s) for s in range(orders[c])] for c in range(k)]

    cm = _ClassMatrices(G, l)
    use = sorted(range(1, k), key=lambda j: (sizes[j], j))
    vectors = _split(cm, use, l)

    z_e = pow(_primitive_root(l), (l - 1) // exponent, l)
    size_inv = [pow(s, -1, l) for s in sizes]
    irr = []
    for v in vectors:
        w = [int(x) for x in v[:, 0]]
        if w[0] == 0:
            raise InternalConsistencyError("central character vanishes at the identity")
        s0 = pow(w[0], -1, l)
        w = [x * s0 % l for x in w]
        s = sum(w[c] * w[inv_class[c]] * size_inv[c] for c in range(k)) % l
        dsq = order * pow(s, -1, l) % l
        deg = next((d for d in range(1, isqrt(order) + 1)
                    if d * d % l == dsq and order % d == 0), None)
        if deg is None:
            raise InternalConsistencyError("no admissible degree for a central character")
        vals = [w[c] * deg * size_inv[c] % l for c in range(k)]
        irr.append(_lift(vals, deg, class_power, orders, exponent, z_e, l))

    T = CharTable(name, order, infos, sort_rows(irr))
    verdict = verify_table(T)
    if not verdict:
        raise InternalConsistencyError(f"computed table fails verification: {verdict.first_failure}")
    return T
