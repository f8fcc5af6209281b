"""Exact integer and cyclotomic linear algebra.

Integer matrices are plain ``list[list[int]]``; all arithmetic is on Python
integers, so there is no overflow and no floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path

from .cyclo import Cyc

IntMatrix = list[list[int]]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U * A * V == diag(divisors)`` padded with zeros to the shape of ``A``."""

    divisors: tuple[int, ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]
    rank: int


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def _check_rect(a: IntMatrix) -> tuple[int, int]:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(r) != cols for r in a):
        raise ValueError("matrix is not rectangular")
    return rows, cols


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Pivots are chosen as the entry of least nonzero absolute value in the
    remaining block (ties broken by row, then column), which is deterministic.
    """
    m, n = _check_rect(a)
    A = [list(map(int, r)) for r in a]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for r in A:
            r[dst] += f * r[src]
        for r in V:
            r[dst] += f * r[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if not dirty:
                # pivot must divide every remaining entry
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                continue
            # move the smallest remainder into the pivot position
            best = None
            for i in range(t, m):
                if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                    best = (abs(A[i][t]), i, t)
            for j in range(t, n):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    rank = t
    divs = tuple(A[i][i] for i in range(rank))
    return SmithDecomposition(divs, tuple(map(tuple, U)), tuple(map(tuple, V)), rank)


def _chain(diag: list[int]) -> list[int]:
    """Smith form of a diagonal matrix by pairwise gcd/lcm exchange."""
    a = list(diag)
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            g = gcd(a[i], a[j])
            if g != a[i]:
                a[i], a[j] = g, a[i] * a[j] // g
    return a


def _divisors_mod_det(a: IntMatrix, d: int) -> list[int]:
    """Elementary divisors of a nonsingular square matrix with ``|det| = d``.

    ``A adj(A) = det(A) I`` puts ``d Z^n`` inside the column lattice, so ``A``
    and ``[A | dI]`` share their divisors and entries may be reduced mod ``d``
    at any time.  This bounds entry growth; no transforms are kept.
    """
    n = len(a)
    half = d // 2

    def red(x):
        x %= d
        return x - d if x > half else x

    A = [[red(x) for x in row] for row in a]
    diag = []
    for t in range(n):
        best = None
        for i in range(t, n):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            diag += [d] * (n - t)
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        while True:
            p = A[t][t]
            for i in range(t + 1, n):
                if A[i][t]:
                    f = A[i][t] // p
                    A[i] = [red(x - f * y) for x, y in zip(A[i], A[t])]
            for j in range(t + 1, n):
                if A[t][j]:
                    f = A[t][j] // p
                    for r in A[t:]:
                        r[j] = red(r[j] - f * r[t])
            rest = [(abs(A[i][t]), i, t) for i in range(t + 1, n) if A[i][t]]
            rest += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            if not rest:
                break
            _, i, j = min(rest)
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for r in A:
                    r[t], r[j] = r[j], r[t]
        diag.append(gcd(A[t][t], d))
    return _chain(diag)


def elementary_divisors(a: IntMatrix) -> list[int]:
    """All ``min(rows, cols)`` elementary divisors, zeros included."""
    m, n = _check_rect(a)
    if m == n and m:
        d = abs(determinant(a))
        if d:
            return _divisors_mod_det(a, d)
    snf = smith_normal_form(a)
    return list(snf.divisors) + [0] * (min(m, n) - snf.rank)


def elementary_divisor_largest(a: IntMatrix) -> int:
    m, n = _check_rect(a)
    if m != n:
        raise ValueError("matrix must be square")
    d = abs(determinant(a)) if n else 0
    if not d:
        raise ValueError("matrix is singular")
    return _divisors_mod_det(a, d)[-1]


def determinant(a) -> int | Fraction:
    """Bareiss fraction-free determinant (exact for integer input)."""
    n, c = _check_rect(a)
    if n != c:
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    M = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        pk = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = M[i][j] * pk - M[i][k] * M[k][j]
                M[i][j] = v // prev if isinstance(v, int) else v / prev
        prev = pk
    return sign * M[n - 1][n - 1]


def count_solutions_mod(a: IntMatrix, b, m: int) -> int:
    """Number of ``x`` in ``(Z/m)^cols`` with ``A x = b (mod m)``."""
    rows, cols = _check_rect(a)
    if len(b) != rows:
        raise ValueError("right-hand side has the wrong length")
    snf = smith_normal_form(a)
    ub = [sum(u * x for u, x in zip(row, b)) for row in snf.U]
    count = 1
    for i in range(rows):
        d = snf.divisors[i] if i < snf.rank else 0
        g = gcd(d, m)  # gcd(0, m) == m
        if ub[i] % g:
            return 0
        if i < cols:
            count *= g
    # columns with no matching row are free
    count *= m ** max(0, cols - rows)
    return count


# -- cyclotomic matrices ------------------------------------------------


def nullspace_left(M) -> list[list[Cyc]]:
    """Basis of ``{v : v M = 0}`` via fraction-free elimination.

    Rows of ``M^T`` are eliminated by cross-multiplication (no division), so
    the basis vectors have entries in ``Z[zeta]`` whenever ``M`` does.
    """
    r = len(M)
    if r == 0:
        return []
    c = len(M[0])
    # work with M^T (c x r); solve M^T v^T = 0
    T = [[Cyc(M[i][j]) for i in range(r)] for j in range(c)]
    pivots: list[tuple[int, int]] = []  # (row, col)
    row = 0
    for col in range(r):
        piv = next((i for i in range(row, c) if not T[i][col].is_zero()), None)
        if piv is None:
            continue
        T[row], T[piv] = T[piv], T[row]
        p = T[row][col]
        for i in range(c):
            if i != row and not T[i][col].is_zero():
                f = T[i][col]
                T[i] = [p * x - f * y for x, y in zip(T[i], T[row])]
        pivots.append((row, col))
        row += 1
        if row == c:
            break
    pcols = {pc for _, pc in pivots}
    basis = []
    for free in range(r):
        if free in pcols:
            continue
        # v_free = prod of pivots; v_pc = -T[pr][free] * prod / pivot
        prod = Cyc(1)
        for pr, pc in pivots:
            prod = prod * T[pr][pc]
        v = [Cyc(0)] * r
        v[free] = prod
        for pr, pc in pivots:
            others = Cyc(1)
            for pr2, pc2 in pivots:
                if pr2 != pr:
                    others = others * T[pr2][pc2]
            v[pc] = -(T[pr][free] * others)
        basis.append(v)
    return basis


def solve_left(A, b) -> list[Cyc]:
    """Solve ``x A = b`` for square invertible ``A`` over a cyclotomic field."""
    n = len(A)
    # x A = b  <=>  A^T x^T = b^T
    aug = [[Cyc(A[i][j]) for i in range(n)] + [Cyc(b[j])] for j in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if not aug[i][col].is_zero()), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and not aug[i][col].is_zero():
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [aug[i][n] for i in range(n)]


# -- matrix text format --------------------------------------------------


def read_matrix(path) -> IntMatrix:
    """Read ``rows cols`` followed by row-major integers."""
    text = Path(path).read_text()
    return parse_matrix(text)


def parse_matrix(text: str) -> IntMatrix:
    toks = text.split()
    if len(toks) < 2:
        raise ValueError("matrix file: missing 'rows cols' header")
    try:
        vals = [int(t) for t in toks]
    except ValueError as exc:
        raise ValueError(f"matrix file: non-integer token ({exc})") from None
    rows, cols = vals[0], vals[1]
    if rows < 0 or cols < 0:
        raise ValueError("matrix file: negative dimension")
    body = vals[2:]
    if len(body) != rows * cols:
        raise ValueError(f"matrix file: expected {rows * cols} entries, found {len(body)}")
    return [body[i * cols:(i + 1) * cols] for i in range(rows)]


def format_matrix(a: IntMatrix) -> str:
    rows, cols = _check_rect(a)
    lines = [f"{rows} {cols}"]
    lines += [" ".join(str(x) for x in r) for r in a]
    return "\n".join(lines) + "\n"


def write_matrix(path, a: IntMatrix) -> None:
    Path(path).write_text(format_matrix(a))
