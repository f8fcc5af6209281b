"""Slow, independent reference computations used to freeze expected values.

Nothing here touches the stabilizer chain, the kernels or the table code:
groups are closed by breadth-first multiplication of plain tuples.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from math import gcd


def compose(a, b):
    """Apply ``a`` then ``b``."""
    return tuple(b[x] for x in a)


def inverse(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def closure(gens):
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def classes(elements):
    elements = set(elements)
    out = []
    left = set(elements)
    while left:
        x = min(left)
        cls = {compose(compose(inverse(g), x), g) for g in elements}
        out.append(cls)
        left -= cls
    return out


def centralizer_order(elements, x):
    return sum(1 for g in elements if compose(g, x) == compose(x, g))


def element_order(x):
    ident = tuple(range(len(x)))
    k, y = 1, x
    while y != ident:
        y = compose(y, x)
        k += 1
    return k


def reciprocal_sum(elements):
    """``sum_g |G : C_G(g)|`` = ``|G|^2 [pt, 1]``."""
    n = len(elements)
    return sum(Fraction(n, centralizer_order(elements, g)) for g in elements)


def det_leibniz(M):
    n = len(M)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term *= M[i][perm[i]]
        total += term
    return total


def minors_gcd(M, k):
    rows, cols = len(M), len(M[0])
    from itertools import combinations

    g = 0
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            g = gcd(g, det_leibniz([[M[r][c] for c in cs] for r in rs]))
    return g


def divisors_by_minors(M):
    """Elementary divisors as ratios of successive determinantal divisors."""
    rows, cols = len(M), len(M[0]) if M else 0
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        d = minors_gcd(M, k)
        if d == 0:
            break
        out.append(d // prev)
        prev = d
    return out


def count_mod_brute(A, b, m):
    n = len(A[0])
    return sum(
        1 for x in product(range(m), repeat=n)
        if all(sum(a * v for a, v in zip(row, x)) % m == bb % m for row, bb in zip(A, b))
    )
