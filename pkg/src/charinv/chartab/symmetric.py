"""Character tables of symmetric groups by the Murnaghan-Nakayama rule.

Rows are indexed by partitions, columns by cycle types.  Columns are
ordered by element order, then class size, then cycle type, so the
identity comes first; rows follow the usual canonical order.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial, gcd, lcm

from ..cyclo import Cyc, prime_factors
from .table import CharTable, ClassInfo, canonical_row_key

MAX_N = 20


def partitions(n: int) -> list[tuple[int, ...]]:
    """Partitions of ``n`` in reverse lexicographic order."""
    out = []

    def rec(rest, cap, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for part in range(min(rest, cap), 0, -1):
            acc.append(part)
            rec(rest - part, part, acc)
            acc.pop()

    rec(n, n, [])
    return out


def centralizer_size(mu) -> int:
    z = 1
    for part, m in Counter(mu).items():
        z *= part**m * factorial(m)
    return z


def power_cycle_type(mu, q: int) -> tuple[int, ...]:
    parts = []
    for part in mu:
        g = gcd(part, q)
        parts += [part // g] * g
    return tuple(sorted(parts, reverse=True))


def _beta(lam) -> tuple[int, ...]:
    L = len(lam)
    return tuple(part + L - 1 - i for i, part in enumerate(lam))


def _from_beta(beta) -> tuple[int, ...]:
    b = sorted(beta, reverse=True)
    L = len(b)
    return tuple(x for x in (v - (L - 1 - i) for i, v in enumerate(b)) if x)


@lru_cache(maxsize=None)
def mn_value(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """``chi^lam`` at cycle type ``mu`` (both partitions of the same n)."""
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    beta = _beta(lam)
    present = set(beta)
    total = 0
    for b in beta:
        c = b - r
        if c < 0 or c in present:
            continue
        height = sum(1 for x in beta if c < x < b)
        sub = _from_beta([c if x == b else x for x in beta])
        total += (-1) ** height * mn_value(sub, rest)
    return total


def mn_symmetric_table(n: int) -> CharTable:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must lie in 1..{MAX_N}")
    order = factorial(n)
    types = partitions(n)

    def elt_order(mu):
        return lcm(*mu)

    cols = sorted(types, key=lambda mu: (elt_order(mu), order // centralizer_size(mu), mu))
    col_index = {mu: i for i, mu in enumerate(cols)}
    primes = prime_factors(order) if order > 1 else []
    classes = [
        ClassInfo(
            size=order // centralizer_size(mu),
            centralizer=centralizer_size(mu),
            element_order=elt_order(mu),
            power_maps={q: col_index[power_cycle_type(mu, q)] for q in primes},
            label=".".join(map(str, mu)),
        )
        for mu in cols
    ]
    rows = [[Cyc(mn_value(lam, mu)) for mu in cols] for lam in types]
    labelled = sorted(zip(rows, types), key=lambda rt: canonical_row_key(rt[0]))
    T = CharTable(f"S{n}", order, classes, [r for r, _ in labelled])
    T.row_labels = [".".join(map(str, lam)) for _, lam in labelled]
    return T
