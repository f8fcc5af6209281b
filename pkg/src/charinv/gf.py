"""Tiny finite fields GF(q), q = p^k, with table arithmetic.

Elements are the integers ``0..q-1``; the base-p digits of an element are
the coefficients of its residue polynomial (lowest digit = constant term).
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

from .cyclo import prime_factors


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, k)`` with ``q == p**k``, or ``None``."""
    if q < 2:
        return None
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p, k = fs[0], 0
    while q > 1:
        q //= p
        k += 1
    return p, k


class GF:
    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        self.q = q
        self.p, self.k = pk
        self.modulus = _irreducible(self.p, self.k)
        self._build_tables()

    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _from_digits(self, ds) -> int:
        x = 0
        for d in reversed(ds):
            x = x * self.p + d
        return x

    def _build_tables(self) -> None:
        q, p, k = self.q, self.p, self.k
        digits = [self._digits(x) for x in range(q)]
        self.add = [[self._from_digits([(a + b) % p for a, b in zip(digits[x], digits[y])])
                     for y in range(q)] for x in range(q)]
        self.neg = [self._from_digits([(-a) % p for a in digits[x]]) for x in range(q)]
        mul = [[0] * q for _ in range(q)]
        for x in range(q):
            for y in range(q):
                prod = [0] * (2 * k - 1)
                for i, a in enumerate(digits[x]):
                    if a:
                        for j, b in enumerate(digits[y]):
                            prod[i + j] = (prod[i + j] + a * b) % p
                # reduce with the monic modulus
                for t in range(2 * k - 2, k - 1, -1):
                    c = prod[t]
                    if c:
                        for i in range(k + 1):
                            prod[t - k + i] = (prod[t - k + i] - c * self.modulus[i]) % p
                mul[x][y] = self._from_digits(prod[:k])
        self.mul = mul
        self.inv = [0] * q
        for x in range(1, q):
            self.inv[x] = next(y for y in range(1, q) if mul[x][y] == 1)
        self.primitive = next(g for g in range(2 if q > 2 else 1, q) if self._order(g) == q - 1)

    def _order(self, x: int) -> int:
        r, y = 1, x
        while y != 1:
            y = self.mul[y][x]
            r += 1
        return r

    def additive_basis(self) -> list[int]:
        """``1, x, ..., x^(k-1)`` as field elements."""
        return [self.p**i for i in range(self.k)]


@lru_cache(maxsize=None)
def _irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree k (low coefficients first)."""
    if k == 1:
        return (0, 1)
    for coeffs in product(range(p), repeat=k):
        poly = list(coeffs) + [1]
        if poly[0] == 0:
            continue
        if not any(_has_factor(poly, d, p) for d in range(1, k // 2 + 1)):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")


def _has_factor(poly, d, p) -> bool:
    for coeffs in product(range(p), repeat=d):
        f = list(coeffs) + [1]
        if _polymod(poly, f, p) == [0] * d:
            return True
    return False


def _polymod(a, b, p):
    a = list(a)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return [x % p for x in a[:db]]
