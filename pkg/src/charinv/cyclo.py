"""Exact arithmetic in cyclotomic fields.

A :class:`Cyc` is stored at its minimal conductor ``N`` as a coefficient
vector in the power basis ``1, z, ..., z^(phi(N)-1)`` of ``Q[x]/Phi_N(x)``.
The power basis is an integral basis of ``Z[zeta_N]``, so integrality of an
element is integrality of its coordinates.  Conductors congruent to 2 mod 4
never occur (``Q(zeta_2m) = Q(zeta_m)`` for odd ``m``).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

__all__ = [
    "Cyc",
    "cyc_arith",
    "cyc_galois",
    "cyc_rational",
    "cyc_is_integral",
    "euler_phi",
    "prime_factors",
]


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    r = n
    for p in prime_factors(n):
        r -= r // p
    return r


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _num(x):
    # keep integral coefficients as plain ints, which is much faster
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    # x^n - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_exact_div(num, cyclotomic_poly(d))
    return tuple(num)


def _poly_exact_div(a: list[int], b: tuple[int, ...]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]  # b is monic
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    assert not any(a[:db]), "inexact polynomial division"
    return q


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Sparse reduction of x^j mod Phi_n for 0 <= j < n."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple((i, c) for i, c in enumerate(cur) if c))
        # multiply by x and reduce the overflowing term
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


def _reduce_terms(n: int, terms: dict[int, object]) -> list:
    """Power-basis vector at conductor ``n`` of ``sum c * zeta_n^e``."""
    table = _power_table(n)
    out = [0] * euler_phi(n)
    for e, c in terms.items():
        if c:
            for i, r in table[e % n]:
                out[i] += c * r
    return out


def _gal_generators(n: int, p: int) -> list[int]:
    """Generators of the subgroup of (Z/n)^* fixing Q(zeta_{n/p})."""
    m = n // p
    if m % p == 0:
        return [1 + m]
    if p == 2:
        return []
    g = _primitive_root(p)
    # CRT: k = 1 mod m, k = g mod p
    k = (1 + m * ((g - 1) * pow(m, -1, p))) % n
    return [k]


@lru_cache(maxsize=None)
def _primitive_root(p: int) -> int:
    fs = prime_factors(p - 1)
    for g in range(2, p + 1):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fs):
            return g
    return 1  # p == 2


def _galois_vec(n: int, vec, k: int) -> list:
    return _reduce_terms(n, {(i * k) % n: c for i, c in enumerate(vec) if c})


@lru_cache(maxsize=None)
def _restrictor(m: int, n: int):
    """Left inverse of the embedding Q(zeta_m) -> Q(zeta_n), restricted to rows."""
    table = _power_table(n)
    fm, fn = euler_phi(m), euler_phi(n)
    step = n // m
    cols = []
    for j in range(fm):
        v = [0] * fn
        for i, r in table[(j * step) % n]:
            v[i] = r
        cols.append(v)
    # rows of the fn x fm embedding matrix; choose fm independent ones
    mat = [[Fraction(cols[j][i]) for j in range(fm)] for i in range(fn)]
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    for i, row in enumerate(mat):
        r = list(row)
        for b, pc in zip(basis, pivots):
            if r[pc]:
                f = r[pc] / b[pc]
                r = [x - f * y for x, y in zip(r, b)]
        nz = next((c for c, x in enumerate(r) if x), None)
        if nz is not None:
            basis.append(r)
            pivots.append(nz)
            chosen.append(i)
            if len(chosen) == fm:
                break
    sub = [mat[i] for i in chosen]
    inv = _invert(sub)
    return tuple(chosen), inv


def _invert(a: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    m = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    for c in range(n):
        piv = next(r for r in range(c, n) if m[r][c])
        m[c], m[piv] = m[piv], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [r[n:] for r in m]


def _canonical(n: int, vec: list) -> tuple[int, tuple]:
    """Reduce ``vec`` (power basis at conductor n) to minimal conductor."""
    vec = [_num(c) for c in vec]
    if not any(vec[1:]):
        return 1, (vec[0] if vec else 0,)
    changed = True
    while changed and n > 1:
        changed = False
        for p in prime_factors(n):
            ks = _gal_generators(n, p)
            if all(_galois_vec(n, vec, k) == vec for k in ks):
                m = n // p
                if m % 4 == 2:
                    m //= 2
                rows, inv = _restrictor(m, n)
                sel = [vec[i] for i in rows]
                vec = [_num(sum((a * b for a, b in zip(r, sel)), Fraction(0))) for r in inv]
                n = m
                changed = True
                break
    if n == 1:
        return 1, (vec[0],)
    return n, tuple(vec)


class Cyc:
    """An exact element of a cyclotomic field."""

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Cyc):
            self.conductor, self.coeffs = value.conductor, value.coeffs
        elif isinstance(value, Rational):
            self.conductor, self.coeffs = 1, (_num(Fraction(value)),)
        else:
            raise TypeError(f"cannot build a cyclotomic number from {value!r}")
        self._hash = None

    @classmethod
    def _raw(cls, n: int, coeffs: tuple) -> "Cyc":
        obj = cls.__new__(cls)
        obj.conductor = n
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def from_vector(cls, n: int, vec) -> "Cyc":
        if len(vec) != euler_phi(n):
            raise ValueError("vector length must equal phi(conductor)")
        return cls._raw(*_canonical(n, list(vec)))

    @classmethod
    def from_terms(cls, n: int, terms) -> "Cyc":
        """Build ``sum c * zeta_n^e`` from a mapping or pair list ``e -> c``."""
        if n < 1:
            raise ValueError("conductor must be positive")
        if not isinstance(terms, dict):
            acc: dict[int, object] = {}
            for e, c in terms:
                acc[e % n] = acc.get(e % n, 0) + c
            terms = acc
        return cls._raw(*_canonical(n, _reduce_terms(n, terms)))

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyc":
        return cls.from_terms(n, {k % n: 1})

    # -- basic queries -------------------------------------------------
    def is_rational(self) -> bool:
        return self.conductor == 1

    def to_rational(self) -> Fraction:
        if self.conductor != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs[0])

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.coeffs)

    def is_zero(self) -> bool:
        return self.conductor == 1 and self.coeffs[0] == 0

    def terms(self) -> list[tuple[int, Fraction]]:
        """Nonzero power-basis terms ``(exponent, coefficient)``."""
        return [(i, Fraction(c)) for i, c in enumerate(self.coeffs) if c]

    def exponent_terms(self, n: int) -> dict[int, object]:
        """Terms of ``self`` written over ``zeta_n``; ``n`` must be a multiple of the conductor."""
        if n % self.conductor:
            raise ValueError("target conductor must be a multiple")
        step = n // self.conductor
        return {i * step: c for i, c in enumerate(self.coeffs) if c}

    def coordinates(self, n: int) -> list:
        """Power-basis coordinates over ``Q(zeta_n)``, an integral basis of ``Z[zeta_n]``."""
        return _reduce_terms(n, self.exponent_terms(n))

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "Cyc":
        if isinstance(other, Cyc):
            return other
        if isinstance(other, Rational):
            return Cyc(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.conductor == 1 and other.conductor == 1:
            return Cyc._raw(1, (_num(self.coeffs[0] + other.coeffs[0]),))
        if self.conductor == other.conductor:
            return Cyc.from_vector(self.conductor, [a + b for a, b in zip(self.coeffs, other.coeffs)])
        n = _lcm(self.conductor, other.conductor)
        t = self.exponent_terms(n)
        for e, c in other.exponent_terms(n).items():
            t[e] = t.get(e, 0) + c
        return Cyc.from_terms(n, t)

    __radd__ = __add__

    def __neg__(self):
        return Cyc._raw(self.conductor, tuple(-c for c in self.coeffs))

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.conductor == 1:
            r = other.coeffs[0]
            if r == 0:
                return Cyc._raw(1, (0,))
            return Cyc._raw(self.conductor, tuple(_num(c * r) for c in self.coeffs))
        if self.conductor == 1:
            return other * self
        n = _lcm(self.conductor, other.conductor)
        a = self.exponent_terms(n)
        b = other.exponent_terms(n)
        acc: dict[int, object] = {}
        for i, x in a.items():
            for j, y in b.items():
                k = (i + j) % n
                acc[k] = acc.get(k, 0) + x * y
        return Cyc.from_terms(n, acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = Cyc(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self, k: int) -> "Cyc":
        """Image under ``zeta -> zeta^k``."""
        n = self.conductor
        if gcd(k, n) != 1:
            raise ValueError(f"exponent {k} is not coprime to the conductor {n}")
        if n == 1:
            return self
        return Cyc._raw(n, tuple(_num(c) for c in _galois_vec(n, self.coeffs, k % n)))

    def conjugate(self) -> "Cyc":
        return self.galois(-1)

    def norm(self) -> Fraction:
        """Field norm from ``Q(zeta_N)`` down to ``Q`` at the current conductor."""
        out = Cyc(1)
        n = self.conductor
        for k in range(1, n + 1):
            if gcd(k, n) == 1:
                out = out * self.galois(k)
        return out.to_rational()

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic zero has no inverse")
        n = self.conductor
        if n == 1:
            return Cyc._raw(1, (_num(1 / Fraction(self.coeffs[0])),))
        prod = Cyc(1)
        for k in range(2, n + 1):
            if gcd(k, n) == 1:
                prod = prod * self.galois(k)
        nm = (prod * self).to_rational()
        return prod * (1 / nm)

    # -- comparisons and hashing ---------------------------------------
    def __eq__(self, other):
        if isinstance(other, Cyc):
            return self.conductor == other.conductor and self.coeffs == other.coeffs
        if isinstance(other, Rational):
            return self.conductor == 1 and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.conductor == 1:
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.conductor, self.coeffs))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def sort_key(self):
        """Canonical total order: rationals first, larger values first."""
        return (self.conductor, tuple(-Fraction(c) for c in self.coeffs))

    def to_complex(self) -> complex:
        """Floating-point approximation, for display only."""
        import cmath

        z = cmath.exp(2j * cmath.pi / self.conductor)
        return sum(float(c) * z**i for i, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"Cyc({self})"

    def __str__(self):
        if self.conductor == 1:
            return str(self.coeffs[0])
        parts = []
        for i, c in self.terms():
            mon = "1" if i == 0 else (f"z{self.conductor}" if i == 1 else f"z{self.conductor}^{i}")
            if i == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{c}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- serialization -------------------------------------------------
    def to_json(self) -> dict:
        terms = [[i, c.numerator, c.denominator] for i, c in self.terms()]
        return {"conductor": self.conductor, "terms": terms}

    @classmethod
    def from_json(cls, obj) -> "Cyc":
        if isinstance(obj, int):
            return cls(obj)
        try:
            n = int(obj["conductor"])
            terms = [(int(e), Fraction(int(a), int(b))) for e, a, b in obj["terms"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed cyclotomic value {obj!r}") from exc
        if n < 1:
            raise ValueError(f"malformed cyclotomic value {obj!r}: conductor must be positive")
        return cls.from_terms(n, terms)


def cyc_arith(a: Cyc, b: Cyc, op: str) -> Cyc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def cyc_galois(a: Cyc, k: int) -> Cyc:
    return a.galois(k)


def cyc_rational(a: Cyc) -> Fraction | None:
    """The rational value of ``a``, or ``None`` if it is irrational."""
    return a.to_rational() if a.is_rational() else None


def cyc_is_integral(a: Cyc) -> bool:
    return a.is_integral()
