"""Permutation-group engine.

Groups small enough for character-table work (by default at most 2e6
elements and 400 classes) are fully enumerated in stabilizer-chain order;
subgroups are then boolean masks over that enumeration and every product
is identified by sifting through the chain (see :mod:`charinv.kernels`).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import factorial, gcd, lcm
from pathlib import Path

import numpy as np

from . import kernels
from .cyclo import prime_factors
from .gf import GF, prime_power
from .perm import Permutation, StabChain, read_permutation_file

DEFAULT_MAX_ORDER = 2_000_000
DEFAULT_MAX_CLASSES = 400
MAX_DEGREE = 512
MAX_FIELD = 16


class BudgetExceeded(RuntimeError):
    """A computation would exceed the configured size budget."""


@dataclass(frozen=True)
class ConjClassData:
    representative: Permutation | None
    size: int
    centralizer_order: int
    element_order: int
    power_map: dict[int, int] = field(default_factory=dict)


@dataclass
class SubgroupResult:
    generators: list[Permutation]
    order: int
    tag: str
    mask: np.ndarray | None = field(default=None, repr=False, compare=False)


def p_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n`` (``n != 0``)."""
    n = abs(n)
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def p_prime_part(n: int, p: int) -> int:
    return abs(n) // p_part(n, p)


class PermGroup:
    """A finite group generated by permutations of ``0..degree-1``."""

    def __init__(self, generators, degree: int | None = None, name: str | None = None,
                 factors: tuple["PermGroup", "PermGroup"] | None = None,
                 max_order: int = DEFAULT_MAX_ORDER, max_classes: int = DEFAULT_MAX_CLASSES):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if not gens:
            if degree is None:
                raise ValueError("need at least one generator or an explicit degree")
            gens = [Permutation.identity(degree)]
        if degree is None:
            degree = gens[0].degree
        bad = [g for g in gens if g.degree != degree]
        if bad:
            raise ValueError(f"degree mismatch: expected {degree}, got {bad[0].degree}")
        self.generators = tuple(gens)
        self.degree = degree
        self.name = name or "group"
        self.factors = factors
        self.max_order = max_order
        self.max_classes = max_classes
        self._chain: StabChain | None = None
        self._arrays = None
        self._elements = None
        self._labels = None
        self._classes = None
        self._inv = None

    def __repr__(self):
        return f"PermGroup({self.name}, degree={self.degree})"

    # -- chain-level data (any size) -----------------------------------
    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = StabChain(list(self.generators), self.degree)
        return self._chain

    @property
    def order(self) -> int:
        return self.chain.order()

    def contains(self, g: Permutation) -> bool:
        return self.chain.contains(g)

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(a * b == b * a for i, a in enumerate(gs) for b in gs[i + 1:])

    # -- enumerated data (budgeted) ------------------------------------
    def _check_budget(self) -> None:
        if self.order > self.max_order:
            raise BudgetExceeded(f"|G| = {self.order} exceeds the element budget {self.max_order}")

    @property
    def arrays(self):
        if self._arrays is None:
            self._arrays = self.chain.arrays()
        return self._arrays

    @property
    def elements(self) -> np.ndarray:
        if self._elements is None:
            self._check_budget()
            self._elements = self.arrays.enumerate()
        return self._elements

    def index_of(self, rows) -> np.ndarray:
        a = self.arrays
        rows = np.asarray(rows, dtype=np.int64)
        if rows.ndim == 1:
            rows = rows[None, :]
        return kernels.sift_indices(a.base, a.pos, a.tinv_pad, a.strides, rows)

    def element(self, i: int) -> Permutation:
        return Permutation._trusted(tuple(int(x) for x in self.elements[i]))

    def mul_idx(self, I, J) -> np.ndarray:
        """Indices of ``e_I * e_J`` (broadcast)."""
        E = self.elements
        I, J = np.broadcast_arrays(np.asarray(I), np.asarray(J))
        A = E[I.ravel()]
        B = E[J.ravel()]
        return self.index_of(np.take_along_axis(B, A, axis=1)).reshape(I.shape)

    @property
    def inverse_idx(self) -> np.ndarray:
        if self._inv is None:
            self._inv = self.index_of(np.argsort(self.elements, axis=1))
        return self._inv

    def conj_map(self, s: Permutation) -> np.ndarray:
        """``i -> index(s^-1 e_i s)`` for every element."""
        sa = np.array(s.images, dtype=np.int64)
        sinv = np.argsort(sa)
        return self.index_of(sa[self.elements[:, sinv]])

    def power_idx(self, k: int) -> np.ndarray:
        """Index of ``e_i^k`` for all ``i``."""
        E = self.elements
        n, d = E.shape
        out = np.broadcast_to(np.arange(d, dtype=np.int64), (n, d)).copy()
        base = E.copy()
        k = int(k)
        while k:
            if k & 1:
                out = np.take_along_axis(base, out, axis=1)
            base = np.take_along_axis(base, base, axis=1)
            k >>= 1
        return self.index_of(out)

    def element_orders(self) -> np.ndarray:
        cls = self.classes()
        orders = np.array([c.element_order for c in cls], dtype=np.int64)
        return orders[self.class_labels]

    # -- conjugacy classes ---------------------------------------------
    @property
    def class_labels(self) -> np.ndarray:
        if self._labels is None:
            self._compute_classes()
        return self._labels

    def classes(self) -> list[ConjClassData]:
        if self._classes is None:
            self._compute_classes()
        return self._classes

    def _compute_classes(self) -> None:
        E = self.elements
        maps = np.stack([self.conj_map(s) for s in self.generators])
        raw = kernels.orbit_labels(maps)
        nraw = int(raw.max()) + 1
        if nraw > self.max_classes:
            raise BudgetExceeded(f"{nraw} classes exceed the class budget {self.max_classes}")
        sizes = np.bincount(raw, minlength=nraw)
        # lexicographically minimal representative of each class
        lex = np.lexsort(E.T[::-1])
        _, first = np.unique(raw[lex], return_index=True)
        reps = lex[first]  # indexed by raw label
        rep_perms = [Permutation._trusted(tuple(int(x) for x in E[r])) for r in reps]
        orders = [p.order() for p in rep_perms]
        ident = int(raw[self.index_of(np.arange(self.degree))[0]])

        def key(c):
            return (c != ident, orders[c], int(sizes[c]), rep_perms[c].images)

        perm = sorted(range(nraw), key=key)
        new_of_raw = np.empty(nraw, dtype=np.int64)
        new_of_raw[perm] = np.arange(nraw)
        self._labels = new_of_raw[raw]
        G = self.order
        primes = prime_factors(G) if G > 1 else []
        rep_idx = reps[perm]
        pmaps = {q: self._labels[self.power_idx(q)[rep_idx]] for q in primes}
        self._classes = [
            ConjClassData(
                representative=rep_perms[c],
                size=int(sizes[c]),
                centralizer_order=G // int(sizes[c]),
                element_order=orders[c],
                power_map={q: int(pmaps[q][i]) for q in primes},
            )
            for i, c in enumerate(perm)
        ]
        self._rep_idx = rep_idx

    @property
    def rep_indices(self) -> np.ndarray:
        self.classes()
        return self._rep_idx

    def class_index(self, g: Permutation) -> int:
        i = int(self.index_of(np.array(g.images))[0])
        if i < 0:
            raise ValueError(f"{g} is not an element of {self.name}")
        return int(self.class_labels[i])

    def power_class(self, c: int, s: int) -> int:
        """Class of ``rep_c ** s``."""
        rep = self.classes()[c].representative
        return self.class_index(rep**s)

    def exponent(self) -> int:
        return lcm(*(c.element_order for c in self.classes()))

    # -- subgroup machinery over masks ---------------------------------
    def closure(self, gen_idx, limit: int | None = None) -> np.ndarray:
        """Mask of the subgroup generated by the given element indices."""
        n = len(self.elements)
        ident = int(self.index_of(np.arange(self.degree))[0])
        mask = np.zeros(n, dtype=bool)
        mask[ident] = True
        gens = np.unique(np.asarray(list(gen_idx), dtype=np.int64))
        if gens.size == 0:
            return mask
        frontier = np.array([ident], dtype=np.int64)
        count = 1
        while frontier.size:
            prod = self.mul_idx(frontier[:, None], gens[None, :]).ravel()
            prod = np.unique(prod)
            new = prod[~mask[prod]]
            mask[new] = True
            count += new.size
            if limit is not None and count > limit:
                return mask
            frontier = new
        return mask

    def generators_of(self, mask: np.ndarray) -> list[int]:
        """A small generating set (element indices) for a subgroup mask."""
        members = np.flatnonzero(mask)
        target = members.size
        gens: list[int] = []
        H = self.closure([])
        for i in members:
            if H.sum() == target:
                break
            if not H[i]:
                gens.append(int(i))
                H = self.closure(gens)
        return gens

    def normal_closure(self, gen_idx, abort_if=None) -> np.ndarray | None:
        gens = list(dict.fromkeys(int(i) for i in gen_idx))
        cmaps = self._gen_conj_maps()
        while True:
            H = self.closure(gens)
            if abort_if is not None and abort_if(int(H.sum())):
                return None
            extra = []
            for cm in cmaps:
                imgs = cm[np.asarray(gens, dtype=np.int64)]
                extra += [int(x) for x in imgs if not H[x]]
            if not extra:
                return H
            gens += list(dict.fromkeys(extra))[:1]

    def _gen_conj_maps(self):
        if not hasattr(self, "_cmaps"):
            self._cmaps = [self.conj_map(s) for s in self.generators]
        return self._cmaps

    def is_normal(self, mask: np.ndarray) -> bool:
        gens = self.generators_of(mask)
        return all(mask[cm[gens]].all() for cm in self._gen_conj_maps()) if gens else True

    def centralizer_mask(self, i: int, within: np.ndarray | None = None) -> np.ndarray:
        E = self.elements
        g = E[i]
        # x commutes with g  <=>  g[x] == x[g]  (right action composition)
        comm = (E[:, g] == g[E]).all(axis=1)
        return comm if within is None else comm & within

    def subgroup(self, mask: np.ndarray, name: str | None = None) -> "PermGroup":
        gens = [self.element(i) for i in self.generators_of(mask)]
        return PermGroup(gens or [Permutation.identity(self.degree)], self.degree,
                         name=name or f"sub({self.name})",
                         max_order=self.max_order, max_classes=self.max_classes)


# -- public operations ----------------------------------------------------


def group_from_generators(gens, name: str | None = None) -> PermGroup:
    gens = list(gens)
    if not gens:
        raise ValueError("generator list is empty")
    gens = [g if isinstance(g, Permutation) else Permutation(g) for g in gens]
    return PermGroup(gens, name=name)


def conjugacy_classes(G: PermGroup) -> list[ConjClassData]:
    return G.classes()


def centralizer_order(G: PermGroup, g: Permutation) -> int:
    if not G.contains(g):
        raise ValueError(f"{g} is not an element of {G.name}")
    if g.is_identity():
        return G.order
    return G.classes()[G.class_index(g)].centralizer_order


def center_mask(G: PermGroup) -> np.ndarray:
    sizes = np.array([c.size for c in G.classes()])
    return sizes[G.class_labels] == 1


def _result(G: PermGroup, mask: np.ndarray, tag: str) -> SubgroupResult:
    gens = [G.element(i) for i in G.generators_of(mask)]
    return SubgroupResult(gens, int(mask.sum()), tag, mask)


def derived_mask(G: PermGroup) -> np.ndarray:
    gens = G.generators
    comms = []
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            c = ~a * ~b * a * b
            if not c.is_identity():
                comms.append(c)
    if not comms:
        return G.closure([])
    idx = G.index_of(np.array([c.images for c in comms]))
    return G.normal_closure(idx)


def o_p_prime_mask(G: PermGroup, p: int) -> np.ndarray:
    """Largest normal p'-subgroup: the classes whose normal closure is a p'-group."""
    cls = G.classes()
    reps = G.rep_indices
    keep = np.zeros(len(cls), dtype=bool)
    keep[0] = True
    limit = p_prime_part(G.order, p)
    for c, data in enumerate(cls):
        if c == 0 or data.element_order % p == 0:
            continue
        if data.size > limit:
            continue
        H = G.normal_closure([reps[c]], abort_if=lambda n: n % p == 0)
        if H is not None:
            keep[c] = True
    return keep[G.class_labels]


def sylow_mask(G: PermGroup, p: int) -> np.ndarray:
    target = p_part(G.order, p)
    orders = G.element_orders()
    pel = np.flatnonzero(orders == np.array([p_part(int(o), p) for o in orders]))
    pth = G.power_idx(p)
    gens: list[int] = []
    H = G.closure([])
    size = 1
    while size < target:
        cand = pel[~H[pel]]
        cand = cand[H[pth[cand]]]
        if gens:
            for h in gens:
                # x^-1 h x for every candidate x
                xi = G.inverse_idx[cand]
                conj = G.mul_idx(G.mul_idx(xi, h), cand)
                cand = cand[H[conj]]
        if cand.size == 0:
            raise AssertionError("Sylow growth stalled")
        gens.append(int(cand[0]))
        H = G.closure(gens)
        size = int(H.sum())
    return H


def normalizer_mask(G: PermGroup, mask: np.ndarray) -> np.ndarray:
    gens = G.generators_of(mask)
    n = len(G.elements)
    allx = np.arange(n, dtype=np.int64)
    ok = np.ones(n, dtype=bool)
    for h in gens:
        conj = G.mul_idx(G.mul_idx(G.inverse_idx, h), allx)
        ok &= mask[conj]
    return ok


def characteristic_subgroups(G: PermGroup, which: str, p: int | None = None) -> SubgroupResult:
    if which == "center":
        return _result(G, center_mask(G), "center")
    if which == "derived":
        return _result(G, derived_mask(G), "derived")
    if p is None or p < 2 or len(prime_factors(p)) != 1 or prime_factors(p)[0] != p:
        raise ValueError(f"{which} needs a prime p")
    if which == "o_p_prime":
        return _result(G, o_p_prime_mask(G, p), f"o_p_prime({p})")
    if which == "sylow":
        return _result(G, sylow_mask(G, p), f"sylow({p})")
    if which == "sylow_normalizer":
        return _result(G, normalizer_mask(G, sylow_mask(G, p)), f"sylow_normalizer({p})")
    raise ValueError(f"unknown subgroup tag {which!r}")


def coset_action(G: PermGroup, N: SubgroupResult) -> PermGroup:
    """Action of ``G`` on the right cosets of the normal subgroup ``N``."""
    mask = N.mask
    if mask is None:
        idx = G.index_of(np.array([g.images for g in N.generators]))
        if (idx < 0).any():
            raise ValueError("subgroup generators are not in G")
        mask = G.closure(idx)
    if not G.is_normal(mask):
        raise ValueError("subgroup is not normal")
    ngens = G.generators_of(mask)
    n = len(G.elements)
    allx = np.arange(n, dtype=np.int64)
    # right cosets N x are the orbits of left multiplication by N
    maps = np.stack([G.mul_idx(h, allx) for h in ngens]) if ngens else np.empty((0, n), np.int64)
    labels = kernels.orbit_labels(maps)
    k = int(labels.max()) + 1
    reps = np.full(k, -1, dtype=np.int64)
    seen = np.zeros(k, dtype=bool)
    for i in range(n):
        if not seen[labels[i]]:
            seen[labels[i]] = True
            reps[labels[i]] = i
            if seen.all():
                break
    gidx = G.index_of(np.array([g.images for g in G.generators]))
    images = []
    for s in gidx:
        images.append(Permutation(labels[G.mul_idx(reps, s)]))
    return PermGroup(images, k, name=f"{G.name}/N", max_order=G.max_order,
                     max_classes=G.max_classes)


def p_decompose(g, order: int, p: int):
    """``(g_p, g_p')`` with ``g = g_p g_p'`` via the CRT exponent pair."""
    a = p_part(order, p)
    m = order // a
    if a == 1:
        return g**0, g
    if m == 1:
        return g, g**0
    u = (m * pow(m, -1, a)) % order  # 1 mod a, 0 mod m
    v = (a * pow(a, -1, m)) % order  # 0 mod a, 1 mod m
    return g**u, g**v


# -- named families -------------------------------------------------------


def _cycle(pts, degree):
    return Permutation.from_cycles([list(pts)], degree)


def _symmetric(n: int) -> PermGroup:
    if n <= 1:
        return PermGroup([], 1, name="sym:1")
    gens = [_cycle([0, 1], n)]
    if n > 2:
        gens.append(_cycle(range(n), n))
    return PermGroup(gens, n, name=f"sym:{n}")


def _alternating(n: int) -> PermGroup:
    if n <= 2:
        return PermGroup([], max(n, 1), name=f"alt:{n}")
    gens = [_cycle([0, 1, i], n) for i in range(2, n)]
    return PermGroup(gens, n, name=f"alt:{n}")


def _cyclic(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], 1, name="cyclic:1")
    return PermGroup([_cycle(range(n), n)], n, name=f"cyclic:{n}")


def _dihedral(order: int) -> PermGroup:
    if order % 2 or order < 2:
        raise ValueError("dihedral order must be even and positive")
    n = order // 2
    name = f"dihedral:{order}"
    if n == 1:
        return PermGroup([_cycle([0, 1], 2)], 2, name=name)
    if n == 2:
        return PermGroup([_cycle([0, 1], 4), _cycle([2, 3], 4)], 4, name=name)
    rot = _cycle(range(n), n)
    refl = Permutation([(-i) % n for i in range(n)])
    return PermGroup([rot, refl], n, name=name)


def _dicyclic(order: int) -> PermGroup:
    """Dicyclic group of the given order (generalised quaternion for 2-powers)."""
    if order % 4 or order < 8:
        raise ValueError("quaternion order must be a multiple of 4 and at least 8")
    m = order // 4
    # element a^i b^j  <->  index 2*i + j, i mod 2m
    def idx(i, j):
        return 2 * (i % (2 * m)) + j

    def right_mul(k, l):
        imgs = [0] * order
        for i in range(2 * m):
            for j in range(2):
                s = -1 if j else 1
                e = i + s * k
                jj = j + l
                if jj == 2:
                    e += m
                    jj = 0
                imgs[idx(i, j)] = idx(e, jj)
        return Permutation(imgs)

    return PermGroup([right_mul(1, 0), right_mul(0, 1)], order, name=f"quaternion:{order}")


def _matrix_group(kind: str, q: int) -> PermGroup:
    if q > MAX_FIELD:
        raise ValueError(f"q = {q} is above the supported bound {MAX_FIELD}")
    F = GF(q)
    add, mul = F.add, F.mul
    basis = F.additive_basis()
    mats = []
    for t in basis:
        mats.append(((1, t), (0, 1)))
        mats.append(((1, 0), (t, 1)))
    if kind == "gl2":
        mats.append(((F.primitive, 0), (0, 1)))

    def act(v, M):
        (a, b), (c, d) = M
        return (add[mul[v[0]][a]][mul[v[1]][c]], add[mul[v[0]][b]][mul[v[1]][d]])

    if kind in ("sl2", "gl2"):
        points = [(x, y) for x in range(q) for y in range(q) if (x, y) != (0, 0)]
    else:
        points = [(1, y) for y in range(q)] + [(0, 1)]

    def normal(v):
        if kind != "psl2":
            return v
        s = v[0] if v[0] else v[1]
        si = F.inv[s]
        return (mul[v[0]][si], mul[v[1]][si])

    where = {v: i for i, v in enumerate(points)}
    gens = [Permutation([where[normal(act(v, M))] for v in points]) for M in mats]
    G = PermGroup(gens, len(points), name=f"{kind}:{q}")
    expected = {
        "gl2": (q * q - 1) * (q * q - q),
        "sl2": q * (q * q - 1),
        "psl2": q * (q * q - 1) // gcd(2, q - 1),
    }[kind]
    if G.order != expected:
        raise AssertionError(f"{kind}:{q} generated a group of order {G.order}, expected {expected}")
    return G


def direct_product(A: PermGroup, B: PermGroup) -> PermGroup:
    d = A.degree + B.degree
    gens = [Permutation(g.images + tuple(range(A.degree, d))) for g in A.generators]
    gens += [Permutation(tuple(range(A.degree)) + tuple(x + A.degree for x in g.images))
             for g in B.generators]
    return PermGroup(gens, d, name=f"product:{A.name}+{B.name}", factors=(A, B),
                     max_order=A.max_order, max_classes=A.max_classes)


_SIMPLE = re.compile(r"^(sym|alt|dihedral|cyclic|quaternion|sl2|gl2|psl2):(\d+)$")


def construct_named(spec: str) -> PermGroup:
    """Build a group from a descriptor such as ``sym:4`` or ``product:sym:3+cyclic:2``."""
    spec = spec.strip()
    if spec.startswith("product:"):
        parts = [s for s in spec[len("product:"):].split("+")]
        if len(parts) < 2 or not all(parts):
            raise ValueError(f"malformed product descriptor {spec!r}")
        G = construct_named(parts[0])
        for part in parts[1:]:
            G = direct_product(G, construct_named(part))
        return G
    if spec.startswith("perm:"):
        path = spec[len("perm:"):]
        return PermGroup(read_permutation_file(path), name=f"perm:{Path(path).name}")
    m = _SIMPLE.match(spec)
    if not m:
        raise ValueError(f"unknown group descriptor {spec!r}")
    fam, n = m.group(1), int(m.group(2))
    if fam in ("sl2", "gl2", "psl2"):
        if prime_power(n) is None:
            raise ValueError(f"q = {n} is not a prime power")
        return _matrix_group(fam, n)
    if n < 1:
        raise ValueError(f"parameter must be positive in {spec!r}")
    if n > MAX_DEGREE:
        raise ValueError(f"parameter {n} is above the supported bound {MAX_DEGREE}")
    if fam == "sym":
        return _symmetric(n)
    if fam == "alt":
        return _alternating(n)
    if fam == "cyclic":
        return _cyclic(n)
    if fam == "dihedral":
        return _dihedral(n)
    return _dicyclic(n)


def family_order(spec: str) -> int:
    """Order predicted for a simple descriptor, for cross-checks."""
    fam, n = spec.split(":")
    n = int(n)
    return {
        "sym": lambda: factorial(n),
        "alt": lambda: max(1, factorial(n) // 2),
        "cyclic": lambda: n,
        "dihedral": lambda: n,
        "quaternion": lambda: n,
        "sl2": lambda: n * (n * n - 1),
        "gl2": lambda: (n * n - 1) * (n * n - n),
        "psl2": lambda: n * (n * n - 1) // gcd(2, n - 1),
    }[fam]()
