"""Permutations and deterministic Schreier-Sims stabilizer chains.

Permutations act on the right: ``p * q`` applies ``p`` first, then ``q``,
so ``(p * q).images[x] == q.images[p.images[x]]``.
"""
from __future__ import annotations

import re
from math import lcm
from pathlib import Path

import numpy as np


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection on 0..{len(images) - 1}: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        p = cls.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles, degree: int) -> "Permutation":
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for x in cyc:
                if not 0 <= x < degree or x in seen:
                    raise ValueError(f"bad cycle {cyc} for degree {degree}")
                seen.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        a = self.images
        b = other.images
        return Permutation._trusted(tuple([b[x] for x in a]))

    def __invert__(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation._trusted(tuple(inv))

    inverse = __invert__

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return (~self) ** (-k)
        out = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return self._hash

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if self.images else 1

    def conj(self, g: "Permutation") -> "Permutation":
        """``g^-1 * self * g``."""
        return ~g * self * g

    def __repr__(self):
        return f"Permutation({self})"

    def __str__(self):
        cs = [c for c in self.cycles() if len(c) > 1]
        if not cs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)


# -- text format ---------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None, one_based: bool = True) -> Permutation:
    """Parse ``(1,2,3)(4,5)``; commas or whitespace separate points."""
    text = text.strip()
    rest = _CYCLE_RE.sub("", text).strip()
    if rest:
        raise ValueError(f"unparsable permutation text {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        pts = [int(t) for t in re.split(r"[,\s]+", body.strip()) if t]
        if one_based:
            if any(p < 1 for p in pts):
                raise ValueError(f"points must be >= 1 in {text!r}")
            pts = [p - 1 for p in pts]
        cycles.append(pts)
    need = 1 + max((p for c in cycles for p in c), default=-1)
    degree = need if degree is None else degree
    return Permutation.from_cycles(cycles, degree)


def read_permutation_file(path) -> list[Permutation]:
    """One generator per line, 1-based cycles; ``#`` comments and blank lines ignored."""
    lines = []
    for ln, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((ln, line))
    if not lines:
        raise ValueError(f"{path}: no generators")
    parsed = []
    for ln, line in lines:
        try:
            parsed.append(parse_cycles(line))
        except ValueError as exc:
            raise ValueError(f"{path}:{ln}: {exc}") from None
    degree = max(p.degree for p in parsed)
    return [Permutation(p.images + tuple(range(p.degree, degree))) for p in parsed]


def format_cycles(p: Permutation) -> str:
    cs = [c for c in p.cycles() if len(c) > 1]
    if not cs:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cs)


# -- stabilizer chain ------------------------------------------------------


class StabChain:
    """Base and strong generating set built by deterministic Schreier-Sims.

    Base points are always the smallest point moved by the element that
    forces a new level, so the chain depends only on the generator list.
    """

    def __init__(self, generators: list[Permutation], degree: int):
        self.degree = degree
        self.base: list[int] = []
        self.gens: list[list[Permutation]] = []  # strong generators per level
        self.transversals: list[dict[int, Permutation]] = []
        self._build([g for g in generators if not g.is_identity()])

    # transversal[i][pt] = u with base[i]^u == pt
    def _orbit(self, i: int) -> dict[int, Permutation]:
        b = self.base[i]
        trans = {b: Permutation.identity(self.degree)}
        queue = [b]
        for pt in queue:
            u = trans[pt]
            for s in self.gens[i]:
                q = s.images[pt]
                if q not in trans:
                    trans[q] = u * s
                    queue.append(q)
        return trans

    def sift(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        for i in range(start, len(self.base)):
            pt = g.images[self.base[i]]
            u = self.transversals[i].get(pt)
            if u is None:
                return g, i
            g = g * ~u
        return g, len(self.base)

    def _new_level(self, h: Permutation) -> None:
        moved = next(x for x, y in enumerate(h.images) if x != y)
        self.base.append(moved)
        self.gens.append([])
        self.transversals.append({})

    def _build(self, generators: list[Permutation]) -> None:
        for g in generators:
            if all(g.images[b] == b for b in self.base):
                self._new_level(g)
        for g in generators:
            for i in range(len(self.base)):
                self.gens[i].append(g)
                if g.images[self.base[i]] != self.base[i]:
                    break
        for i in range(len(self.base)):
            self.transversals[i] = self._orbit(i)
        i = len(self.base) - 1
        while i >= 0:
            h, j = self._schreier_test(i)
            if h is None:
                i -= 1
                continue
            if j == len(self.base):
                self._new_level(h)
            for level in range(i + 1, j + 1):
                self.gens[level].append(h)
                self.transversals[level] = self._orbit(level)
            i = j

    def _schreier_test(self, i: int):
        """First Schreier generator at level ``i`` that fails to sift."""
        trans = self.transversals[i]
        for pt in sorted(trans):
            u = trans[pt]
            for s in self.gens[i]:
                us = u * s
                v = trans[us.images[self.base[i]]]
                sg = us * ~v
                if sg.is_identity():
                    continue
                h, j = self.sift(sg, i + 1)
                if j < len(self.base) or not h.is_identity():
                    return h, j
        return None, None

    def order(self) -> int:
        out = 1
        for t in self.transversals:
            out *= len(t)
        return out

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        h, j = self.sift(g)
        return j == len(self.base) and h.is_identity()

    def arrays(self) -> "ChainArrays":
        return ChainArrays.from_chain(self)


class ChainArrays:
    """Dense numpy form of a stabilizer chain, consumed by the kernels.

    Element ``idx = sum(u_i * stride_i)`` is ``t_{m-1}[u_{m-1}] * ... * t_0[u_0]``
    where ``t_i[u]`` is the ``u``-th transversal element (orbit points sorted).
    """

    def __init__(self, base, pos, trans, tinv, lengths, degree):
        self.base = base          # (m,) int64
        self.pos = pos            # (m, degree) int64, -1 outside the orbit
        self.trans = trans        # list of (len_i, degree) int64
        self.tinv = tinv          # list of (len_i, degree) int64
        self.lengths = lengths    # (m,) int64
        self.degree = degree
        strides = np.ones(len(lengths), dtype=np.int64)
        for i in range(1, len(lengths)):
            strides[i] = strides[i - 1] * lengths[i - 1]
        self.strides = strides
        self.order = int(np.prod(lengths, dtype=object)) if len(lengths) else 1
        # padded 3-d copy of the inverse transversals for the compiled kernel
        width = int(max(lengths)) if len(lengths) else 1
        pad = np.zeros((len(lengths), width, degree), dtype=np.int64)
        for i, t in enumerate(tinv):
            pad[i, : len(t)] = t
        self.tinv_pad = pad

    @classmethod
    def from_chain(cls, chain: StabChain) -> "ChainArrays":
        d = chain.degree
        m = len(chain.base)
        pos = -np.ones((m, d), dtype=np.int64)
        trans, tinv, lengths = [], [], []
        for i, tr in enumerate(chain.transversals):
            pts = sorted(tr)
            for u, pt in enumerate(pts):
                pos[i, pt] = u
            trans.append(np.array([tr[pt].images for pt in pts], dtype=np.int64).reshape(len(pts), d))
            tinv.append(np.array([(~tr[pt]).images for pt in pts], dtype=np.int64).reshape(len(pts), d))
            lengths.append(len(pts))
        return cls(
            np.array(chain.base, dtype=np.int64), pos, trans, tinv,
            np.array(lengths, dtype=np.int64), d,
        )

    def enumerate(self) -> np.ndarray:
        """All group elements as rows, in index order."""
        E = np.arange(self.degree, dtype=np.int64)[None, :]
        for i in range(len(self.lengths) - 1, -1, -1):
            T = self.trans[i]
            # new[a, u, x] = T[u, E[a, x]]
            new = T[:, E]  # (len_i, |E|, d)
            E = new.transpose(1, 0, 2).reshape(-1, self.degree)
        return np.ascontiguousarray(E)
