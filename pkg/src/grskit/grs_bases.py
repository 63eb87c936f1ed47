"""Bases, positive systems, Cartan matrices and virtual reflections."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .exact_core import ZERO, Matrix, Vec, format_rat, format_vec, identity, inverse, mat_vec, transpose, vadd, vneg, vscale
from .grs_core import (
    Grs,
    indecomposables,
    lex_positive_vectors,
    primitive_generator,
    root_string,
)


class Base:
    """An ordered base of a Grs.

    Equality and hashing use the set of simple roots only.
    """

    __slots__ = ("grs", "simples", "_inv", "_coords", "_key")

    def __init__(self, grs: Grs, simples: Sequence[Vec], *, check: bool = True):
        self.grs = grs
        self.simples = tuple(tuple(s) for s in simples)
        n = grs.dim
        if len(self.simples) != n:
            raise ValueError("a base must have as many elements as the dimension")
        cols = transpose(self.simples) if n else ()
        if n and cols == identity(n):
            self._inv = None
        else:
            inv = inverse(cols) if n else ()
            if inv is None:
                raise ValueError("simples are not linearly independent")
            self._inv = inv
        self._coords: dict[Vec, Vec] = {}
        self._key = frozenset(self.simples)
        if check:
            for s in self.simples:
                if s not in grs.roots:
                    raise ValueError(f"{s} is not a root")
            for r in grs.roots:
                c = self.coords(r)
                if any(x.denominator != 1 for x in c):
                    raise ValueError(f"root {r} has non-integer coordinates")
                if any(x > 0 for x in c) and any(x < 0 for x in c):
                    raise ValueError(f"root {r} has mixed-sign coordinates")

    def coords(self, beta: Vec) -> Vec:
        """Coordinates of ``beta`` in this base."""
        c = self._coords.get(beta)
        if c is None:
            if len(beta) != self.grs.dim:
                raise ValueError("vector outside the ambient space")
            c = tuple(beta) if self._inv is None else mat_vec(self._inv, beta)
            self._coords[beta] = c
        return c

    def vector(self, coords: Sequence[Fraction]) -> Vec:
        """The vector with the given coordinates in this base."""
        out = [ZERO] * self.grs.dim
        for k, a in zip(coords, self.simples):
            if k:
                for i, x in enumerate(a):
                    if x:
                        out[i] += k * x
        return tuple(out)

    @property
    def key(self) -> tuple[Vec, ...]:
        return tuple(sorted(self._key, reverse=True))

    def sorted(self) -> "Base":
        b = Base(self.grs, self.key, check=False)
        return b

    def __eq__(self, other) -> bool:
        return isinstance(other, Base) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __len__(self) -> int:
        return len(self.simples)

    def __iter__(self) -> Iterator[Vec]:
        return iter(self.simples)

    def __repr__(self) -> str:
        return "Base(" + ", ".join(format_vec(s) for s in self.simples) + ")"

    def positives(self) -> frozenset[Vec]:
        return positive_from_base(self).positives

    def neg(self) -> "Base":
        return Base(self.grs, [vneg(s) for s in self.simples], check=False)


@dataclass(frozen=True)
class PositiveSystem:
    grs: Grs
    positives: frozenset

    def __contains__(self, v) -> bool:
        return v in self.positives

    def __len__(self) -> int:
        return len(self.positives)

    def is_valid(self) -> bool:
        """Check R = P u -P, P n -P = {0} and closure under addition in R."""
        r = self.grs.roots
        p = self.positives
        if not p <= r:
            return False
        neg = {vneg(v) for v in p}
        if p | neg != r or p & neg != {self.grs.zero}:
            return False
        for a in p:
            for b in p:
                s = vadd(a, b)
                if s in r and s not in p:
                    return False
        return True


@dataclass(frozen=True)
class CartanMatrix:
    entries: Matrix

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __len__(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list[str]]:
        return [[format_rat(x) for x in row] for row in self.entries]


@dataclass(frozen=True)
class VirtualReflection:
    grs: Grs
    axis: Vec
    mapping: dict

    def __call__(self, beta: Vec) -> Vec:
        return self.mapping[beta]


def positive_from_base(s: Base) -> PositiveSystem:
    pos = frozenset(r for r in s.grs.roots if all(x >= 0 for x in s.coords(r)))
    return PositiveSystem(s.grs, pos)


def lex_positive(g: Grs, ordering: Sequence[int] | None = None) -> PositiveSystem:
    """Roots that are lexicographically positive when coordinates are read in ``ordering``."""
    if ordering is not None and sorted(ordering) != list(range(g.dim)):
        raise ValueError("ordering must be a permutation of the coordinate indices")
    return PositiveSystem(g, frozenset(lex_positive_vectors(g.roots, ordering)))


def base_from_positive(p: PositiveSystem) -> Base:
    """Indecomposable elements of ``p`` in descending lexicographic order."""
    return Base(p.grs, indecomposables(p.positives), check=False)


def standard_base(g: Grs) -> Base:
    """The base of the lex-positive system in the given coordinate order."""
    b = g._cache.get("standard_base")
    if b is None:
        b = base_from_positive(lex_positive(g))
        g._cache["standard_base"] = b
    return b


def height(s: Base, beta: Vec) -> Fraction:
    return sum(s.coords(tuple(beta)), ZERO)


def cartan_matrix(s: Base) -> CartanMatrix:
    """Entries c_ij = 2<a_i, a_j> / <a_i, a_i> with rows indexed by the first root."""
    g = s.grs
    n2 = [g.inner(a, a) for a in s.simples]
    return CartanMatrix(
        tuple(tuple(2 * g.inner(a, b) / n2[i] for b in s.simples) for i, a in enumerate(s.simples))
    )


def _reflect(g: Grs, axis: Vec, beta: Vec) -> Vec:
    p, q = root_string(g, beta, axis)
    return vadd(beta, vscale(q - p, axis)) if p != q else beta


def virtual_reflection(g: Grs, alpha: Vec) -> VirtualReflection:
    """The string-reversing involution sigma_alpha (uses the primitive generator)."""
    axis = primitive_generator(g, alpha)
    return VirtualReflection(g, axis, {b: _reflect(g, axis, b) for b in g.roots})


def reflect_base(s: Base, alpha: Vec) -> Base:
    """sigma_alpha(S), keeping the positions of the simple roots."""
    alpha = tuple(alpha)
    if alpha not in s.simples:
        raise ValueError("alpha is not a simple root of s")
    g = s.grs
    axis = primitive_generator(g, alpha)
    return Base(g, [_reflect(g, axis, b) for b in s.simples], check=False)


@dataclass(frozen=True)
class BaseGraph:
    """All bases of a Grs and the reflection edges between them.

    ``edges`` holds (i, j, alpha): reflecting ``bases[i]`` at its simple
    root ``alpha`` gives ``bases[j]``.
    """

    grs: Grs
    bases: tuple[Base, ...]
    edges: tuple[tuple[int, int, Vec], ...]

    def __len__(self) -> int:
        return len(self.bases)

    def __iter__(self) -> Iterator[Base]:
        return iter(self.bases)

    def __contains__(self, b) -> bool:
        return b in self._set

    @property
    def _set(self) -> frozenset:
        return frozenset(self.bases)

    def to_dot(self) -> str:
        lines = ["graph bases {"]
        for i, b in enumerate(self.bases):
            label = " ".join(format_vec(v) for v in b.key)
            lines.append(f'  b{i} [label="{label}"];')
        for i, j, a in self.edges:
            if i < j:
                lines.append(f'  b{i} -- b{j} [label="{format_vec(a)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_document(self) -> dict:
        return {
            "nodes": [[[format_rat(x) for x in v] for v in b.key] for b in self.bases],
            "edges": [
                {"source": i, "target": j, "label": [format_rat(x) for x in a]} for i, j, a in self.edges if i < j
            ],
        }


def enumerate_bases(g: Grs, start: Base | None = None) -> BaseGraph:
    """Breadth-first closure of :func:`reflect_base` from ``start``."""
    cached = g._cache.get("bases") if start is None else None
    if cached is not None:
        return cached
    cache_it = start is None
    start = (start or standard_base(g)).sorted()
    seen = {start: start}
    queue = deque([start])
    raw_edges = []
    while queue:
        b = queue.popleft()
        for a in b.simples:
            nb = reflect_base(b, a).sorted()
            if nb not in seen:
                seen[nb] = nb
                queue.append(nb)
            raw_edges.append((b, seen[nb], a))
    bases = tuple(sorted(seen, key=lambda b: b.key, reverse=True))
    idx = {b: i for i, b in enumerate(bases)}
    edges = tuple(sorted((idx[a], idx[b], r) for a, b, r in raw_edges))
    out = BaseGraph(g, bases, edges)
    if cache_it:
        g._cache["bases"] = out
    return out


def flip_subset_positive(s: Base, i_subset: Iterable[Vec]) -> PositiveSystem:
    """(R+ minus R_I+) together with -R_I+."""
    i_subset = [tuple(v) for v in i_subset]
    pos_idx = []
    for v in i_subset:
        if v not in s.simples:
            raise ValueError(f"{v} is not in the base")
        pos_idx.append(s.simples.index(v))
    outside = [k for k in range(len(s.simples)) if k not in pos_idx]
    pos = positive_from_base(s).positives
    in_i = {r for r in pos if any(r) and all(s.coords(r)[k] == 0 for k in outside)}
    return PositiveSystem(s.grs, frozenset((pos - in_i) | {vneg(r) for r in in_i}))
