"""Finite root systems A-G in Bourbaki labeling.

Normalization of squared root lengths:

====== ===== =====
family short long
====== ===== =====
A,D,E  2     2
B      1     2
C      2     4
F4     2     4
G2     2/3   2
====== ===== =====

Roots are integer vectors in simple-root coordinates and are generated
from the simple roots by closure under the simple reflections.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple

from .exact_core import AmbientSpace, identity
from .grs_bases import Base
from .grs_core import Grs

NORMALIZATION = {
    "A": "all roots norm^2 2",
    "B": "short norm^2 1, long 2",
    "C": "short norm^2 2, long 4",
    "D": "all roots norm^2 2",
    "E": "all roots norm^2 2",
    "F": "short norm^2 2, long 4",
    "G": "short norm^2 2/3, long 2",
}


class RootSystemId(NamedTuple):
    family: str
    rank: int

    @classmethod
    def parse(cls, text: "str | RootSystemId") -> "RootSystemId":
        if isinstance(text, RootSystemId):
            text.validate()
            return text
        m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", str(text))
        if not m:
            raise ValueError(f"cannot parse root system id {text!r}")
        rid = cls(m.group(1).upper(), int(m.group(2)))
        rid.validate()
        return rid

    def validate(self) -> None:
        f, n = self.family, self.rank
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }.get(f, False)
        if not ok:
            raise ValueError(f"invalid root system {f}{n}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class DiagramEdge:
    i: int
    j: int
    multiplicity: int
    # node the arrow points to (the shorter root), None for single bonds
    arrow_to: int | None


@dataclass(frozen=True)
class DynkinDiagram:
    system: RootSystemId
    nodes: tuple[int, ...]
    edges: tuple[DiagramEdge, ...]
    norms: dict

    def neighbors(self, i: int) -> list[int]:
        return sorted({e.j for e in self.edges if e.i == i} | {e.i for e in self.edges if e.j == i})

    def edge(self, i: int, j: int) -> DiagramEdge | None:
        for e in self.edges:
            if {e.i, e.j} == {i, j}:
                return e
        return None

    def to_dot(self) -> str:
        lines = [f"graph {self.system} {{"]
        for n in self.nodes:
            lines.append(f'  {n} [label="{n}"];')
        for e in self.edges:
            attr = f' [label="{e.multiplicity}"]' if e.multiplicity > 1 else ""
            lines.append(f"  {e.i} -- {e.j}{attr};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _shape(rid: RootSystemId) -> tuple[list[tuple[int, int]], dict[int, Fraction]]:
    f, n = rid
    two = Fraction(2)
    norms = {i: two for i in range(1, n + 1)}
    if f == "A":
        edges = [(i, i + 1) for i in range(1, n)]
    elif f == "B":
        edges = [(i, i + 1) for i in range(1, n)]
        norms[n] = Fraction(1)
    elif f == "C":
        edges = [(i, i + 1) for i in range(1, n)]
        norms[n] = Fraction(4)
    elif f == "D":
        edges = [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
        if n == 3:
            edges = [(1, 2), (1, 3)]
    elif f == "E":
        edges = [(1, 3), (2, 4)] + [(i, i + 1) for i in range(3, n)]
    elif f == "F":
        edges = [(1, 2), (2, 3), (3, 4)]
        norms[1] = norms[2] = Fraction(4)
    else:
        edges = [(1, 2)]
        norms[1] = Fraction(2, 3)
    return sorted(edges), norms


def gram_matrix(rid: "str | RootSystemId") -> tuple[tuple[Fraction, ...], ...]:
    rid = RootSystemId.parse(rid)
    edges, norms = _shape(rid)
    n = rid.rank
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n + 1):
        g[i - 1][i - 1] = norms[i]
    for i, j in edges:
        g[i - 1][j - 1] = g[j - 1][i - 1] = -max(norms[i], norms[j]) / 2
    return tuple(tuple(r) for r in g)


def _closure(gram) -> set[tuple[Fraction, ...]]:
    n = len(gram)
    simples = identity(n)
    roots = set(simples)
    frontier = list(simples)
    while frontier:
        new = []
        for b in frontier:
            for i in range(n):
                # s_i(b) = b - (2<b,a_i>/<a_i,a_i>) a_i
                c = 2 * sum(b[k] * gram[k][i] for k in range(n)) / gram[i][i]
                if c:
                    r = tuple(b[k] - c if k == i else b[k] for k in range(n))
                    if r not in roots:
                        roots.add(r)
                        new.append(r)
        frontier = new
    zero = (Fraction(0),) * n
    return roots | {tuple(-x for x in r) for r in roots} | {zero}


@lru_cache(maxsize=None)
def _build(rid: RootSystemId) -> tuple[Grs, Base]:
    gram = gram_matrix(rid)
    space = AmbientSpace(rid.rank, gram)
    g = Grs(space, _closure(gram), str(rid))
    s = Base(g, identity(rid.rank))
    g._cache["standard_base"] = s
    return g, s


def build_root_system(rid: "str | RootSystemId") -> tuple[Grs, Base]:
    """The root system and its standard ordered base Sigma."""
    return _build(RootSystemId.parse(rid))


@lru_cache(maxsize=None)
def _diagram(rid: RootSystemId) -> DynkinDiagram:
    edges, norms = _shape(rid)
    out = []
    for i, j in edges:
        ni, nj = norms[i], norms[j]
        mult = int(max(ni, nj) / min(ni, nj))
        arrow = None if ni == nj else (i if ni < nj else j)
        out.append(DiagramEdge(i, j, mult, arrow))
    return DynkinDiagram(rid, tuple(range(1, rid.rank + 1)), tuple(out), dict(norms))


def dynkin_diagram(rid: "str | RootSystemId") -> DynkinDiagram:
    return _diagram(RootSystemId.parse(rid))


@dataclass(frozen=True)
class DiagramInvolution:
    """Duality permutation of the nodes in ``domain``; ``types`` names each component."""

    domain: frozenset
    perm: dict
    types: tuple[tuple[str, tuple[int, ...]], ...]

    def __call__(self, i: int) -> int:
        return self.perm.get(i, i)

    @property
    def is_identity(self) -> bool:
        return all(k == v for k, v in self.perm.items())


def _components(d: DynkinDiagram, nodes: Iterable[int]) -> list[list[int]]:
    nodes = set(nodes)
    out = []
    while nodes:
        start = min(nodes)
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in d.neighbors(v):
                if w in nodes and w not in comp:
                    comp.add(w)
                    stack.append(w)
        nodes -= comp
        out.append(sorted(comp))
    return sorted(out)


def _arm(d: DynkinDiagram, comp: set, center: int, first: int) -> list[int]:
    arm = [first]
    prev, cur = center, first
    while True:
        nxt = [w for w in d.neighbors(cur) if w in comp and w != prev]
        if not nxt:
            return arm
        prev, cur = cur, nxt[0]
        arm.append(cur)


def classify_component(d: DynkinDiagram, comp: list[int]) -> tuple[str, dict[int, int]]:
    """Type of a connected sub-diagram and its duality permutation."""
    cs = set(comp)
    n = len(comp)
    inner_edges = [e for e in d.edges if e.i in cs and e.j in cs]
    ident = {i: i for i in comp}
    if n == 1:
        return "A1", ident
    mults = [e.multiplicity for e in inner_edges]
    if max(mults) > 1:
        if max(mults) == 3:
            return "G2", ident
        low = min(d.norms[k] for k in comp)
        short = [i for i in comp if d.norms[i] == low]
        if n == 4 and len(short) == 2 and len(inner_edges) == 3 and d.system.family == "F":
            return "F4", ident
        # a double bond ending in a single short node is B_n, otherwise C_n
        if n == 2 or len(short) == 1:
            return f"B{n}", ident
        return f"C{n}", ident
    deg = {i: len([w for w in d.neighbors(i) if w in cs]) for i in comp}
    branch = [i for i in comp if deg[i] == 3]
    if not branch:
        ends = sorted(i for i in comp if deg[i] == 1)
        path = _arm(d, cs, -1, ends[0])
        return f"A{n}", {v: path[n - 1 - k] for k, v in enumerate(path)}
    c = branch[0]
    arms = sorted((_arm(d, cs, c, w) for w in d.neighbors(c) if w in cs), key=len)
    lens = tuple(len(a) for a in arms)
    perm = dict(ident)
    if lens[:2] == (1, 1):
        if n % 2 == 1:
            a, b = arms[0][0], arms[1][0]
            perm[a], perm[b] = b, a
        return f"D{n}", perm
    if lens == (1, 2, 2):
        for x, y in zip(arms[1], arms[2]):
            perm[x], perm[y] = y, x
        return "E6", perm
    return f"E{n}", perm


def duality_involution(rid: "str | RootSystemId", k_subset: Iterable[int]) -> DiagramInvolution:
    d = dynkin_diagram(rid)
    k = frozenset(k_subset)
    if not k <= set(d.nodes):
        raise ValueError("k_subset is not a set of diagram nodes")
    perm: dict[int, int] = {}
    types = []
    for comp in _components(d, k):
        name, p = classify_component(d, comp)
        perm.update(p)
        types.append((name, tuple(comp)))
    return DiagramInvolution(k, perm, tuple(types))
