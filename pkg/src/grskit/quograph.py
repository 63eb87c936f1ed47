"""Theta-moves between quotients of a root system and the graphs X_{l,k}.

For kept indices J and a pivot j in J, let K be the complement of J
together with j.  The duality involution of the sub-diagram on K acts on
J by moving j only; the resulting index set is the image of the move.
The quotients by the complements of J and of its image are isometric via
the map -theta^*, which this module builds explicitly.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .catalog import DiagramInvolution, RootSystemId, duality_involution
from .exact_core import LinearMap, Vec, inner, lin_comb, mat_mul, solve, transpose, vsub
from .grs_bases import reflect_base
from .quotient import catalog_quotient

ROMAN = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII", "XIII", "XIV", "XV"]


@dataclass(frozen=True)
class ThetaMove:
    system: RootSystemId
    j_set: tuple[int, ...]
    pivot: int
    image: tuple[int, ...]
    involution: DiagramInvolution

    @property
    def is_loop(self) -> bool:
        return self.image == self.j_set

    @property
    def new_pivot(self) -> int:
        return self.involution(self.pivot)


def theta_move(system: "str | RootSystemId", j_set: Iterable[int], pivot: int) -> ThetaMove:
    rid = RootSystemId.parse(system)
    j = tuple(sorted(set(j_set)))
    if pivot not in j:
        raise ValueError("pivot is not in J")
    if any(x < 1 or x > rid.rank for x in j):
        raise ValueError("J is not a set of diagram nodes")
    k = (set(range(1, rid.rank + 1)) - set(j)) | {pivot}
    inv = duality_involution(rid, k)
    image = tuple(sorted((set(j) - {pivot}) | {inv(pivot)}))
    return ThetaMove(rid, j, pivot, image, inv)


class WitnessError(AssertionError):
    """The constructed map failed verification."""


def theta_iso_witness(move: ThetaMove) -> LinearMap:
    """The isometry -theta^* from X^J onto X^{theta(J)} in S/I coordinates."""
    rid = move.system
    q1 = catalog_quotient(rid, move.j_set)
    q2 = catalog_quotient(rid, move.image)
    g, s = q1.parent, q1.parent_base
    space = g.space
    inv = move.involution
    k_nodes = sorted(inv.domain)
    k_roots = [s.simples[i - 1] for i in k_nodes]
    k_gram = space.gram_of(k_roots)

    def phi(v: Vec) -> Vec:
        c = solve(k_gram, [inner(space, a, v) for a in k_roots])
        v_k = lin_comb(c, k_roots, space.dim)
        moved = lin_comb(c, [s.simples[inv(i) - 1] for i in k_nodes], space.dim)
        return vsub(vsub(v, v_k), moved)

    tgt_cols = transpose(q2.projected_simples())
    cols = []
    for v in q1.projected_simples():
        c = solve(tgt_cols, phi(v))
        if c is None:
            raise WitnessError("image leaves the target space")
        cols.append(c)
    m = LinearMap(transpose(cols), scales=(Fraction(1),))
    _verify_theta(move, q1, q2, m)
    return m


def _verify_theta(move: ThetaMove, q1, q2, m: LinearMap) -> None:
    g1, g2 = q1.target, q2.target
    if {m(r) for r in g1.roots} != g2.roots:
        raise WitnessError("map is not a bijection of root sets")
    mt = transpose(m.matrix)
    pulled = mat_mul(mat_mul(mt, g2.space.gram), m.matrix)
    if pulled != g1.space.gram:
        raise WitnessError("map is not an isometry")
    j_pos = move.j_set.index(move.pivot)
    reflected = reflect_base(q1.target_base, q1.target_base.simples[j_pos])
    if {m(v) for v in reflected.simples} != set(q2.target_base.simples):
        raise WitnessError("reflected base does not map onto the target base")


@dataclass(frozen=True)
class QuotGraph:
    system: RootSystemId
    k: int
    vertices: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    components: tuple[tuple[tuple[int, ...], ...], ...]

    def component_of(self, j: Iterable[int]) -> int:
        j = tuple(sorted(j))
        return next(i for i, c in enumerate(self.components) if j in c)

    def to_dot(self) -> str:
        rid = self.system
        lines = [f"graph {rid.family}{rid.rank}_{self.k} {{"]
        for v in self.vertices:
            lines.append(f'  "{_jname(v)}" [label="{rid.family}_{rid.rank}^{{{_jname(v)}}}"];')
        for a, b in self.edges:
            lines.append(f'  "{_jname(a)}" -- "{_jname(b)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_document(self) -> dict:
        return {
            "system": str(self.system),
            "k": self.k,
            "vertices": [list(v) for v in self.vertices],
            "edges": [[list(a), list(b)] for a, b in self.edges],
            "components": [[list(v) for v in c] for c in self.components],
        }


def _jname(j: Iterable[int]) -> str:
    j = list(j)
    return "".join(map(str, j)) if all(x < 10 for x in j) else ",".join(map(str, j))


def build_graph(system: "str | RootSystemId", k: int) -> QuotGraph:
    rid = RootSystemId.parse(system)
    if not 1 <= k <= rid.rank:
        raise ValueError(f"k must lie in 1..{rid.rank}")
    vertices = tuple(combinations(range(1, rid.rank + 1), k))
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    edges = set()
    for v in vertices:
        for j in v:
            mv = theta_move(rid, v, j)
            if not mv.is_loop:
                edges.add(tuple(sorted((v, mv.image))))
                a, b = find(v), find(mv.image)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups: dict = {}
    for v in vertices:
        groups.setdefault(find(v), []).append(v)
    comps = tuple(sorted(tuple(sorted(c)) for c in groups.values()))
    return QuotGraph(rid, k, vertices, tuple(sorted(edges)), comps)


@dataclass(frozen=True)
class TableRow:
    k: int
    system: str
    component_name: str
    member_J_list: tuple[tuple[int, ...], ...]
    nonzero_root_count: int


def table_rows(system: "str | RootSystemId", k: int) -> list[TableRow]:
    """One row per component of X_{l,k}, ordered by smallest member."""
    graph = build_graph(system, k)
    rid = graph.system
    rows = []
    n = len(graph.components)
    for idx, comp in enumerate(graph.components):
        counts = {len(catalog_quotient(rid, j).target.roots) - 1 for j in comp}
        if len(counts) != 1:
            raise AssertionError(f"component {comp} has quotients of different sizes")
        name = f"{rid.family}{rid.rank},{k}" + (f"^{ROMAN[idx]}" if n > 1 else "")
        rows.append(TableRow(k, str(rid), name, comp, counts.pop()))
    return rows


CSV_HEADER = ("k", "system", "name", "members", "count")


def rows_to_csv(rows: Iterable[TableRow], header: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.k, r.system, r.component_name, " ".join(_jname(j) for j in r.member_J_list), r.nonzero_root_count])
    return buf.getvalue()


def table_csv(system: "str | RootSystemId") -> str:
    """Every rank k >= 2 of X_l in the CSV layout."""
    rid = RootSystemId.parse(system)
    rows = [r for k in range(2, rid.rank + 1) for r in table_rows(rid, k)]
    return rows_to_csv(rows)
