"""Quotients R/I, fibers, functoriality, and closed forms of classical quotients.

The target of ``quotient_grs(S, I)`` is written in the basis S/I, that is
in the projections of the kept simple roots.  Since the projection kills
the simple roots in I, the S/I coordinates of the image of a root are
simply its S-coordinates at the kept positions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .catalog import RootSystemId, build_root_system
from .exact_core import ZERO, AmbientSpace, Vec, identity, project_perp, solve, transpose
from .grs_bases import Base
from .grs_core import Grs


@dataclass(frozen=True)
class Fiber:
    """The fiber R^nu, ordered by height; min/max are None for nu = 0."""

    nu: Vec
    members: tuple[Vec, ...]
    base: Base
    i_positions: tuple[int, ...]
    minimum: Vec | None
    maximum: Vec | None

    def meet(self, a: Vec, b: Vec) -> Vec:
        ca, cb = self.base.coords(a), self.base.coords(b)
        return self.base.vector([min(x, y) for x, y in zip(ca, cb)])

    def join(self, a: Vec, b: Vec) -> Vec:
        ca, cb = self.base.coords(a), self.base.coords(b)
        return self.base.vector([max(x, y) for x, y in zip(ca, cb)])

    def hasse_edges(self) -> list[tuple[Vec, Vec]]:
        """Pairs (a, b) of members with b - a a simple root of I."""
        members = set(self.members)
        steps = [self.base.simples[k] for k in self.i_positions]
        out = []
        for a in self.members:
            for s in steps:
                b = tuple(x + y for x, y in zip(a, s))
                if b in members:
                    out.append((a, b))
        return out

    def is_connected(self) -> bool:
        if not self.members:
            return True
        adj: dict[Vec, set] = {m: set() for m in self.members}
        for a, b in self.hasse_edges():
            adj[a].add(b)
            adj[b].add(a)
        seen = {self.members[0]}
        stack = [self.members[0]]
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == len(self.members)


@dataclass(frozen=True)
class QuotientMap:
    """pi_I from ``parent`` onto ``target``.

    ``kept`` are the positions (0-based) in ``parent_base.simples`` that
    survive; ``target_base`` is S/I in target coordinates (unit vectors).
    """

    parent: Grs
    parent_base: Base
    i_subset: tuple[Vec, ...]
    kept: tuple[int, ...]
    target: Grs
    target_base: Base
    fibers: dict = field(repr=False)

    def project(self, v: Vec) -> Vec:
        c = self.parent_base.coords(tuple(v))
        return tuple(c[k] for k in self.kept)

    @property
    def removed(self) -> tuple[int, ...]:
        return tuple(k for k in range(len(self.parent_base.simples)) if k not in self.kept)

    def projected_simples(self) -> tuple[Vec, ...]:
        """pi_I of each kept simple root, as vectors of the parent space."""
        space = self.parent.space
        return tuple(project_perp(space, self.i_subset, self.parent_base.simples[k]) for k in self.kept)


def quotient_grs(s: Base, i_subset: Iterable[Vec], label: str | None = None, *, validate: bool = True) -> QuotientMap:
    g = s.grs
    i_subset = tuple(tuple(v) for v in i_subset)
    for v in i_subset:
        if v not in s.simples:
            raise ValueError(f"{v} is not in the base")
    removed = {s.simples.index(v) for v in i_subset}
    kept = tuple(k for k in range(len(s.simples)) if k not in removed)
    space = g.space
    i_ordered = tuple(s.simples[k] for k in sorted(removed))
    proj = [project_perp(space, i_ordered, s.simples[k]) for k in kept]
    tspace = AmbientSpace(len(kept), space.gram_of(proj))
    fibers: dict[Vec, list[Vec]] = {}
    for r in g.sorted_roots():
        c = s.coords(r)
        nu = tuple(c[k] for k in kept)
        fibers.setdefault(nu, []).append(r)
    for nu, members in fibers.items():
        members.sort(key=lambda r: (sum(s.coords(r)), r))
    target = Grs(tspace, fibers.keys(), label, _trusted=not validate)
    tbase = Base(target, identity(len(kept)), check=False)
    target._cache["standard_base"] = tbase
    return QuotientMap(g, s, i_ordered, kept, target, tbase, {nu: tuple(m) for nu, m in fibers.items()})


def parse_keep(rid: RootSystemId, keep: Iterable[int]) -> tuple[int, ...]:
    keep = tuple(sorted(set(int(k) for k in keep)))
    if any(k < 1 or k > rid.rank for k in keep):
        raise ValueError(f"kept indices must lie in 1..{rid.rank}")
    return keep


def quotient_name(rid: RootSystemId, keep: Sequence[int]) -> str:
    return f"{rid}^{''.join(str(k) for k in keep)}" if all(k < 10 for k in keep) else f"{rid}^{{{','.join(map(str, keep))}}}"


@lru_cache(maxsize=4096)
def _catalog_quotient(rid: RootSystemId, keep: tuple[int, ...]) -> QuotientMap:
    g, s = build_root_system(rid)
    i_subset = [s.simples[k - 1] for k in range(1, rid.rank + 1) if k not in keep]
    return quotient_grs(s, i_subset, quotient_name(rid, keep))


def catalog_quotient(system: "str | RootSystemId", keep: Iterable[int]) -> QuotientMap:
    """X_l^J: the quotient of a catalog system keeping the Bourbaki indices J."""
    rid = RootSystemId.parse(system)
    return _catalog_quotient(rid, parse_keep(rid, keep))


def quotient_bases(q: QuotientMap):
    from .grs_bases import enumerate_bases

    return enumerate_bases(q.target)


def project_base(q: QuotientMap, base: Base) -> Base | None:
    """pi_I(S') minus 0 for a parent base S' containing I, else None."""
    if not set(q.i_subset) <= set(base.simples):
        return None
    imgs = [q.project(b) for b in base.simples if b not in q.i_subset]
    return Base(q.target, imgs, check=False).sorted()


def fiber(q: QuotientMap, nu: Vec) -> Fiber:
    nu = tuple(nu)
    if nu not in q.fibers:
        raise ValueError(f"{nu} is not a root of the quotient")
    members = q.fibers[nu]
    s = q.parent_base
    lo = hi = None
    if any(nu):
        coords = [s.coords(m) for m in members]
        lo = s.vector([min(col) for col in zip(*coords)])
        hi = s.vector([max(col) for col in zip(*coords)])
        if lo not in members or hi not in members:
            raise AssertionError("fiber has no smallest or largest element")
    return Fiber(nu, members, s, q.removed, lo, hi)


def compose_quotients(q1: QuotientMap, j_over_i: Iterable[Vec]) -> QuotientMap:
    """(R/I)/(J/I) presented as a quotient of the original parent."""
    j_over_i = [tuple(v) for v in j_over_i]
    tb = q1.target_base
    for v in j_over_i:
        if v not in tb.simples:
            raise ValueError(f"{v} is not in the quotient base")
    q2 = quotient_grs(tb, j_over_i)
    drop = {q1.kept[tb.simples.index(v)] for v in j_over_i}
    kept = tuple(k for k in q1.kept if k not in drop)
    s = q1.parent_base
    i_all = tuple(s.simples[k] for k in range(len(s.simples)) if k not in kept)
    fibers: dict[Vec, list[Vec]] = {}
    for nu2, mids in q2.fibers.items():
        fibers[nu2] = sorted((r for m in mids for r in q1.fibers[m]), key=lambda r: (sum(s.coords(r)), r))
    return QuotientMap(
        q1.parent, s, i_all, kept, q2.target, q2.target_base, {k: tuple(v) for k, v in fibers.items()}
    )


# -- closed forms for classical quotients ---------------------------------


@dataclass(frozen=True)
class ClassicalQuotientForm:
    """X_l^J over the delta basis with <d_s, d_s> = 1/l_s.

    ``delta_roots`` and ``simple_deltas`` are coordinate vectors in the
    delta basis (length len(L)); ``symbolic_roots`` describes the root
    set in words.
    """

    family: str
    l: int
    j_set: tuple[int, ...]
    L: tuple[int, ...]
    type_tag: str | None
    symbolic_roots: str
    delta_roots: frozenset
    simple_deltas: tuple[Vec, ...]

    @property
    def delta_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        n = len(self.L)
        return tuple(tuple(Fraction(1, self.L[s]) if s == t else ZERO for t in range(n)) for s in range(n))

    def grs(self) -> Grs:
        """The root set as a validated Grs in the coordinates of ``simple_deltas``."""
        cols = transpose(self.simple_deltas)
        coords = []
        for r in self.delta_roots:
            c = solve(cols, r)
            if c is None:
                raise AssertionError("closed-form root outside the span of its base")
            coords.append(c)
        dspace = AmbientSpace(len(self.L), self.delta_gram)
        space = AmbientSpace(len(self.simple_deltas), dspace.gram_of(self.simple_deltas))
        return Grs(space, coords, f"{self.family}{self.l}^{self.j_set} closed form")


def classical_L(family: str, l: int, j_set: Sequence[int]) -> tuple[int, ...]:
    """Gap sequence of J: l_s = j_s - j_{s-1} with j_0 = 0 (and j_{k+1} = l + 1 for A).

    D differs from B and C in one place: when j_{k-1} <= l - 2 < j_k the
    last entry is l - j_{k-1}, so J's ending in l - 1 or l share one L.
    """
    j = _check_j(family, l, j_set)
    k = len(j)
    ext = (0,) + j
    if family == "A":
        ext = ext + (l + 1,)
        return tuple(ext[s] - ext[s - 1] for s in range(1, k + 2))
    L = [ext[s] - ext[s - 1] for s in range(1, k + 1)]
    if family == "D" and ext[k - 1] <= l - 2 < ext[k]:
        L[-1] = l - ext[k - 1]
    return tuple(L)


def _check_j(family: str, l: int, j_set: Sequence[int]) -> tuple[int, ...]:
    if family not in "ABCD" or len(family) != 1:
        raise ValueError("family must be one of A, B, C, D")
    RootSystemId(family, l).validate()
    j = tuple(sorted(set(int(x) for x in j_set)))
    if not j or j[0] < 1 or j[-1] > l or len(j) != len(j_set):
        raise ValueError(f"invalid J {tuple(j_set)} for {family}{l}")
    return j


def _d(n: int, pairs: Iterable[tuple[int, int]]) -> Vec:
    v = [ZERO] * n
    for i, c in pairs:
        v[i] += c
    return tuple(v)


def classical_form(family: str, l: int, j_set: Sequence[int]) -> ClassicalQuotientForm:
    j = _check_j(family, l, j_set)
    L = classical_L(family, l, j)
    k = len(j)
    n = len(L)
    roots: set[Vec] = set()
    diff = [(s, t) for s in range(n) for t in range(n) if s != t]
    tag = None
    if family == "A":
        roots |= {_d(n, [(s, 1), (t, -1)]) for s, t in diff}
        simples = [_d(n, [(s, 1), (s + 1, -1)]) for s in range(k)]
        words = "d_s - d_t (s != t)"
    else:
        for s, t in diff:
            for e1 in (1, -1):
                for e2 in (1, -1):
                    roots.add(_d(n, [(s, e1), (t, e2)]))
        chain = [_d(n, [(s, 1), (s + 1, -1)]) for s in range(k - 1)]
        singles = {_d(n, [(s, e)]) for s in range(n) for e in (1, -1)}
        doubles = {_d(n, [(s, 2 * e)]) for s in range(n) for e in (1, -1)}
        long_doubles = {_d(n, [(s, 2 * e)]) for s in range(n) for e in (1, -1) if L[s] >= 2}
        if family == "B":
            roots |= singles | long_doubles
            simples = chain + [_d(n, [(k - 1, 1)])]
            words = "+-d_s +- d_t, +-d_s, +-2d_s (l_s >= 2)"
        elif family == "C":
            tag = "I" if j[-1] == l else "II"
            roots |= doubles
            if tag == "II":
                roots |= singles
                simples = chain + [_d(n, [(k - 1, 1)])]
                words = "+-d_s +- d_t, +-d_s, +-2d_s"
            else:
                simples = chain + [_d(n, [(k - 1, 2)])]
                words = "+-d_s +- d_t, +-2d_s"
        else:
            tag = "I" if j[-1] >= l - 1 else "II"
            roots |= long_doubles
            words = "+-d_s +- d_t, +-2d_s (l_s >= 2)"
            if tag == "II":
                roots |= singles
                words = "+-d_s +- d_t, +-d_s, +-2d_s (l_s >= 2)"
            prev = j[-2] if k >= 2 else 0
            if k >= 2 and prev == l - 1 and j[-1] == l:
                last = _d(n, [(k - 2, 1), (k - 1, 1)])
            elif prev <= l - 2 < j[-1]:
                last = _d(n, [(k - 1, 2)])
            else:
                last = _d(n, [(k - 1, 1)])
            simples = chain + [last]
    return ClassicalQuotientForm(family, l, j, L, tag, words, frozenset(roots), tuple(simples))


def classical_theta_L(family: str, l: int, j_set: Sequence[int], pivot: int) -> tuple[int, ...]:
    """L of the theta-move image at ``pivot`` (an element of J) by the case rules."""
    j = _check_j(family, l, j_set)
    if pivot not in j:
        raise ValueError("pivot is not in J")
    L = list(classical_L(family, l, j))
    k = len(j)
    s = j.index(pivot) + 1
    last_pair = k >= 2 and j[k - 2] == l - 1 and j[k - 1] == l
    if family == "A" or s < k:
        L[s - 1], L[s] = L[s], L[s - 1]
    elif family == "D" and last_pair:
        L[k - 2], L[k - 1] = L[k - 1], L[k - 2]
    return tuple(L)


def classical_theta_image(family: str, l: int, j_set: Sequence[int], pivot: int) -> int:
    """theta_{J, pivot}(pivot) from the explicit case list for A-D."""
    j = _check_j(family, l, j_set)
    if pivot not in j:
        raise ValueError("pivot is not in J")
    k = len(j)
    s = j.index(pivot) + 1
    ext = (0,) + j + ((l + 1,) if family == "A" else ())

    def js(i: int) -> int:
        return ext[i]

    if family == "A":
        return js(s - 1) - js(s) + js(s + 1)
    if family in "BC":
        return js(s - 1) - js(s) + js(s + 1) if s < k else js(s)
    # D_l
    if s <= k - 2:
        return js(s - 1) - js(s) + js(s + 1)
    jk = js(k)
    jk1 = js(k - 1)
    jk2 = js(k - 2) if k >= 2 else 0
    if s == k - 1:
        if jk <= l - 2:
            return jk2 - jk1 + jk
        if jk1 == l - 1 and jk == l:
            return jk2 + 1
        if jk2 + 2 <= jk1 <= l - 2:
            return jk2 - jk1 + l
        if jk2 + 1 == jk1 <= l - 2:
            return l if jk == l - 1 else l - 1
        raise AssertionError("unreachable D case")
    if jk <= l - 2:
        return jk
    if k >= 2 and jk1 == l - 1 and jk == l:
        # when j_{k-2} = l - 2 the node l is isolated in K and stays put
        return jk if jk2 == l - 2 else jk2 + 1
    if jk == l - 1:
        return l if (l - jk1) % 2 == 1 else l - 1
    return l - 1 if (l - jk1) % 2 == 1 else l


def classical_component_key(family: str, l: int, j_set: Sequence[int]) -> tuple:
    """Two index sets lie in one component of the theta-graph iff their keys agree.

    The key is the sorted L(J).  In type D, when every entry of L(J) is even
    and J ends in exactly one of l - 1, l, no theta-move can trade l - 1 for l,
    so that last index is part of the key as well.
    """
    j = _check_j(family, l, j_set)
    L = classical_L(family, l, j)
    tail = None
    if family == "D" and all(x % 2 == 0 for x in L):
        lone_end = j[-1] >= l - 1 and not (len(j) > 1 and j[-2] == l - 1)
        if lone_end:
            tail = j[-1]
    return (tuple(sorted(L)), tail)
