"""The Grs type: axiom validation, strings, multipliers, components, lattice ops.

A generalized root system is a finite spanning set R of a Euclidean space
such that for all roots a, b:

* <a,b> < 0 implies a+b in R,
* <a,b> > 0 implies a-b in R,
* <a,b> = 0 implies (a+b in R iff a-b in R).

Functions that take a ``Base`` only use its ``coords`` and ``simples``
attributes, so this module does not import :mod:`grskit.grs_bases`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from operator import add, mul, sub
from typing import Iterable, NamedTuple, Sequence

from .exact_core import (
    ZERO,
    AmbientSpace,
    Vec,
    format_rat,
    format_vec,
    inner,
    parse_rat,
    rank,
    solve,
    transpose,
    vadd,
    vec,
    vscale,
    vsub,
)

RULES = ("NegSum", "PosDiff", "OrthIff", "Span")


class Violation(ValueError):
    """A candidate set fails the GRS axioms.

    ``pair`` is the offending ordered pair (None for the span rule) and
    ``rule`` one of NegSum, PosDiff, OrthIff, Span.
    """

    def __init__(self, rule: str, pair: tuple[Vec, Vec] | None):
        self.rule = rule
        self.pair = pair
        where = "" if pair is None else f" on {format_vec(pair[0])}, {format_vec(pair[1])}"
        super().__init__(f"{rule}{where}")


class StringInterval(NamedTuple):
    p: int
    q: int


class RootInfo(NamedTuple):
    root: Vec
    primitive: bool
    multiplier: int


def _descending(vectors: Iterable[Vec]) -> list[Vec]:
    return sorted(vectors, reverse=True)


class _Scaled:
    """Integer-scaled copy of a root set, used by the quadratic loops."""

    __slots__ = ("ints", "index", "gvec")

    def __init__(self, space: AmbientSpace, roots: Sequence[Vec]):
        d = lcm(1, *(x.denominator for r in roots for x in r))
        gd = lcm(1, *(x.denominator for row in space.gram for x in row))
        gram = [[int(x * gd) for x in row] for row in space.gram]
        self.ints = [tuple(int(x * d) for x in r) for r in roots]
        self.index = {v: i for i, v in enumerate(self.ints)}
        self.gvec = [tuple(sum(map(mul, row, v)) for row in gram) for v in self.ints]


def find_violation(space: AmbientSpace, candidate: Iterable[Vec]) -> Violation | None:
    """Return the first axiom violation of ``candidate`` or None.

    Pairs are scanned with both entries running over the roots in
    descending lexicographic order, so positive-leading vectors come first.
    The zero vector is added if missing.
    """
    roots = _descending(set(tuple(parse_rat(x) for x in r) for r in candidate) | {(ZERO,) * space.dim})
    if any(len(r) != space.dim for r in roots):
        raise ValueError("root length does not match the space")
    if rank(roots) != space.dim:
        return Violation("Span", None)
    sc = _Scaled(space, roots)
    index = sc.index
    for i, a in enumerate(sc.ints):
        for j, b in enumerate(sc.ints):
            ip = sum(map(mul, a, sc.gvec[j]))
            if ip < 0:
                if tuple(map(add, a, b)) not in index:
                    return Violation("NegSum", (roots[i], roots[j]))
            elif ip > 0:
                if tuple(map(sub, a, b)) not in index:
                    return Violation("PosDiff", (roots[i], roots[j]))
            elif (tuple(map(add, a, b)) in index) != (tuple(map(sub, a, b)) in index):
                return Violation("OrthIff", (roots[i], roots[j]))
    return None


class Grs:
    """A validated generalized root system (roots include 0).

    ``embedding`` is set on components returned by
    :func:`irreducible_components`: it lists, for each coordinate vector of
    this system, the corresponding vector of the parent space.
    """

    __slots__ = ("space", "roots", "label", "embedding", "_sorted", "_cache")

    def __init__(
        self,
        space: AmbientSpace,
        roots: Iterable[Vec],
        label: str | None = None,
        *,
        embedding: tuple[Vec, ...] | None = None,
        _trusted: bool = False,
    ):
        rs = frozenset(tuple(parse_rat(x) for x in r) for r in roots) | {(ZERO,) * space.dim}
        if not _trusted:
            bad = find_violation(space, rs)
            if bad is not None:
                raise bad
        self.space = space
        self.roots = rs
        self.label = label
        self.embedding = embedding
        self._sorted: tuple[Vec, ...] | None = None
        self._cache: dict = {}

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def rank(self) -> int:
        return self.space.dim

    @property
    def zero(self) -> Vec:
        return (ZERO,) * self.space.dim

    def sorted_roots(self) -> tuple[Vec, ...]:
        """All roots in descending lexicographic order."""
        if self._sorted is None:
            self._sorted = tuple(_descending(self.roots))
        return self._sorted

    def nonzero_roots(self) -> tuple[Vec, ...]:
        z = self.zero
        return tuple(r for r in self.sorted_roots() if r != z)

    def __contains__(self, v) -> bool:
        return v in self.roots

    def __len__(self) -> int:
        return len(self.roots)

    def __repr__(self) -> str:
        name = self.label or "Grs"
        return f"<{name}: rank {self.rank}, {len(self.roots) - 1} nonzero roots>"

    def inner(self, u: Vec, v: Vec) -> Fraction:
        return inner(self.space, u, v)

    def same_as(self, other: "Grs") -> bool:
        return self.space.gram == other.space.gram and self.roots == other.roots

    # interchange format -------------------------------------------------
    def to_document(self) -> dict:
        doc = {
            "dim": self.dim,
            "gram": [[format_rat(x) for x in row] for row in self.space.gram],
            "roots": [[format_rat(x) for x in r] for r in self.sorted_roots()],
            "label": self.label,
        }
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_document(), indent=1)


def validate_grs(space: AmbientSpace, candidate: Iterable[Vec], label: str | None = None) -> Grs:
    """Validate ``candidate`` and return a Grs; raises :class:`Violation`."""
    return Grs(space, candidate, label)


def grs_from_document(doc: dict) -> Grs:
    """Parse the interchange document (the zero root may be omitted)."""
    try:
        dim = int(doc["dim"])
        gram = [[parse_rat(x) for x in row] for row in doc["gram"]]
        roots = [vec(r) for r in doc["roots"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed Grs document: {exc}") from exc
    return validate_grs(AmbientSpace(dim, gram), roots, doc.get("label"))


def grs_from_json(text: str) -> Grs:
    return grs_from_document(json.loads(text))


def _require_root(g: Grs, v: Vec, what: str = "vector") -> Vec:
    v = tuple(parse_rat(x) for x in v)
    if v not in g.roots:
        raise ValueError(f"{what} {v} is not a root")
    return v


def root_string(g: Grs, beta: Vec, alpha: Vec) -> StringInterval:
    """The alpha-string through beta: beta - p*alpha, ..., beta + q*alpha."""
    beta = _require_root(g, beta, "beta")
    alpha = _require_root(g, alpha, "alpha")
    if not any(alpha):
        raise ValueError("alpha must be nonzero")
    p = 0
    v = vsub(beta, alpha)
    while v in g.roots:
        p += 1
        v = vsub(v, alpha)
    q = 0
    v = vadd(beta, alpha)
    while v in g.roots:
        q += 1
        v = vadd(v, alpha)
    return StringInterval(p, q)


def string_offsets(g: Grs, beta: Vec, alpha: Vec) -> list[int]:
    """All integers t with beta + t*alpha a root, found without assuming contiguity."""
    i = next(k for k, a in enumerate(alpha) if a)
    out = []
    for r in g.roots:
        t = (r[i] - beta[i]) / alpha[i]
        if t.denominator == 1 and vadd(beta, vscale(t, alpha)) == r:
            out.append(int(t))
    return sorted(out)


def _ray_multiples(g: Grs, alpha: Vec) -> list[Fraction]:
    """Positive c with c*alpha a root, sorted."""
    i = next(k for k, a in enumerate(alpha) if a)
    out = []
    for r in g.roots:
        c = r[i] / alpha[i]
        if c > 0 and vscale(c, alpha) == r:
            out.append(c)
    return sorted(out)


def root_info(g: Grs, alpha: Vec) -> RootInfo:
    alpha = _require_root(g, alpha, "alpha")
    if not any(alpha):
        raise ValueError("alpha must be nonzero")
    cache = g._cache.setdefault("root_info", {})
    hit = cache.get(alpha)
    if hit is not None:
        return hit
    cs = _ray_multiples(g, alpha)
    c0 = cs[0]
    top = cs[-1] / c0
    if top.denominator != 1:
        raise AssertionError("ray of a GRS is not an arithmetic progression")
    info = RootInfo(alpha, c0 == 1, int(top))
    cache[alpha] = info
    return info


def primitive_generator(g: Grs, alpha: Vec) -> Vec:
    alpha = _require_root(g, alpha, "alpha")
    if not any(alpha):
        raise ValueError("alpha must be nonzero")
    return vscale(_ray_multiples(g, alpha)[0], alpha)


def component_root_sets(g: Grs) -> list[frozenset[Vec]]:
    """Partition the nonzero roots into classes of the non-orthogonality graph."""
    nz = g.nonzero_roots()
    parent = list(range(len(nz)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    gv = [g.space.apply(r) for r in nz]
    for i, a in enumerate(nz):
        for j in range(i + 1, len(nz)):
            if sum(x * y for x, y in zip(a, gv[j]) if x and y):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    classes: dict[int, set] = {}
    for i, r in enumerate(nz):
        classes.setdefault(find(i), set()).add(r)
    out = [frozenset(c) for c in classes.values()]
    out.sort(key=lambda c: max(c), reverse=True)
    return out


def lex_positive_vectors(vectors: Iterable[Vec], ordering: Sequence[int] | None = None) -> set[Vec]:
    """Vectors whose first nonzero coordinate (in ``ordering``) is positive, plus 0."""
    out = set()
    for v in vectors:
        order = ordering if ordering is not None else range(len(v))
        first = next((v[i] for i in order if v[i]), None)
        if first is None or first > 0:
            out.add(v)
    return out


def indecomposables(positives: Iterable[Vec]) -> list[Vec]:
    """Nonzero elements of ``positives`` that are not a sum of two nonzero ones."""
    pos = set(positives)
    nz = [v for v in pos if any(v)]
    return _descending(b for b in nz if not any(vsub(b, c) in pos and any(vsub(b, c)) for c in nz if c != b))


def irreducible_components(g: Grs) -> list[Grs]:
    """Irreducible summands, each as a Grs in its own span.

    Each component is expressed in the coordinates of the base given by
    the indecomposable lex-positive roots of that component; that base is
    recorded as ``embedding``.
    """
    out = []
    for k, cls in enumerate(component_root_sets(g)):
        simples = indecomposables(lex_positive_vectors(cls))
        cols = transpose(simples)
        coords = []
        for r in sorted(cls, reverse=True):
            c = solve(cols, r)
            if c is None:
                raise AssertionError("component root outside the span of its base")
            coords.append(c)
        space = AmbientSpace(len(simples), g.space.gram_of(simples))
        label = f"{g.label}[{k}]" if g.label else None
        out.append(Grs(space, coords, label, embedding=tuple(simples)))
    return out


def is_irreducible(g: Grs) -> bool:
    cached = g._cache.get("irreducible")
    if cached is None:
        cached = len(component_root_sets(g)) <= 1
        g._cache["irreducible"] = cached
    return cached


def is_connected(space: AmbientSpace, vectors: Sequence[Vec]) -> bool:
    """Connectivity of the non-orthogonality graph on ``vectors``."""
    vectors = list(vectors)
    if not vectors:
        return True
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(len(vectors)):
            if j not in seen and inner(space, vectors[i], vectors[j]) != 0:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(vectors)


def support(g: Grs, s, beta: Vec) -> tuple[Vec, ...]:
    """Simple roots of ``s`` with a nonzero coefficient in ``beta``."""
    beta = _require_root(g, beta, "beta")
    c = s.coords(beta)
    return tuple(a for a, k in zip(s.simples, c) if k)


def _is_positive(c: Sequence[Fraction]) -> bool:
    return all(x >= 0 for x in c)


def precedes(s, b1: Vec, b2: Vec) -> bool:
    """b1 precedes-or-equals b2 in the order defined by base ``s``."""
    return all(x <= y for x, y in zip(s.coords(b1), s.coords(b2)))


def positive_roots(g: Grs, s) -> list[Vec]:
    return [r for r in g.sorted_roots() if _is_positive(s.coords(r))]


def highest_root(g: Grs, s) -> Vec:
    if not is_irreducible(g):
        raise ValueError("highest root needs an irreducible GRS")
    pos = positive_roots(g, s)
    theta = max(pos, key=lambda r: (sum(s.coords(r)), r))
    tc = s.coords(theta)
    for r in pos:
        if not all(x <= y for x, y in zip(s.coords(r), tc)):
            raise AssertionError("no unique maximal root")
    return theta


def _from_coords(s, c: Sequence[Fraction]) -> Vec:
    dim = len(s.simples[0]) if s.simples else 0
    out = [ZERO] * dim
    for k, a in zip(c, s.simples):
        if k:
            for i, x in enumerate(a):
                out[i] += k * x
    return tuple(out)


def meet_plus(g: Grs, s, b1: Vec, b2: Vec) -> Vec:
    c1, c2 = s.coords(_require_root(g, b1)), s.coords(_require_root(g, b2))
    if not (_is_positive(c1) and _is_positive(c2)):
        raise ValueError("inputs must be positive roots")
    m = _from_coords(s, [min(x, y) for x, y in zip(c1, c2)])
    if m not in g.roots:
        raise AssertionError("coordinatewise minimum is not a root")
    return m


def join_plus(g: Grs, s, b1: Vec, b2: Vec) -> Vec:
    c1, c2 = s.coords(_require_root(g, b1)), s.coords(_require_root(g, b2))
    if not (_is_positive(c1) and _is_positive(c2)):
        raise ValueError("inputs must be positive roots")
    upper = []
    for r in positive_roots(g, s):
        c = s.coords(r)
        if all(x <= z and y <= z for x, y, z in zip(c1, c2, c)):
            upper.append(c)
    m = [min(col) for col in zip(*upper)] if upper else []
    j = _from_coords(s, m)
    if j not in g.roots:
        raise AssertionError("meet of the upper bounds is not a root")
    return j
