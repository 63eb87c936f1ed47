"""Equivalence and isomorphism of GRSs, fingerprints, and the rank 2 classifier.

An equivalence is a linear bijection V1 -> V2 carrying R1 onto R2; an
isomorphism is moreover conformal on each irreducible component.  Every
equivalence carries a base onto a base, so a witness is determined by the
images of one fixed base S1 of g1.  The search assigns those images one
simple root at a time, in an order that keeps each prefix connected, and
prunes as soon as some root supported on the assigned simples would leave
R2.  This visits the same maps as running over all bases of g2 and all
orderings of each, in the same lexicographic sense, but far fewer dead ends.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterator, Sequence

from .exact_core import (
    AmbientSpace,
    LinearMap,
    Vec,
    format_rat,
    inverse,
    map_from_images,
    mat_mul,
    rank,
    transpose,
    vadd,
    vneg,
    vscale,
)
from .grs_bases import Base, cartan_matrix, enumerate_bases, standard_base
from .grs_core import Grs, component_root_sets, is_irreducible, root_info, root_string

FAMILIES = (
    "1(i)", "1(ii)", "1(iii)",
    "2(i)", "2(ii)", "2(iii)", "2(iv)", "2(v)", "2(vi)", "2(vii)", "2(viii)",
    "3(i)", "3(ii)", "3(iii)", "3(iv)",
    "4",
)


# -- invariants ---------------------------------------------------------------


def _root_keys(g: Grs, conformal: bool) -> dict[Vec, tuple]:
    """Per-root data preserved by every equivalence (and angles, if conformal)."""
    cache_name = "root_keys_iso" if conformal else "root_keys"
    hit = g._cache.get(cache_name)
    if hit is not None:
        return hit
    nz = g.nonzero_roots()
    norms = {r: g.inner(r, r) for r in nz}
    out = {}
    for a in nz:
        info = root_info(g, a)
        strings = []
        for b in nz:
            p, q = root_string(g, b, a)
            if conformal:
                ip = g.inner(a, b)
                strings.append((p, q, ip * ip / (norms[a] * norms[b]), ip > 0))
            else:
                strings.append((p, q))
        out[a] = (info.multiplier, info.primitive, tuple(sorted(strings)))
    g._cache[cache_name] = out
    return out


def _canonical_cartan(c) -> tuple:
    n = len(c.entries)
    return min(tuple(tuple(c.entries[i][j] for j in p) for i in p) for p in permutations(range(n)))


@dataclass(frozen=True)
class Fingerprint:
    rank: int
    root_count: int
    multiplier_multiset: tuple[int, ...]
    base_count: int
    string_profile: tuple[tuple[int, int], ...]
    cartan_multiset: tuple

    def equivalence_part(self) -> tuple:
        return (self.rank, self.root_count, self.multiplier_multiset, self.base_count, self.string_profile)

    def to_document(self) -> dict:
        return {
            "rank": self.rank,
            "root_count": self.root_count,
            "multiplier_multiset": list(self.multiplier_multiset),
            "base_count": self.base_count,
            "string_profile": [list(pq) for pq in _counted(self.string_profile)],
            "cartan_multiset": [
                {"matrix": [[format_rat(x) for x in row] for row in m], "count": k} for m, k in _counted(self.cartan_multiset)
            ],
        }


def _counted(items) -> list:
    return sorted(Counter(items).items())


def fingerprint(g: Grs) -> Fingerprint:
    """Invariants computed over every base of ``g``.

    ``root_count`` counts nonzero roots.  Running over all bases makes this
    expensive for large Weyl groups; the witness searches below only use
    cheaper per-root invariants.
    """
    bases = enumerate_bases(g).bases
    mult = tuple(sorted(root_info(g, r).multiplier for r in g.nonzero_roots() if root_info(g, r).primitive))
    strings = []
    cartans = []
    for b in bases:
        for a in b.simples:
            for c in b.simples:
                if a != c:
                    strings.append(tuple(root_string(g, c, a)))
        cartans.append(_canonical_cartan(cartan_matrix(b)))
    return Fingerprint(g.rank, len(g.roots) - 1, mult, len(bases), tuple(sorted(strings)), tuple(sorted(cartans)))


# -- witness search ---------------------------------------------------------


def _connected_order(g: Grs, simples: Sequence[Vec]) -> tuple[list[int], list[int]]:
    """A visiting order of ``simples`` with connected prefixes per component.

    Returns the order and, for each visited position, its component number.
    """
    n = len(simples)
    order: list[int] = []
    comp_of: list[int] = []
    left = list(range(n))
    c = -1
    while left:
        c += 1
        frontier = [left.pop(0)]
        while frontier:
            i = frontier.pop(0)
            order.append(i)
            comp_of.append(c)
            for j in list(left):
                if g.inner(simples[i], simples[j]) != 0:
                    left.remove(j)
                    frontier.append(j)
    return order, comp_of


class _Search:
    def __init__(self, g1: Grs, g2: Grs, s1: Base, conformal: bool, allowed: frozenset | None):
        self.g1, self.g2 = g1, g2
        self.conformal = conformal
        order, comp = _connected_order(g1, s1.simples)
        self.alphas = [s1.simples[i] for i in order]
        self.comp = comp
        self.n = len(order)
        k1 = _root_keys(g1, conformal)
        k2 = _root_keys(g2, conformal)
        pool = allowed if allowed is not None else g2.nonzero_roots()
        self.cands = [sorted((b for b in pool if k2.get(b) == k1[a]), reverse=True) for a in self.alphas]
        # roots of g1 grouped by the last visited simple in their support
        self.checks: list[list[tuple[Fraction, ...]]] = [[] for _ in range(self.n)]
        for r in g1.nonzero_roots():
            c = s1.coords(r)
            c = tuple(c[i] for i in order)
            last = max(i for i, x in enumerate(c) if x)
            self.checks[last].append(c)
        self.gram1 = [[g1.inner(a, b) for b in self.alphas] for a in self.alphas]

    def run(self) -> Iterator[LinearMap]:
        images: list[Vec] = []
        scales: dict[int, Fraction] = {}
        yield from self._extend(images, scales)

    def _extend(self, images: list[Vec], scales: dict[int, Fraction]) -> Iterator[LinearMap]:
        t = len(images)
        if t == self.n:
            m = self._finish(images, scales)
            if m is not None:
                yield m
            return
        g2 = self.g2
        ct = self.comp[t]
        for b in self.cand_iter(t, images):
            new_scales = scales
            if self.conformal:
                n1 = self.gram1[t][t]
                c = scales.get(ct)
                if c is None:
                    c = g2.inner(b, b) / n1
                    new_scales = dict(scales)
                    new_scales[ct] = c
                elif g2.inner(b, b) != c * n1:
                    continue
                ok = True
                for s in range(t):
                    want = c * self.gram1[t][s] if self.comp[s] == ct else 0
                    if g2.inner(b, images[s]) != want:
                        ok = False
                        break
                if not ok:
                    continue
            trial = images + [b]
            if rank(trial) != t + 1:
                continue
            if not self._prefix_ok(trial, t):
                continue
            yield from self._extend(trial, new_scales)

    def cand_iter(self, t: int, images: list[Vec]):
        used = set(images) | {vneg(v) for v in images}
        return (b for b in self.cands[t] if b not in used)

    def _prefix_ok(self, images: list[Vec], t: int) -> bool:
        roots2 = self.g2.roots
        dim = self.g2.dim
        for c in self.checks[t]:
            v = (Fraction(0),) * dim
            for k in range(t + 1):
                if c[k]:
                    v = vadd(v, vscale(c[k], images[k]))
            if v not in roots2:
                return False
        return True

    def _finish(self, images: list[Vec], scales: dict[int, Fraction]) -> LinearMap | None:
        m = map_from_images(self.alphas, images)
        if {m(r) for r in self.g1.roots} != self.g2.roots:
            return None
        if self.conformal:
            per = tuple(scales[c] for c in sorted(scales))
            return LinearMap(m.matrix, per)
        return m


def _quick_mismatch(g1: Grs, g2: Grs, conformal: bool) -> bool:
    if g1.dim != g2.dim or len(g1.roots) != len(g2.roots):
        return True
    k1 = Counter(_root_keys(g1, conformal).values())
    k2 = Counter(_root_keys(g2, conformal).values())
    return k1 != k2


def _witnesses(g1: Grs, g2: Grs, conformal: bool, s1: Base | None = None, allowed=None) -> Iterator[LinearMap]:
    if _quick_mismatch(g1, g2, conformal):
        return iter(())
    if g1.dim == 0:
        return iter([LinearMap((), (() if conformal else None))])
    s1 = s1 or standard_base(g1)
    return _Search(g1, g2, s1, conformal, allowed).run()


def equivalent(g1: Grs, g2: Grs) -> LinearMap | None:
    """A linear bijection carrying the roots of g1 onto those of g2, or None."""
    return next(_witnesses(g1, g2, False), None)


def isomorphic(g1: Grs, g2: Grs) -> LinearMap | None:
    """A componentwise conformal witness, or None.

    ``scales`` of the result lists one factor per irreducible component of
    g1, in the visiting order of its standard base.
    """
    return next(_witnesses(g1, g2, True), None)


def all_equivalences(g1: Grs, g2: Grs) -> Iterator[LinearMap]:
    return _witnesses(g1, g2, False)


def base_equivalent(s1: Base, s2: Base) -> bool:
    return next(_witnesses(s1.grs, s2.grs, False, s1, frozenset(s2.simples)), None) is not None


def base_isomorphic(s1: Base, s2: Base) -> bool:
    return next(_witnesses(s1.grs, s2.grs, True, s1, frozenset(s2.simples)), None) is not None


def check_witness(g1: Grs, g2: Grs, m: LinearMap, conformal: bool = False) -> bool:
    """Independent verification of a witness."""
    if m.target_dim != g2.dim or (g1.dim and m.source_dim != g1.dim):
        return False
    if g1.dim and inverse(m.matrix) is None:
        return False
    if {m(r) for r in g1.roots} != g2.roots:
        return False
    if not conformal:
        return True
    if not g1.dim:
        return True
    pulled = mat_mul(mat_mul(transpose(m.matrix), g2.space.gram), m.matrix)

    def pulled_inner(a, b):
        return sum(a[i] * pulled[i][j] * b[j] for i in range(g1.dim) for j in range(g1.dim))

    # both forms are bilinear, so a spanning set of each component suffices
    spans = []
    for comp in component_root_sets(g1):
        basis: list = []
        for r in sorted(comp):
            if rank(basis + [r]) > len(basis):
                basis.append(r)
        spans.append(basis)
    for x, bx in enumerate(spans):
        ratio = pulled_inner(bx[0], bx[0]) / g1.inner(bx[0], bx[0])
        if ratio <= 0:
            return False
        for y, by in enumerate(spans):
            for a in bx:
                for b in by:
                    want = ratio * g1.inner(a, b) if x == y else 0
                    if pulled_inner(a, b) != want:
                        return False
    return True


# -- rank 2 ---------------------------------------------------------------------


def _h(x: str) -> Fraction:
    return Fraction(x)


# coordinates are (x, y) pairs; gram is ((|x|^2, <x,y>), (<x,y>, |y|^2))
_NORMAL_FORMS: dict[str, tuple[tuple[tuple[str, str], ...], tuple[str, str, str]]] = {
    "1(i)": ((("1", "0"), ("0", "1"), ("1", "1")), ("2", "-1", "2")),
    "1(ii)": ((("1", "0"), ("0", "1"), ("1", "1"), ("2", "1")), ("1", "-1", "2")),
    "1(iii)": ((("1", "0"), ("0", "1"), ("1", "1"), ("2", "1"), ("3", "1"), ("3", "2")), ("1", "-3/2", "3")),
    "2(i)": ((("1", "0"), ("2", "0"), ("0", "1"), ("1", "1"), ("-1", "1")), ("1", "0", "2")),
    "2(ii)": ((("1", "0"), ("2", "0"), ("0", "1"), ("0", "2"), ("1", "1"), ("-1", "1")), ("1", "0", "1")),
    "2(iii)": ((("1", "0"), ("2", "0"), ("1/2", "1"), ("-1/2", "1"), ("3/2", "1"), ("-3/2", "1")), ("1", "0", "9/4")),
    "2(iv)": (
        (("1", "0"), ("2", "0"), ("1/2", "1"), ("-1/2", "1"), ("3/2", "1"), ("-3/2", "1"), ("0", "2")),
        ("1", "0", "1"),
    ),
    "2(v)": (
        (("1", "0"), ("2", "0"), ("0", "1"), ("1", "1"), ("-1", "1"), ("2", "1"), ("-2", "1"), ("0", "2")),
        ("1", "0", "2"),
    ),
    "2(vi)": (
        (("1", "0"), ("2", "0"), ("1/2", "1"), ("-1/2", "1"), ("3/2", "1"), ("-3/2", "1"), ("0", "2"), ("1", "2"), ("-1", "2")),
        ("1", "0", "3/4"),
    ),
    "2(vii)": (
        (("1", "0"), ("2", "0"), ("0", "1"), ("1", "1"), ("-1", "1"), ("2", "1"), ("-2", "1"), ("0", "2"), ("1", "2"), ("-1", "2")),
        ("1", "0", "1"),
    ),
    "2(viii)": (
        (
            ("1", "0"), ("2", "0"), ("1/2", "1"), ("-1/2", "1"), ("3/2", "1"), ("-3/2", "1"),
            ("5/2", "1"), ("-5/2", "1"), ("0", "2"), ("1", "2"), ("-1", "2"),
        ),
        ("1", "0", "5/4"),
    ),
    "3(i)": ((("1", "0"), ("2", "0"), ("3", "0"), ("0", "1"), ("1", "1"), ("-1", "1"), ("2", "1"), ("-2", "1")), ("1", "0", "4")),
    "3(ii)": (
        (("1", "0"), ("2", "0"), ("3", "0"), ("0", "1"), ("1", "1"), ("-1", "1"), ("2", "1"), ("-2", "1"), ("0", "2")),
        ("1", "0", "3"),
    ),
    "3(iii)": (
        (
            ("1", "0"), ("2", "0"), ("3", "0"), ("1/2", "1"), ("-1/2", "1"), ("3/2", "1"), ("-3/2", "1"),
            ("5/2", "1"), ("-5/2", "1"), ("0", "2"),
        ),
        ("1", "0", "15/4"),
    ),
    "3(iv)": (
        (
            ("1", "0"), ("2", "0"), ("3", "0"), ("0", "1"), ("1", "1"), ("-1", "1"), ("2", "1"), ("-2", "1"),
            ("0", "2"), ("1", "2"), ("-1", "2"), ("2", "2"), ("-2", "2"), ("0", "3"),
        ),
        ("1", "0", "1"),
    ),
    "4": (
        (
            ("1", "0"), ("2", "0"), ("3", "0"), ("4", "0"), ("0", "1"), ("1", "1"), ("-1", "1"),
            ("2", "1"), ("-2", "1"), ("3", "1"), ("-3", "1"), ("0", "2"),
        ),
        ("1", "0", "6"),
    ),
}


def normal_form(family: str) -> Grs:
    """A member of the family in its (x, y) frame, for one admissible parameter."""
    if family not in _NORMAL_FORMS:
        raise ValueError(f"unknown rank 2 family {family!r}")
    pos, (xx, xy, yy) = _NORMAL_FORMS[family]
    gram = ((_h(xx), _h(xy)), (_h(xy), _h(yy)))
    roots = set()
    for a, b in pos:
        v = (_h(a), _h(b))
        roots.add(v)
        roots.add(vneg(v))
    return Grs(AmbientSpace(2, gram), roots, family)


_dispatch: dict[tuple[int, int, int], str] = {}


def _dispatch_table() -> dict[tuple[int, int, int], str]:
    """(max multiplier, nonzero roots, primitive roots of multiplier >= 2) -> family."""
    if not _dispatch:
        for fam in FAMILIES:
            sig = _signature(normal_form(fam))
            if sig in _dispatch:
                raise AssertionError(f"{fam} and {_dispatch[sig]} share a signature")
            _dispatch[sig] = fam
    return _dispatch


@dataclass(frozen=True)
class Rank2Class:
    family: str
    params: tuple[Fraction, ...]
    witness: LinearMap

    @property
    def max_multiplier(self) -> int:
        return int(self.family[0])

    def __str__(self) -> str:
        if not self.params:
            return self.family
        return f"{self.family} ({', '.join(format_rat(p) for p in self.params)})"


class ClassificationError(AssertionError):
    """No family matched although the input validated as a GRS."""


def _signature(g: Grs) -> tuple[int, int, int]:
    infos = [root_info(g, r) for r in g.nonzero_roots()]
    m = max(i.multiplier for i in infos)
    many = sum(1 for i in infos if i.primitive and i.multiplier >= 2)
    return m, len(infos), many


def _frame_gram(g: Grs, m: LinearMap) -> tuple[Fraction, Fraction, Fraction]:
    """(|x|^2, <x,y>, |y|^2) of the normal-form frame pulled back to g."""
    inv = inverse(m.matrix)
    x = tuple(row[0] for row in inv)
    y = tuple(row[1] for row in inv)
    return g.inner(x, x), g.inner(x, y), g.inner(y, y)


def _orbit_1i(a: Fraction, b: Fraction) -> set[tuple[Fraction, Fraction]]:
    def g1(p):
        a, b = p
        return (-2 - a, -(2 + a) * b / (a + b + a * b))

    def g2(p):
        a, b = p
        return (-(2 + b) * a / (a + b + a * b), -2 - b)

    seen = {(a, b)}
    todo = [(a, b)]
    while todo:
        p = todo.pop()
        for f in (g1, g2):
            q = f(p)
            if q not in seen:
                seen.add(q)
                todo.append(q)
    return seen


def canonical_1i(a, b) -> tuple[Fraction, Fraction]:
    """Lexicographically least point of the orbit of (a, b)."""
    return min(_orbit_1i(Fraction(a), Fraction(b)))


def _params(family: str, xx: Fraction, xy: Fraction, yy: Fraction) -> tuple[Fraction, ...]:
    if family == "1(i)":
        return canonical_1i(2 * xy / xx, 2 * xy / yy)
    if family == "1(ii)":
        a = 2 * xy / xx
        return (min(a, -4 - a),)
    if family in ("2(i)", "2(iv)", "3(ii)"):
        return (yy / xx,)
    if family == "2(ii)":
        r = yy / xx
        return (max(r, 1 / r),)
    if family == "2(iii)":
        return (abs(xy) / xx,)
    return ()


def classify_rank2(g: Grs) -> Rank2Class:
    """Family of an irreducible rank 2 GRS and its canonical parameters.

    Parameters: (a, b) orbit-minimal for 1(i); a = c_xy reduced modulo
    a -> -4 - a for 1(ii); |y|^2/|x|^2 for 2(i), 2(iv), 3(ii), and its
    maximum with the inverse for 2(ii); |<x,y>|/|x|^2 for 2(iii).
    """
    if g.rank != 2:
        raise ValueError("classify_rank2 needs a GRS of rank 2")
    if not is_irreducible(g):
        raise ValueError("classify_rank2 needs an irreducible GRS")
    sig = _signature(g)
    if sig[0] >= 5:
        raise ClassificationError(f"multiplier {sig[0]} cannot occur in a GRS")
    family = _dispatch_table().get(sig)
    if family is None:
        raise ClassificationError(f"no rank 2 family has signature {sig}")
    nf = normal_form(family)
    witnesses = list(all_equivalences(g, nf))
    if not witnesses:
        raise ClassificationError(f"{g!r} has the signature of {family} but is not equivalent to it")
    params = min(_params(family, *_frame_gram(g, m)) for m in witnesses)
    return Rank2Class(family, params, witnesses[0])
