"""Named isomorphisms and equivalences between quotients, as executable claims.

Each claim states an expected outcome.  Negative claims (two systems are
*not* isomorphic, or not equivalent) expect the status ``refuted``; a claim
passes when its status equals its expectation.
"""

from __future__ import annotations

import os
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .catalog import RootSystemId, build_root_system
from .classify import base_equivalent, base_isomorphic, equivalent, fingerprint, isomorphic
from .exact_core import AmbientSpace, LinearMap, vadd, vneg
from .grs_bases import Base, enumerate_bases
from .grs_core import Grs
from .quograph import table_rows
from .quotient import catalog_quotient

VERIFIED, REFUTED, SKIPPED = "verified", "refuted", "skipped"


@dataclass
class ClaimResult:
    claim_id: str
    status: str
    expected: str = VERIFIED
    witness: LinearMap | None = None
    detail: str = ""
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == self.expected

    def to_document(self) -> dict:
        doc = {
            "claim_id": self.claim_id,
            "status": self.status,
            "expected": self.expected,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "detail": self.detail,
        }
        if self.witness is not None:
            doc["witness"] = self.witness.rows()
        if self.data:
            doc["data"] = self.data
        return doc


# -- naming -------------------------------------------------------------------

_NAME = re.compile(r"([A-G]\d+),(\d+)(?:\^([IVX]+))?$")
_QUOT = re.compile(r"([A-G]\d+)(?:\^\{?([\d,]+)\}?)?$")


def resolve(name: str) -> Grs:
    """A Grs from a table name ("E7,2^III"), a quotient ("D8^{3,5,8}", "B3^13"), or a system id."""
    m = _NAME.fullmatch(name)
    if m:
        system, k, roman = m.group(1), int(m.group(2)), m.group(3)
        rows = table_rows(system, k)
        for r in rows:
            if r.component_name == f"{system},{k}" + (f"^{roman}" if roman else ""):
                return catalog_quotient(system, r.member_J_list[0]).target
        raise ValueError(f"no component named {name}")
    m = _QUOT.fullmatch(name)
    if not m:
        raise ValueError(f"cannot resolve {name!r}")
    rid = RootSystemId.parse(m.group(1))
    keep = m.group(2)
    if keep is None:
        return build_root_system(rid)[0]
    idx = [int(x) for x in keep.split(",")] if "," in keep else [int(x) for x in keep]
    return catalog_quotient(rid, idx).target


# -- claim helpers --------------------------------------------------------------


def _timed(claim_id: str, expected: str, fn: Callable[[], tuple[str, LinearMap | None, str]]) -> ClaimResult:
    t = time.perf_counter()
    status, witness, detail = fn()
    return ClaimResult(claim_id, status, expected, witness, detail, time.perf_counter() - t)


def _relation(a: str, b: str, iso: bool, expect: bool) -> ClaimResult:
    sym = "~=" if iso else "~"
    claim = f"{a} {sym} {b}"

    def run():
        g1, g2 = resolve(a), resolve(b)
        w = (isomorphic if iso else equivalent)(g1, g2)
        if w is None:
            return REFUTED, None, "no witness"
        return VERIFIED, w, "witness found"

    return _timed(claim, VERIFIED if expect else REFUTED, run)


def _chain(names: list[str], iso: bool) -> list[ClaimResult]:
    return [_relation(names[0], n, iso, True) for n in names[1:]]


# -- the checks ---------------------------------------------------------------


def check_simply_laced_covers() -> list[ClaimResult]:
    out = []
    for l in range(2, 7):
        keep = ",".join(str(i) for i in range(1, l + 1))
        out.append(_relation(f"B{l}", f"D{l + 2}^{{{keep}}}", True, True))
    for l in range(2, 5):
        keep = ",".join(str(2 * i) for i in range(1, l + 1))
        out.append(_relation(f"C{l}", f"D{2 * l}^{{{keep}}}", True, True))
    out += _chain(["F4", "E7^{1,3,4,6}", "E8^{1,6,7,8}"], True)
    out += _chain(["G2", "E6^{2,4}", "E7^{1,3}", "E8^{7,8}"], True)
    return out


_RANK2_EQUIV = [
    ["E6,2^IV", "A2"],
    ["E6,2^I", "E7,2^VI", "B2"],
    ["E6,2^V", "E7,2^II", "E8,2^XI", "F4,2^I", "G2"],
    ["E6,2^III", "E7,2^I", "B3^{1,3}"],
    ["E7,2^V", "E8,2^VI", "F4,2^III", "B4^{2,4}"],
    ["E6,2^II", "E7,2^VII"],
    ["E7,2^IV", "E8,2^I"],
    ["E7,2^III", "E8,2^V", "F4,2^II"],
    ["E7,2^IX", "E8,2^IV", "F4,2^IV"],
]

# isomorphism classes inside each equivalence class above
_RANK2_ISO = [
    [["E6,2^IV", "A2"]],
    [["E6,2^I"], ["E7,2^VI"], ["B2"]],
    [["E6,2^V", "E7,2^II", "E8,2^XI", "F4,2^I", "G2"]],
    [["E6,2^III"], ["E7,2^I"], ["B3^{1,3}"]],
    # B4^{2,4} is 2(ii) with |y| = |x|, like the three exceptional members
    [["E7,2^V", "E8,2^VI", "F4,2^III", "B4^{2,4}"]],
    [["E6,2^II"], ["E7,2^VII"]],
    [["E7,2^IV"], ["E8,2^I"]],
    [["E7,2^III", "E8,2^V", "F4,2^II"]],
    [["E7,2^IX", "E8,2^IV", "F4,2^IV"]],
]


def square_and_sheared() -> tuple[Grs, Grs]:
    """Two rank 2 GRSs in orthonormal coordinates: a square and a sheared copy."""
    space = AmbientSpace.euclidean(2)
    e1, e2 = (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
    u = (Fraction(3, 5), Fraction(4, 5))

    def sym(vs):
        return set(vs) | {vneg(v) for v in vs}

    r1 = Grs(space, sym([e1, e2, vadd(e1, e2), vadd(e1, vneg(e2))]), "R1")
    r2 = Grs(space, sym([e1, u, vadd(e1, u), vadd(e1, vneg(u))]), "R2")
    return r1, r2


def check_rank2_equiv_tables() -> list[ClaimResult]:
    out = []
    for names in _RANK2_EQUIV:
        out += _chain(names, False)
    for classes in _RANK2_ISO:
        for cls in classes:
            if len(cls) > 1:
                out += _chain(cls, True)
        for i in range(len(classes)):
            for j in range(i + 1, len(classes)):
                out.append(_relation(classes[i][0], classes[j][0], True, False))
    r1, r2 = square_and_sheared()
    out.append(_direct("R1 ~ R2 (square vs sheared)", r1, r2, False, True))
    out.append(_direct("R1 ~= R2 (square vs sheared)", r1, r2, True, False))
    return out


def _direct(claim: str, g1: Grs, g2: Grs, iso: bool, expect: bool) -> ClaimResult:
    def run():
        w = (isomorphic if iso else equivalent)(g1, g2)
        return (REFUTED, None, "no witness") if w is None else (VERIFIED, w, "witness found")

    return _timed(claim, VERIFIED if expect else REFUTED, run)


def check_rank3_claims() -> list[ClaimResult]:
    out = [
        _relation("E6,3^I", "D8^{3,5,8}", True, True),
        _relation("E7,3^VII", "C3", True, True),
    ]
    out += _chain(["E7,3^IV", "E8,3^VII", "F4,3^I"], True)
    out += _chain(["E7,3^VI", "E8,3^VI", "F4,3^II"], True)
    out.append(_relation("E6,3^II", "E7,3^I", False, True))
    out.append(_relation("E6,3^II", "E7,3^I", True, False))
    out.append(_relation("E7,3^III", "E7,3^IV", False, False))
    out.append(_relation("D4^{1,2,3}", "A3", False, False))
    out += _chain(["E7,4^IV", "E8,4^VI", "F4"], True)
    return out


_SUPER = [
    ("D(2,1;alpha)", "D4^{1,2,3}"),
    ("F(4)", "E7^{1,5,6,7}"),
    ("G(3)", "E8^{1,3,8}"),
    ("osp(3,2)", "B3^{1,3}"),
    ("osp(5,2)", "B4^{1,2,4}"),
    ("osp(3,4)", "B5^{1,3,5}"),
    ("osp(4,2)", "D4^{1,2,4}"),
    ("osp(2,4)", "D5^{1,3,5}"),
    ("osp(4,4)", "D6^{1,2,4,6}"),
]


def check_super_quotients() -> list[ClaimResult]:
    """Compute the quotients matched with superalgebras; the super side is not built."""
    out = []
    for algebra, name in _SUPER:
        t = time.perf_counter()
        g = resolve(name)
        fp = fingerprint(g)
        out.append(
            ClaimResult(
                f"{algebra} ~ {name}",
                SKIPPED,
                SKIPPED,
                None,
                f"{len(g.roots)} roots including 0; superalgebra side not constructed",
                time.perf_counter() - t,
                {"quotient": g.to_document(), "fingerprint": fp.to_document()},
            )
        )
    return out


def reduced_rank2(kind: str, a, b=None) -> tuple[Grs, list[Base]]:
    """The reduced GRS 1(i) or 1(ii) with base (alpha, beta) and its bases S1, S2, ...

    For 1(i), |alpha|^2 = 2, <alpha, beta> = a, |beta|^2 = 2a/b, so the
    Cartan entries are c_ab = a and c_ba = b.  For 1(ii), |beta|^2 = -2a.
    """
    a = Fraction(a)
    al, be = (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
    if kind == "1(i)":
        b = Fraction(b)
        gram = ((Fraction(2), a), (a, 2 * a / b))
        pos = [al, be, vadd(al, be)]
    elif kind == "1(ii)":
        gram = ((Fraction(2), a), (a, -2 * a))
        pos = [al, be, vadd(al, be), vadd(vadd(al, al), be)]
    else:
        raise ValueError("kind must be 1(i) or 1(ii)")
    g = Grs(AmbientSpace(2, gram), set(pos) | {vneg(v) for v in pos}, f"{kind} a={a}" + (f" b={b}" if b is not None else ""))
    ab = vadd(al, be)
    if kind == "1(i)":
        simple_lists = [[al, be], [vneg(al), ab], [ab, vneg(be)]]
    else:
        b2a = vadd(vadd(al, al), be)
        simple_lists = [[al, be], [vneg(al), b2a], [ab, vneg(be)], [ab, vneg(b2a)]]
    return g, [Base(g, s) for s in simple_lists]


_BASE_CASES_1I = [(-1, Fraction(-1, 2)), (Fraction(-1, 2), -1), (Fraction(-1, 2), Fraction(-1, 2)), (-1, -1), (Fraction(-1, 2), Fraction(-4, 3))]
_BASE_CASES_1II = [-2, -1, -3, Fraction(-1, 2)]


def check_rank2_base_analysis() -> list[ClaimResult]:
    out = []
    for a, b in _BASE_CASES_1I:
        g, (s1, s2, s3) = reduced_rank2("1(i)", a, b)
        label = g.label
        out.append(_base_claim(f"{label}: {len(enumerate_bases(g))} bases, all equivalent", lambda: len(enumerate_bases(g)) == 6 and all(base_equivalent(s1, s) for s in (s2, s3)), True))
        a_, b_ = Fraction(a), Fraction(b)
        for (x, y, n1, n2, cond) in ((s1, s2, 1, 2, a_ == -1), (s1, s3, 1, 3, b_ == -1), (s2, s3, 2, 3, a_ == b_)):
            out.append(_base_claim(f"{label}: S{n1} ~= S{n2}", lambda x=x, y=y: base_isomorphic(x, y), cond))
    for a in _BASE_CASES_1II:
        g, (s1, s2, s3, s4) = reduced_rank2("1(ii)", a)
        label = g.label
        out.append(_base_claim(f"{label}: {len(enumerate_bases(g))} bases, all equivalent", lambda: len(enumerate_bases(g)) == 8 and all(base_equivalent(s1, s) for s in (s2, s3, s4)), True))
        for (x, y, n1, n2, cond) in ((s1, s3, 1, 3, True), (s2, s4, 2, 4, True), (s1, s2, 1, 2, Fraction(a) == -2)):
            out.append(_base_claim(f"{label}: S{n1} ~= S{n2}", lambda x=x, y=y: base_isomorphic(x, y), cond))
    return out


def _base_claim(claim: str, test: Callable[[], bool], expect: bool) -> ClaimResult:
    def run():
        ok = test()
        return (VERIFIED if ok else REFUTED), None, ""

    return _timed(claim, VERIFIED if expect else REFUTED, run)


CHECKS: dict[str, Callable[[], list[ClaimResult]]] = {
    "simply_laced_covers": check_simply_laced_covers,
    "rank2_equiv_tables": check_rank2_equiv_tables,
    "rank3_claims": check_rank3_claims,
    "super_quotients": check_super_quotients,
    "rank2_base_analysis": check_rank2_base_analysis,
}


def _run_check(name: str) -> list[ClaimResult]:
    res = CHECKS[name]()
    for r in res:
        r.claim_id = f"{name}: {r.claim_id}"
    return res


def threads() -> int:
    try:
        return max(1, int(os.environ.get("GRSKIT_THREADS", "1")))
    except ValueError:
        return 1


def run_all(filter: str | None = None) -> list[ClaimResult]:
    """Every claim whose group name or claim id contains ``filter``.

    A filter naming a group runs only that group.
    Groups run in worker processes when GRSKIT_THREADS > 1; results are
    sorted by claim id either way.
    """
    names = [k for k in CHECKS if filter and filter in k] or list(CHECKS)
    n = threads()
    if n > 1:
        with ProcessPoolExecutor(max_workers=min(n, len(names))) as ex:
            groups = list(ex.map(_run_check, names))
    else:
        groups = [_run_check(k) for k in names]
    results = [r for grp in groups for r in grp]
    if filter:
        results = [r for r in results if filter in r.claim_id]
    return sorted(results, key=lambda r: r.claim_id)
