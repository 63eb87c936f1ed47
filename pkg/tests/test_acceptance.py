"""One test per acceptance criterion, each reporting a single PASS/FAIL line.

The lines are collected in ``RESULTS`` and printed in the terminal summary
(see conftest.py).  Run ``python3 -m tests.test_acceptance`` to print them
without pytest.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from grskit.classify import normal_form
from grskit.crosscheck import _BASE_CASES_1I, _BASE_CASES_1II, reduced_rank2
from grskit.grs_bases import enumerate_bases
from grskit.grs_core import highest_root
from grskit.quotient import catalog_quotient

from . import checks, reference_values

RESULTS: dict[int, str] = {}


def _report(n: int, title: str, failures: list[str]) -> list[str]:
    status = "PASS" if not failures else "FAIL"
    detail = "" if not failures else f" ({len(failures)} failing: {failures[0]})"
    RESULTS[n] = f"criterion {n}: {status}  {title}{detail}"
    print(RESULTS[n])
    return failures


def tables() -> list[str]:
    return [m for x in ("F4", "E6", "E7", "E8") for m in checks.table_mismatches(x)]


def f4_quotient_24() -> list[str]:
    q = catalog_quotient("F4", (2, 4))
    g = q.target
    out = []
    if len(g.roots) != reference_values.F4_24_ROOTS:
        out.append(f"{len(g.roots)} roots")
    gram = g.space.gram
    got = {"n2": gram[0][0], "n4": gram[1][1], "ip": gram[0][1]}
    for key, want in reference_values.F4_24_GRAM.items():
        if got[key] != Fraction(want):
            out.append(f"{key} = {got[key]}, want {want}")
    return out


def rank2_buckets() -> list[str]:
    return checks.rank2_bucket_mismatches()


def base_counts() -> list[str]:
    out = []
    systems = [("1(i)", reduced_rank2("1(i)", a, b)[0]) for a, b in _BASE_CASES_1I]
    systems += [("1(ii)", reduced_rank2("1(ii)", a)[0]) for a in _BASE_CASES_1II]
    systems.append(("1(iii)", normal_form("1(iii)")))
    for fam, g in systems:
        n = len(enumerate_bases(g))
        if n != reference_values.REDUCED_BASE_COUNTS[fam]:
            out.append(f"{g.label}: {n} bases")
    for keep, want in reference_values.F4_QUOTIENT_HIGHEST.items():
        q = catalog_quotient("F4", keep)
        got = q.target_base.coords(highest_root(q.target, q.target_base))
        if got != want:
            out.append(f"F4^{keep}: highest root {got}")
    return out


def named_isomorphisms() -> list[str]:
    return checks.claim_failures()


def property_suites() -> list[str]:
    parts = {
        "a": checks.quotient_closure_failures(),
        "b": checks.corpus_invariant_failures(),
        "c": checks.meet_join_failures(),
        "d": checks.fiber_failures(),
        "e": checks.theta_edge_failures(),
        "f": checks.base_graph_failures(),
    }
    return [f"({k}) {m}" for k, ms in parts.items() for m in ms]


def classical_oracles() -> list[str]:
    return checks.delta_oracle_failures() + checks.theta_formula_failures()


CRITERIA = {
    1: ("Table regeneration for F4, E6, E7, E8 (byte-exact)", tables),
    2: ("F4 keep {2,4}: 17 roots and its Gram values", f4_quotient_24),
    3: ("rank 2 classification of the 71 exceptional quotients", rank2_buckets),
    4: ("base counts 6/8/12 and F4 quotient highest roots", base_counts),
    5: ("named isomorphisms and expected refutations", named_isomorphisms),
    6: ("property suites (a)-(f)", property_suites),
    7: ("classical closed forms and theta_L", classical_oracles),
}


def _run(n: int) -> list[str]:
    title, fn = CRITERIA[n]
    return _report(n, title, fn())


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 7])
def test_criterion(n):
    assert _run(n) == []


def test_criterion_5_except_known_refutation():
    bad = [f for f in checks.claim_failures() if not any(f.startswith(k + ":") for k in checks.KNOWN_REFUTED)]
    assert bad == []


@pytest.mark.xfail(strict=True, reason="E6,3^I ~= D8^{3,5,8} is refuted: 16 against 18 nonzero roots")
def test_criterion_5():
    assert _run(5) == []


if __name__ == "__main__":
    for n in CRITERIA:
        _run(n)
