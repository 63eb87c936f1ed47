"""The systems every invariant suite runs over."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from grskit.catalog import build_root_system
from grskit.classify import FAMILIES, normal_form
from grskit.crosscheck import reduced_rank2, square_and_sheared
from grskit.grs_core import Grs
from grskit.quotient import catalog_quotient

SMALL_CATALOG = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"]
CATALOG = SMALL_CATALOG + ["A5", "A6", "B4", "B5", "B6", "C4", "C5", "C6", "D5", "D6", "F4", "E6", "E7", "E8"]
EXCEPTIONAL = ["G2", "F4", "E6", "E7", "E8"]

# quotients picked to cover every multiplier and both rank 2 and rank 3
SAMPLE_QUOTIENTS = [
    ("F4", (2, 4)),
    ("F4", (1, 4)),
    ("E6", (1, 6)),
    ("E7", (3, 5)),
    ("E8", (3, 5)),
    ("E8", (4, 6)),
    ("B4", (2, 4)),
    ("C4", (1, 2, 4)),
    ("D5", (1, 3, 5)),
    ("E6", (1, 2, 3)),
]


@lru_cache(maxsize=None)
def catalog(name: str) -> Grs:
    return build_root_system(name)[0]


@lru_cache(maxsize=None)
def rank2_quotients() -> tuple[tuple[str, tuple[int, int], Grs], ...]:
    out = []
    for x in EXCEPTIONAL:
        r = int(x[1:])
        for j in combinations(range(1, r + 1), 2):
            out.append((x, j, catalog_quotient(x, j).target))
    return tuple(out)


@lru_cache(maxsize=None)
def small_corpus() -> tuple[Grs, ...]:
    """Systems small enough for exhaustive base enumeration."""
    out = [catalog(x) for x in SMALL_CATALOG]
    out += [normal_form(f) for f in FAMILIES]
    out += [catalog_quotient(x, j).target for x, j in SAMPLE_QUOTIENTS]
    out.append(reduced_rank2("1(i)", -1, Fraction(-1, 2))[0])
    out.append(reduced_rank2("1(ii)", -3)[0])
    out += list(square_and_sheared())
    return tuple(out)


@lru_cache(maxsize=None)
def full_corpus() -> tuple[Grs, ...]:
    out = list(small_corpus())
    out += [catalog(x) for x in CATALOG if x not in SMALL_CATALOG]
    out += [g for _, _, g in rank2_quotients()]
    return tuple(out)
