"""Expand the printed table into the CSV layout produced by ``grskit table``."""

from __future__ import annotations

import csv
import io
from itertools import combinations
from pathlib import Path

GOLDEN = Path(__file__).parent / "golden"
HEADER = ("k", "system", "name", "members", "count")

# Known misprints: (component name, field, printed, corrected)
CORRECTIONS = [
    ("F4,2^III", "count", "16", "12"),
    ("E7,5^I", "complement", "12", "13"),
]


def _parse_set(text: str) -> tuple[int, ...]:
    return tuple(int(c) for c in text)


def read_transcription() -> list[dict]:
    rows = []
    for line in (GOLDEN / "printed_table.txt").read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        k, system, n, name, notation, members, count = line.split("|")
        rows.append(dict(k=int(k), system=system, n=int(n), name=name, notation=notation,
                         members=[m.strip() for m in members.split(",") if m.strip()], count=count))
    return rows


def apply_corrections(rows: list[dict]) -> list[dict]:
    out = []
    for r in rows:
        r = dict(r, members=list(r["members"]))
        for name, field, printed, fixed in CORRECTIONS:
            if r["name"] != name:
                continue
            if field == "count":
                assert r["count"] == printed
                r["count"] = fixed
            else:
                i = r["members"].index(printed)
                r["members"][i] = fixed
        out.append(r)
    return out


def expand(row: dict) -> list[tuple[int, ...]]:
    rank = int(row["system"][1:])
    k = row["k"]
    nodes = range(1, rank + 1)
    if row["notation"] in ("full", "all"):
        return list(combinations(nodes, k))
    sets = [_parse_set(m) for m in row["members"]]
    if row["notation"] == "Jc":
        sets = [tuple(x for x in nodes if x not in s) for s in sets]
    return sorted(sets)


def golden_csv(system: str, corrected: bool = True) -> str:
    rows = read_transcription()
    if corrected:
        rows = apply_corrections(rows)
    rows = [r for r in rows if r["system"] == system]
    rows.sort(key=lambda r: (r["k"], expand(r)[0]))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in rows:
        w.writerow([r["k"], system, r["name"], " ".join("".join(map(str, j)) for j in expand(r)), r["count"]])
    return buf.getvalue()
