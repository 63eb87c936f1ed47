"""Bucket every rank 2 quotient of the exceptional systems by family.

Run with ``python3 demos/rank2_zoo.py``.
"""

# %% classify the 71 rank 2 quotients of G2, F4, E6, E7, E8
from collections import defaultdict
from fractions import Fraction
from itertools import combinations

from grskit.classify import FAMILIES, classify_rank2
from grskit.crosscheck import reduced_rank2
from grskit.grs_bases import enumerate_bases
from grskit.quotient import catalog_quotient

buckets = defaultdict(list)
for x in ("G2", "F4", "E6", "E7", "E8"):
    for j in combinations(range(1, int(x[1:]) + 1), 2):
        c = classify_rank2(catalog_quotient(x, j).target)
        buckets[c.family].append(f"{x}^{j[0]}{j[1]}")

for fam in FAMILIES:
    if buckets[fam]:
        print(f"{fam:8} {', '.join(buckets[fam])}")
print(sum(len(v) for v in buckets.values()), "quotients")

# %% reduced systems: a 1(i) system has 6 bases, a 1(ii) system 8
g, named = reduced_rank2("1(i)", -1, Fraction(-1, 2))
print(g.label, len(enumerate_bases(g)), "bases")
g, named = reduced_rank2("1(ii)", -3)
print(g.label, len(enumerate_bases(g)), "bases")
