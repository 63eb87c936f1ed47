"""A walk through one quotient: F4 with the nodes 2 and 4 kept.

Run with ``python3 demos/quotient_tour.py``.
"""

# %% build F4 and project away the simple roots 1 and 3
from grskit.catalog import build_root_system
from grskit.classify import classify_rank2, isomorphic
from grskit.crosscheck import resolve
from grskit.exact_core import format_rat, format_vec
from grskit.grs_core import highest_root
from grskit.quotient import catalog_quotient, fiber

f4, base = build_root_system("F4")
print(f"F4 has {len(f4.roots) - 1} nonzero roots")

q = catalog_quotient("F4", (2, 4))
g = q.target
print(f"{g.label}: {len(g.roots) - 1} nonzero roots")
print("Gram matrix on the projected simple roots:")
for row in g.space.gram:
    print("  ", " ".join(format_rat(x) for x in row))

# %% every quotient root has a fiber of parent roots; it is a lattice with a min and a max
for nu in sorted(q.fibers, reverse=True):
    if not any(nu) or min(nu) < 0:
        continue
    f = fiber(q, nu)
    print(f"  {format_vec(nu)}: {len(f.members)} roots, {format_vec(base.coords(f.minimum))} .. {format_vec(base.coords(f.maximum))}")

# %% the quotient is not reduced: some roots have doubles
top = highest_root(g, q.target_base)
print("highest root in S/I coordinates:", format_vec(q.target_base.coords(top)))
c = classify_rank2(g)
print(f"rank 2 family {c}, witness {c.witness}")

# %% the same shape shows up inside E7 and E8
for other in ("E7,2^III", "E8,2^V", "F4,2^II"):
    w = isomorphic(g, resolve(other))
    print(f"F4^24 ~= {other}:", "no" if w is None else f"yes, via {w}")
