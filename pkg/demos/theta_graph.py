"""Theta-moves, the graphs they generate, and the component tables.

Run with ``python3 demos/theta_graph.py``.
"""

# %% one move in E8: J = {1,6,8} with pivot 8
from grskit.quograph import build_graph, table_csv, theta_iso_witness, theta_move

mv = theta_move("E8", (1, 6, 8), 8)
print("image:", mv.image, "new pivot:", mv.new_pivot)
print("diagram pieces of K:", mv.involution.types)
print("isometry between the quotients:", theta_iso_witness(mv))

# %% the graph on 2-subsets of F4 splits into four components
gr = build_graph("F4", 2)
for comp in gr.components:
    print("  component:", comp)
print(gr.to_dot())

# %% each component is one row of the table; the sizes agree across members
print(table_csv("F4"))

# %% theta-moves are involutive: moving back at the new pivot returns J
for j in [(1, 2, 3), (2, 5, 7), (1, 4, 6)]:
    for p in j:
        m = theta_move("E7", j, p)
        assert theta_move("E7", m.image, m.new_pivot).image == j
print("all sampled E7 moves are undone by their reverse")
