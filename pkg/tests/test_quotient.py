import random
from fractions import Fraction

import pytest

from grskit.catalog import RootSystemId, build_root_system
from grskit.exact_core import format_rat, project_perp
from grskit.grs_bases import cartan_matrix, enumerate_bases
from grskit.quotient import (
    catalog_quotient,
    classical_component_key,
    classical_form,
    classical_L,
    compose_quotients,
    fiber,
    parse_keep,
    project_base,
    quotient_bases,
    quotient_grs,
    quotient_name,
)

from . import checks, reference_values

F = Fraction


def test_f4_keep_24():
    q = catalog_quotient("F4", (2, 4))
    g = q.target
    assert len(g.roots) == reference_values.F4_24_ROOTS
    gram = g.space.gram
    assert format_rat(gram[0][0]) == reference_values.F4_24_GRAM["n2"]
    assert format_rat(gram[1][1]) == reference_values.F4_24_GRAM["n4"]
    assert format_rat(gram[0][1]) == reference_values.F4_24_GRAM["ip"]
    assert g.label == "F4^24"


def test_a4_13_cartan_matrix():
    # by hand: |a1|^2 = 3/2, |a3|^2 = 1, <a1,a3> = -1/2 after projecting off a2 and a4
    q = catalog_quotient("A4", (1, 3))
    assert q.target.space.gram == ((F(3, 2), F(-1, 2)), (F(-1, 2), F(1)))
    assert cartan_matrix(q.target_base).rows() == [["2", "-2/3"], ["-1", "2"]]


def test_names_and_keep_parsing():
    assert quotient_name(RootSystemId.parse("D12"), (3, 10)) == "D12^{3,10}"
    assert quotient_name(RootSystemId.parse("E8"), (1, 6, 8)) == "E8^168"
    assert parse_keep(RootSystemId.parse("B3"), [3, 1, 1]) == (1, 3)
    with pytest.raises(ValueError):
        catalog_quotient("B3", (0, 2))


def test_extreme_quotients():
    full = catalog_quotient("E6", range(1, 7)).target
    assert full.same_as(build_root_system("E6")[0])
    point = catalog_quotient("E6", ()).target
    assert point.rank == 0 and point.roots == {()}


def test_quotient_closure_over_all_subsets():
    assert checks.quotient_closure_failures() == []


def test_fibers_on_random_triples():
    assert checks.fiber_failures() == []


def test_zero_fiber_has_no_extremes():
    q = catalog_quotient("B3", (2,))
    f = fiber(q, (F(0),))
    assert f.minimum is None and len(f.members) > 1
    with pytest.raises(ValueError):
        fiber(q, (F(9),))


def test_functoriality_on_random_pairs():
    rng = random.Random(11)
    names = ["A5", "B4", "C4", "D5", "F4", "E6", "E7"]
    for _ in range(200):
        name = rng.choice(names)
        g, s = build_root_system(name)
        n = g.rank
        i_idx = sorted(rng.sample(range(n), rng.randint(0, n - 1)))
        rest = [k for k in range(n) if k not in i_idx]
        more = sorted(rng.sample(rest, rng.randint(0, len(rest))))
        q1 = quotient_grs(s, [s.simples[k] for k in i_idx])
        j_over_i = [q1.target_base.simples[q1.kept.index(k)] for k in more]
        composed = compose_quotients(q1, j_over_i)
        direct = quotient_grs(s, [s.simples[k] for k in sorted(i_idx + more)])
        assert composed.target.same_as(direct.target)
        assert composed.kept == direct.kept
        assert composed.fibers == direct.fibers


@pytest.mark.parametrize("name,removed", [("B3", (0,)), ("A3", (1,)), ("C3", (2,)), ("G2", (0,)), ("B3", (0, 1))])
def test_quotient_depends_on_i_only(name, removed):
    g, s = build_root_system(name)
    i_set = [s.simples[k] for k in removed]
    ref = {project_perp(g.space, i_set, r) for r in g.roots}
    others = [b for b in enumerate_bases(g) if set(i_set) <= set(b.simples)]
    assert len(others) >= 2
    for b in others:
        q = quotient_grs(b, i_set)
        assert {project_perp(g.space, i_set, r) for r in g.roots} == ref
        imgs = {tuple(sum(c * v for c, v in zip(q.project(r), col)) for col in zip(*q.projected_simples())) for r in g.roots}
        assert imgs == ref


def test_projected_bases_are_bases():
    q = catalog_quotient("B3", (1, 3))
    found = quotient_bases(q)
    g, s = build_root_system("B3")
    for b in enumerate_bases(g):
        pb = project_base(q, b)
        if set(q.i_subset) <= set(b.simples):
            assert pb in found
        else:
            assert pb is None


def test_delta_oracle_for_classical_quotients():
    assert checks.delta_oracle_failures() == []


@pytest.mark.parametrize(
    "family,l,j,L",
    [("A", 5, (2, 3), (2, 1, 3)), ("B", 5, (2, 5), (2, 3)), ("D", 8, (3, 5, 8), (3, 2, 3)), ("D", 6, (2, 5, 6), (2, 3, 1)), ("C", 4, (4,), (4,))],
)
def test_gap_sequences(family, l, j, L):
    assert classical_L(family, l, j) == L


def test_closed_form_tags():
    assert classical_form("C", 4, (2, 4)).type_tag == "I"
    assert classical_form("C", 4, (2, 3)).type_tag == "II"
    assert classical_form("D", 8, (3, 5, 8)).type_tag == "I"
    with pytest.raises(ValueError):
        classical_form("E", 6, (1,))


def test_component_key_separates_the_two_spin_ends():
    assert classical_component_key("D", 4, (3,)) != classical_component_key("D", 4, (4,))
    assert classical_component_key("D", 6, (2, 5)) != classical_component_key("D", 6, (2, 6))
    assert classical_component_key("D", 5, (4,)) == classical_component_key("D", 5, (5,))
