from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grskit.exact_core import (
    AmbientSpace,
    DimensionError,
    LinearMap,
    NotIndependentError,
    determinant,
    format_rat,
    inner,
    inverse,
    is_positive_definite,
    lin_comb,
    map_from_images,
    mat_mul,
    parse_rat,
    project_perp,
    rank,
    solve,
    vadd,
    vscale,
    vsub,
)

from .oracles import gauss_solve, rref_rank

rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def vecs(n):
    return st.tuples(*[rats] * n)


def mats(r, c):
    return st.tuples(*[vecs(c)] * r)


@st.composite
def spaces(draw, n=3):
    # B^T B + I is positive definite for every B
    b = draw(mats(n, n))
    gram = tuple(
        tuple(sum(b[k][i] * b[k][j] for k in range(n)) + (1 if i == j else 0) for j in range(n)) for i in range(n)
    )
    return AmbientSpace(n, gram)


def test_parse_and_format_round_trip():
    assert parse_rat("3/6") == Fraction(1, 2)
    assert parse_rat(" -4 ") == -4
    assert format_rat(Fraction(-6, 4)) == "-3/2"
    assert format_rat(Fraction(8, 4)) == "2"
    with pytest.raises(TypeError):
        parse_rat(True)
    with pytest.raises(TypeError):
        parse_rat(0.5)


@given(rats)
def test_format_parse_inverse(x):
    assert parse_rat(format_rat(x)) == x


@given(spaces(), vecs(3), vecs(3), vecs(3), rats, rats)
@settings(max_examples=60, deadline=None)
def test_inner_is_bilinear_and_symmetric(space, u, v, w, a, b):
    lhs = inner(space, vadd(vscale(a, u), vscale(b, v)), w)
    assert lhs == a * inner(space, u, w) + b * inner(space, v, w)
    assert inner(space, u, v) == inner(space, v, u)


@given(spaces(), st.lists(vecs(3), min_size=1, max_size=2), vecs(3))
@settings(max_examples=60, deadline=None)
def test_project_perp(space, i_set, v):
    if rref_rank(i_set) < len(i_set):
        with pytest.raises(NotIndependentError):
            project_perp(space, i_set, v)
        return
    p = project_perp(space, i_set, v)
    assert all(inner(space, x, p) == 0 for x in i_set)
    assert project_perp(space, i_set, p) == p
    # v - p lies in span(i_set)
    cols = [list(c) for c in zip(*i_set)]
    assert solve(cols, vsub(v, p)) is not None


@given(mats(4, 3), vecs(4))
@settings(max_examples=100, deadline=None)
def test_solve_matches_gauss_jordan(m, b):
    assert solve(m, b) == gauss_solve(m, b)


@given(mats(3, 3))
@settings(max_examples=100, deadline=None)
def test_rank_determinant_inverse(m):
    r = rank(m)
    assert r == rref_rank(m)
    d = determinant(m)
    assert (d == 0) == (r < 3)
    inv = inverse(m)
    if r == 3:
        ident = mat_mul(m, inv)
        assert ident == tuple(tuple(Fraction(int(i == j)) for j in range(3)) for i in range(3))
    else:
        assert inv is None


def test_determinant_known_values():
    assert determinant(((2, -1), (-1, 2))) == 3
    assert determinant(()) == 1
    # Cartan matrix of E8 is unimodular
    from grskit.catalog import gram_matrix

    assert determinant(gram_matrix("E8")) == 1


def test_positive_definite():
    assert is_positive_definite(((2, -1), (-1, 2)))
    assert not is_positive_definite(((1, 2), (2, 1)))
    with pytest.raises(ValueError):
        is_positive_definite(((1, 2), (0, 1)))
    with pytest.raises(ValueError):
        AmbientSpace(2, ((1, 0), (0, -1)))
    with pytest.raises(DimensionError):
        AmbientSpace(2, ((1,),))
    assert AmbientSpace(0, ()).dim == 0


def test_solve_edge_cases():
    assert solve(((1, 1), (2, 2)), (1, 2)) is None  # not unique
    assert solve(((1,), (1,)), (1, 2)) is None  # inconsistent
    assert solve((), ()) == ()
    with pytest.raises(DimensionError):
        solve(((1, 2),), (1, 2))


def test_linear_map_from_images():
    src = [(Fraction(1), Fraction(1)), (Fraction(0), Fraction(1))]
    img = [(Fraction(2), Fraction(0)), (Fraction(0), Fraction(3))]
    m = map_from_images(src, img)
    assert [m(v) for v in src] == img
    assert m.compose(m.inverse())(src[0]) == src[0]
    assert str(LinearMap(((Fraction(1, 2), Fraction(0)),))) == "[1/2 0]"
    with pytest.raises(NotIndependentError):
        map_from_images([src[0], src[0]], img)


def test_lin_comb():
    e = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    assert lin_comb([2, Fraction(1, 3)], e, 2) == (2, Fraction(1, 3))
