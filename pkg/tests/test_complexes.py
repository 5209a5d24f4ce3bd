from __future__ import annotations

import pytest
from hypothesis import given, settings

from helpers import all_ideals, ideals
from monomial.complexes import (
    FVector,
    SimplicialComplex,
    f_vector,
    f_vector_bruteforce,
    facet_complex,
    facet_ideal,
    hilbert_function_bruteforce,
    hilbert_series,
    is_face,
    nonface_complex,
    nonface_facets_direct,
    nonface_ideal,
)
from monomial.ideal import SquareFreeIdeal
from monomial.vertexset import VertexSet, binomial


def members(complex_):
    return [f.members for f in complex_.facets]


def test_facet_complex_is_the_generators(five_variable_example):
    delta = facet_complex(five_variable_example)
    assert members(delta) == [(1, 2, 4), (1, 2, 5), (1, 4, 5), (2, 3, 5), (3, 4, 5)]
    assert delta.render() == "<{1,2,4}, {1,2,5}, {1,4,5}, {2,3,5}, {3,4,5}>"


def test_nonface_complex_of_five_variable_example(five_variable_example):
    delta = nonface_complex(five_variable_example)
    assert set(members(delta)) == {(2, 4, 5), (2, 3, 4), (1, 3, 5), (1, 3, 4), (1, 2, 3)}


def test_nonface_complex_of_degree3_example(degree3_example):
    delta = nonface_complex(degree3_example)
    assert len(delta.facets) == 10
    assert delta.dim == 2
    assert all(VertexSet(m, 6) not in degree3_example for m in delta.masks)


def test_nonface_complex_of_path():
    g = SquareFreeIdeal.of(4, [1, 2], [2, 3], [3, 4])
    assert set(members(nonface_complex(g))) == {(1, 3), (1, 4), (2, 4)}


def test_duality_matches_direct_search_above_cross_check_limit():
    g = SquareFreeIdeal.of(11, [1, 2], [3, 4, 5], [6, 11], [7, 8, 9, 10])
    assert nonface_complex(g, verify=False).facets == tuple(nonface_facets_direct(g))


def test_is_face():
    delta = SimplicialComplex.from_masks(4, [0b0011, 0b1100])
    assert is_face(delta, VertexSet.of(4, [1]))
    assert is_face(delta, VertexSet.empty(4))
    assert not is_face(delta, VertexSet.of(4, [2, 3]))
    assert VertexSet.of(4, [3, 4]) in delta


def test_fvector_examples(degree3_example, five_variable_example):
    assert f_vector(facet_complex(degree3_example)).counts == (6, 15, 10)
    assert f_vector(nonface_complex(degree3_example)).counts == (6, 15, 10)
    # the quoted literature values are wrong here; (5,9,5) and (5,10,5) are correct
    assert f_vector(facet_complex(five_variable_example)).counts == (5, 9, 5)
    assert f_vector(nonface_complex(five_variable_example)).counts == (5, 10, 5)
    triangle = SimplicialComplex.from_masks(3, [0b111])
    assert f_vector(triangle).counts == (3, 3, 1)


def test_fvector_of_empty_complex_and_full_simplex():
    empty = SimplicialComplex(3, ())
    fv = f_vector(empty)
    assert fv.counts == ()
    assert fv.dim == -1
    assert fv[-1] == 1
    assert empty.render() == "<{}>"
    full = SimplicialComplex.from_masks(6, [0b111111])
    assert f_vector(full).counts == tuple(binomial(6, k) for k in range(1, 7))


def test_fvector_indexing():
    fv = FVector((4, 3))
    assert fv[-1] == 1
    assert fv[0] == 4 and fv[1] == 3 and fv[5] == 0
    assert fv.render() == "(4, 3)"
    assert fv.within_bounds(4)
    assert not FVector((7,)).within_bounds(6)


def test_nonface_complex_of_maximal_ideal_is_empty_complex():
    g = SquareFreeIdeal.of(3, [1], [2], [3])
    delta = nonface_complex(g)
    assert delta.facets == ()
    assert f_vector(delta).counts == ()
    assert nonface_ideal(delta) == g


def test_facet_ideal_and_nonface_ideal_errors():
    with pytest.raises(ValueError):
        facet_ideal(SimplicialComplex(3, ()))
    with pytest.raises(ValueError):
        nonface_ideal(SimplicialComplex.from_masks(3, [0b111]))


def test_nonface_ideal_of_two_edges():
    delta = SimplicialComplex.from_masks(4, [0b0011, 0b1100])
    assert [g.members for g in nonface_ideal(delta).generators] == [(1, 3), (1, 4), (2, 3), (2, 4)]


def test_fvector_matches_bruteforce_on_corpus(corpus):
    for g in corpus:
        for delta in (facet_complex(g), nonface_complex(g)):
            assert f_vector(delta) == f_vector_bruteforce(delta), g


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_round_trips_exhaustive(n):
    for g in all_ideals(n):
        assert facet_ideal(facet_complex(g)) == g
        assert nonface_ideal(nonface_complex(g)) == g


@settings(max_examples=150, deadline=None)
@given(ideals(max_n=9))
def test_faces_of_nonface_complex_are_exactly_the_non_members(g):
    delta = nonface_complex(g)
    for m in range(1 << g.n):
        face = VertexSet(m, g.n)
        assert is_face(delta, face) == (face not in g)


@settings(max_examples=150, deadline=None)
@given(ideals(max_n=9))
def test_facet_complex_faces_lie_in_support(g):
    delta = facet_complex(g)
    assert delta.vertices == g.support()
    assert f_vector(delta)[0] == len(g.support())


def test_hilbert_series_of_degree3_example(degree3_example):
    fv = f_vector(nonface_complex(degree3_example))
    series = hilbert_series(fv, 6)
    assert series.expand(5) == [1, 6, 21, 46, 81, 126]
    for j in range(6):
        assert series.coefficient(j) == hilbert_function_bruteforce(degree3_example, j)
    reduced = series.reduced()
    assert reduced.denominator_power == 3
    assert reduced.expand(5) == series.expand(5)


def test_hilbert_series_of_all_quadrics():
    g = SquareFreeIdeal.of(4, [1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4])
    series = hilbert_series(f_vector(nonface_complex(g)), 4)
    assert series.expand(4) == [1, 4, 4, 4, 4]
    reduced = series.reduced()
    assert reduced.numerator == (1, 3)
    assert reduced.denominator_power == 1
    assert reduced.render() == "(1 + 3*t) / (1-t)^1"


def test_hilbert_series_of_single_variable():
    series = hilbert_series(FVector(()), 1)
    assert series.numerator == (1, -1)
    assert series.render() == "(1 - t) / (1-t)^1"
    assert series.expand(2) == [1, 0, 0]
    assert series.reduced().denominator_power == 0


def test_hilbert_series_rejects_impossible_fvector():
    with pytest.raises(ValueError):
        hilbert_series(FVector((7,)), 6)


@settings(max_examples=60, deadline=None)
@given(ideals(max_n=6, max_generators=6))
def test_hilbert_function_matches_monomial_count(g):
    series = hilbert_series(f_vector(nonface_complex(g)), g.n)
    for j in range(5):
        assert series.coefficient(j) == hilbert_function_bruteforce(g, j)


def test_degree3_nonface_facets_listed(degree3_example):
    listed = {(1, 3, 6), (1, 4, 6), (3, 4, 6), (1, 2, 6), (2, 5, 6), (4, 5, 6), (2, 4, 5), (1, 2, 4), (2, 3, 5), (1, 3, 5)}
    assert set(members(nonface_complex(degree3_example))) == listed


def test_small_round_trip_examples(five_variable_example):
    edge = SquareFreeIdeal.of(2, [1, 2])
    assert members(facet_complex(edge)) == [(1, 2)]
    assert members(nonface_complex(edge)) == [(1,), (2,)]
    assert nonface_ideal(SimplicialComplex.from_masks(2, [0b01, 0b10])) == edge
    dual = facet_ideal(nonface_complex(five_variable_example))
    assert {g.members for g in dual.generators} == {(2, 4, 5), (2, 3, 4), (1, 3, 5), (1, 3, 4), (1, 2, 3)}


def test_is_face_in_five_variable_facet_complex(five_variable_example):
    delta = facet_complex(five_variable_example)
    assert is_face(delta, VertexSet.of(5, [1, 4]))
    assert not is_face(delta, VertexSet.of(5, [1, 3]))


def test_hilbert_series_of_maximal_ideal_reduces_to_one():
    series = hilbert_series(f_vector(nonface_complex(SquareFreeIdeal.of(1, [1]))), 1)
    assert series.reduced().numerator == (1,)


def _pure_ideals_to_check(pure_corpus):
    exhaustive = [g for n in range(1, 6) for g in all_ideals(n) if g.pure_degree() is not None]
    return exhaustive + list(pure_corpus)


def test_facet_complex_faces_are_nonface_faces_below_top_dimension(pure_corpus):
    checked = 0
    for g in _pure_ideals_to_check(pure_corpus):
        d = g.pure_degree()
        facet, nonface = f_vector(facet_complex(g)), f_vector(nonface_complex(g))
        for i in range(d - 1):
            # every set of fewer than d vertices is a non-member, hence a face of δ_N
            assert facet[i] <= nonface[i] == binomial(g.n, i + 1), g
        checked += 1
    assert checked > 100


def test_nonface_top_count_is_the_non_generators(pure_corpus):
    for g in _pure_ideals_to_check(pure_corpus):
        d = g.pure_degree()
        assert f_vector(nonface_complex(g))[d - 1] == binomial(g.n, d) - g.s, g


def _face_set(delta):
    faces = set()
    for f in delta.masks:
        sub = f
        while True:
            faces.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & f
    return faces


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_face_membership_is_monotone(n):
    for g in all_ideals(n):
        for delta in (facet_complex(g), nonface_complex(g)):
            faces = _face_set(delta)
            for m in faces:
                rest = m
                while rest:
                    low = rest & -rest
                    assert m ^ low in faces, (g, m)
                    rest ^= low
            assert all(is_face(delta, VertexSet(m, n)) for m in faces)


@settings(max_examples=100, deadline=None)
@given(ideals(max_n=8))
def test_faces_by_size_match_fvector(g):
    for delta in (facet_complex(g), nonface_complex(g)):
        fv = f_vector(delta)
        assert delta.faces(0) == [VertexSet.empty(g.n)]
        for k in range(g.n):
            layer = delta.faces(k + 1)
            assert len(layer) == fv[k]
            assert all(len(f) == k + 1 and is_face(delta, f) for f in layer)
