from math import comb

import pytest
from hypothesis import given, strategies as st

from freenov.errors import InvalidTableau, MalformedInput
from freenov.novikov import expand_word
from freenov.linalg import rank
from freenov.tableau import (
    NovikovDiagram,
    NovikovTableau,
    diagrams,
    enumerate_tableaux,
    multilinear_basis,
    partitions,
    validate,
    word,
    word_degree,
    word_multidegree,
)

from oracles import compositions, count_weight_minus_one


def T(*rows):
    return NovikovTableau(rows)


# -- validation ---------------------------------------------------------------

def test_valid_single_row():
    assert validate(T((2, 1, 3))) == (True, None)


def test_f2_violation_reports_positions():
    ok, why = validate(T((1, 3, 2)))
    assert not ok
    assert why.rule == "F2" and why.positions == ((1, 2), (1, 3))


def test_f1_violation():
    # rows of equal Young length 1: nose row (x1, x2) then (x3)... lengths r1 = r2 = 1
    ok, why = validate(T((1, 2), (3,)))
    assert not ok and why.rule == "F1"


def test_shape_errors():
    with pytest.raises(MalformedInput):
        T((1,), (2,))
    with pytest.raises(MalformedInput):
        T((1, 2), (3, 4, 5))
    with pytest.raises(MalformedInput):
        T((0, 1))


# -- words ----------------------------------------------------------------------

def test_word_examples():
    assert word(T((1,))) == 1
    assert word(T((1, 2, 3))) == ((1, 2), 3)
    assert word(T((2, 3), (1,))) == (1, (2, 3))


def test_word_of_invalid_tableau():
    with pytest.raises(InvalidTableau):
        word(T((1, 3, 2)))


# -- enumeration --------------------------------------------------------------

def test_enumerate_examples():
    assert [t.rows for t in enumerate_tableaux((1, 1))] == [((1, 2),), ((2, 1),)]
    assert len(enumerate_tableaux((1, 1, 1))) == 6
    assert [t.rows for t in enumerate_tableaux((1,))] == [((1,),)]


def test_trailing_zero_multidegree():
    assert enumerate_tableaux((1, 1, 0)) == enumerate_tableaux((1, 1))


def test_enumerate_errors():
    with pytest.raises(MalformedInput):
        enumerate_tableaux((0, 0))
    with pytest.raises(MalformedInput):
        enumerate_tableaux((1, -1))


@pytest.mark.parametrize("n", range(1, 7))
def test_multilinear_counts(n):
    # oracle: n-tuples with entries summing to n - 1 index weight -1 multilinear monomials
    assert len(multilinear_basis(n)) == comb(2 * n - 2, n - 1) == len(compositions(n - 1, n))


def multidegrees(max_total, max_n=None):
    out = []
    for total in range(1, max_total + 1):
        for n in range(1, (max_n or total) + 1):
            out.extend(md for md in compositions(total, n) if md[-1] > 0)
    return out


@pytest.mark.parametrize("md", multidegrees(5))
def test_enumeration_matches_monomial_count(md):
    tabs = enumerate_tableaux(md)
    assert len(tabs) == count_weight_minus_one(md)
    assert len(set(tabs)) == len(tabs)
    for t in tabs:
        assert validate(t)[0]
        assert t.multidegree(len(md)) == md
        w = word(t)
        assert word_degree(w) == t.degree
        assert word_multidegree(w, len(md)) == md


@pytest.mark.parametrize("md", [(1,) * 6, (2, 2, 2), (3, 2, 1), (6,), (2, 1, 1, 1, 1)])
def test_basis_property_degree_six(md):
    tabs = enumerate_tableaux(md)
    rows = [expand_word(word(t)).terms for t in tabs]
    assert len(tabs) == count_weight_minus_one(md)
    assert rank(rows) == len(tabs)


def test_enumeration_order_is_by_diagram_then_labels():
    tabs = enumerate_tableaux((1, 1, 1))
    shapes = [t.diagram.rows for t in tabs]
    assert shapes == sorted(shapes, reverse=True)
    for shape in set(shapes):
        same = [t.labels() for t in tabs if t.diagram.rows == shape]
        assert same == sorted(same)


# -- diagrams -------------------------------------------------------------------

def test_partitions_and_diagrams():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert [d.rows for d in diagrams(1)] == [(0,)]
    assert NovikovDiagram((2, 1)).columns() == (2, 1)
    assert NovikovDiagram((2, 1)).row_sizes() == (3, 1)
    assert NovikovDiagram((3, 1)).degree == 5


# -- JSON -------------------------------------------------------------------------

def test_json_example():
    t = NovikovTableau.from_json('{"rows": [[2,3],[1]], "nose_included": true}')
    assert t == T((2, 3), (1,))
    assert t.to_json() == {"rows": [[2, 3], [1]], "nose_included": True}


def test_json_without_nose():
    t = NovikovTableau.from_json({"rows": [[2], [1]], "nose_included": False, "nose": 3})
    assert t == T((2, 3), (1,))
    with pytest.raises(MalformedInput):
        NovikovTableau.from_json({"rows": [[2], [1]], "nose_included": False})
    with pytest.raises(MalformedInput):
        NovikovTableau.from_json("{not json")


@given(st.sampled_from(multidegrees(5, 3)), st.data())
def test_json_round_trip(md, data):
    t = data.draw(st.sampled_from(enumerate_tableaux(md)))
    assert NovikovTableau.from_json(t.to_json()) == t
