import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dmrealize.graph import WeightedGraph, generate_kneser
from dmrealize.io import (
    FormatError,
    dump_graph,
    dump_matrix,
    format_rational,
    graph_from_edgelist,
    graph_from_json,
    matrix_from_csv,
    matrix_from_json,
    matrix_to_json,
    parse_rational,
    read_graph,
    read_matrix,
    split_labels,
    write_graph,
    write_matrix,
)
from dmrealize.metric import DistanceMatrix, all_pairs_distances


@given(st.fractions(min_value=0))
def test_rational_round_trip(x):
    assert parse_rational(format_rational(x)) == x


@given(st.integers(0, 10**6), st.integers(0, 6), st.integers(0, 6))
def test_decimal_round_trip(p, a, b):
    x = Fraction(p, 2**a * 5**b)
    text = format_rational(x, decimal=True)
    assert "/" not in text and Fraction(text) == x


def test_decimal_examples():
    assert format_rational(Fraction(3, 2), decimal=True) == "1.5"
    assert format_rational(Fraction(1, 40), decimal=True) == "0.025"
    assert format_rational(Fraction(7), decimal=True) == "7"
    with pytest.raises(ValueError):
        format_rational(Fraction(1, 3), decimal=True)


@pytest.mark.parametrize("bad", ["", "abc", "1/0", "1e3", "1/2/3", "0x10"])
def test_parse_rational_rejects(bad):
    with pytest.raises(FormatError):
        parse_rational(bad)


def test_parse_rational_decimal_is_exact():
    assert parse_rational("0.1") == Fraction(1, 10)
    assert parse_rational("3/6") == Fraction(1, 2)


def test_split_labels_keeps_braces():
    assert split_labels(" {1,2,3},{4,5,6}, u0") == ["{1,2,3}", "{4,5,6}", "u0"]


def test_edgelist_round_trip_kneser():
    g = generate_kneser(7, 3)
    assert graph_from_edgelist(dump_graph(g)) == g


def test_graph_json_round_trip(petersen):
    g = petersen.scaled(Fraction(7, 3))
    assert graph_from_json(json.loads(dump_graph(g, "x.json"))) == g


@given(st.lists(st.fractions(min_value=Fraction(1, 100), max_value=100), min_size=1, max_size=8))
def test_files_round_trip(tmp_path_factory, weights):
    tmp = tmp_path_factory.mktemp("rt")
    g = WeightedGraph.from_edges([f"x{i}" for i in range(len(weights) + 1)],
                                 [(i, i + 1, w) for i, w in enumerate(weights)])
    d = all_pairs_distances(g)
    for ext in ("txt", "json"):
        write_graph(tmp / f"g.{ext}", g)
        assert read_graph(tmp / f"g.{ext}") == g
    for ext in ("csv", "json"):
        write_matrix(tmp / f"d.{ext}", d)
        assert read_matrix(tmp / f"d.{ext}") == d
        # print/parse identity
        assert dump_matrix(read_matrix(tmp / f"d.{ext}"), f"d.{ext}") == (tmp / f"d.{ext}").read_text()


def test_edgelist_errors_have_positions():
    with pytest.raises(FormatError) as exc:
        graph_from_edgelist("#vertices: a,b\na\tb\tx/2\n", "g.txt")
    assert (exc.value.line, exc.value.column) == (2, 5)
    assert "g.txt:2:5:" in str(exc.value)
    with pytest.raises(FormatError) as exc:
        graph_from_edgelist("#vertices: a,b\na\tq\t1\n")
    assert (exc.value.line, exc.value.column) == (2, 3)
    with pytest.raises(FormatError) as exc:
        graph_from_edgelist("a\tb\t1\n")
    assert exc.value.line == 1
    with pytest.raises(FormatError):
        graph_from_edgelist("#vertices: a,b\na\tb\t1\nb\ta\t2\n")
    with pytest.raises(FormatError):
        graph_from_edgelist("#vertices: a,b\na\tb\n")
    with pytest.raises(FormatError):
        graph_from_edgelist("#vertices: a,b\na\tb\t0\n")


def test_matrix_csv_errors():
    with pytest.raises(FormatError) as exc:
        matrix_from_csv("a,b\n0,1\n1,zz\n")
    assert (exc.value.line, exc.value.column) == (3, 2)
    with pytest.raises(FormatError):
        matrix_from_csv("a,b\n0,1\n")
    with pytest.raises(FormatError):
        matrix_from_csv("a,b\n0,1,2\n1,0\n")


def test_matrix_json_form(petersen_matrix):
    obj = matrix_to_json(petersen_matrix)
    assert set(obj) == {"labels", "rows"}
    assert matrix_from_json(obj) == petersen_matrix
    with pytest.raises(FormatError):
        matrix_from_json({"labels": ["a"]})


def test_matrix_csv_accepts_decimals():
    d = matrix_from_csv("a,b\n0,1.25\n5/4,0\n")
    assert d == DistanceMatrix(("a", "b"), [[0, Fraction(5, 4)], [Fraction(5, 4), 0]])


def test_bad_json_position(tmp_path):
    p = tmp_path / "g.json"
    p.write_text('{"labels": [}')
    with pytest.raises(FormatError) as exc:
        read_graph(p)
    assert exc.value.line == 1
