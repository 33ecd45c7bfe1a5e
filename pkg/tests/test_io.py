import pytest

from localtest import DegreeExceeded, InvalidEdge, ParseError, generate, load_edge_list, save_edge_list
from localtest.io import parse_edge_list


def test_round_trip(tmp_path, triangle):
    path = tmp_path / "t.edges"
    save_edge_list(triangle, path)
    back = load_edge_list(path)
    assert back == triangle


def test_round_trip_larger(tmp_path):
    g = generate("random_planar(300,4)", seed=2)
    path = tmp_path / "g.edges"
    save_edge_list(g, path)
    assert load_edge_list(path) == g


def test_out_of_range_endpoint():
    with pytest.raises(InvalidEdge):
        parse_edge_list("3 2\n0 5\n")


def test_empty_edge_section():
    g = parse_edge_list("4 3\n")
    assert g.n == 4 and g.num_edges == 0


def test_comments_and_blank_lines():
    g = parse_edge_list("# header next\n3 2  # n d\n\n0 1\n1 2 # tail\n")
    assert g.edges == [(0, 1), (1, 2)]


def test_parse_error_has_line_number():
    with pytest.raises(ParseError) as info:
        parse_edge_list("3 2\n0 1\n1 x\n")
    assert info.value.line == 3


def test_unordered_pair_rejected():
    with pytest.raises(ParseError):
        parse_edge_list("3 2\n1 0\n")


def test_missing_header():
    with pytest.raises(ParseError):
        parse_edge_list("# nothing\n")


def test_degree_cap_enforced():
    with pytest.raises(DegreeExceeded):
        parse_edge_list("4 1\n0 1\n0 2\n")
