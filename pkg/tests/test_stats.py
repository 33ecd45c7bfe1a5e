import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localtest import (
    FrequencyVector,
    QueryOracle,
    RadiusMismatch,
    build_graph,
    canonical_form,
    exact_frequency,
    extract_ball,
    generate,
    rho_distance,
    rooted_isomorphic,
    sampled_frequency,
)
from localtest.stats import exploration_budget, max_ball_size, rho, rho_breakdown


def _path3_center_code():
    return canonical_form(extract_ball(generate("path(3)"), 1, 1)).code


def _path2_end_code():
    return canonical_form(extract_ball(generate("path(2)"), 0, 1)).code


def test_cycle_ball_is_rooted_path(c12):
    b = extract_ball(c12, 5, 1)
    assert b.size == 3 and len(b.edges) == 2 and b.depth == (0, 1, 1)
    assert canonical_form(b).code == _path3_center_code()


def test_radius_zero_is_single_vertex(c12):
    b = extract_ball(c12, 3, 0)
    assert b.nodes == (3,) and b.edges == ()


def test_grid_corner_ball():
    b = extract_ball(generate("grid(5,5)"), 0, 1)
    assert b.size == 3 and len(b.edges) == 2


def test_ball_is_induced():
    # the edge between two depth-1 vertices of a triangle must be kept
    b = extract_ball(build_graph(3, 2, [(0, 1), (1, 2), (0, 2)]), 0, 1)
    assert len(b.edges) == 3


def test_oracle_ball_matches_graph_ball_and_budget():
    g = generate("random_planar(300,4)", seed=3)
    for v in range(0, 300, 17):
        o = QueryOracle(g, port_seed=v)
        a = extract_ball(o, v, 2)
        assert o.queries_used <= g.d * a.size
        assert rooted_isomorphic(a, extract_ball(g, v, 2))
        o2 = QueryOracle(g)
        extract_ball(o2, v, 2, pad_to=exploration_budget(g.d, 2))
        assert o2.queries_used == exploration_budget(g.d, 2)


def test_max_ball_size():
    assert max_ball_size(3, 0) == 1
    assert max_ball_size(3, 2) == 10
    assert max_ball_size(2, 5) == 11
    assert max_ball_size(4, 1) == 5


def test_codes_equal_on_vertex_transitive(c12):
    assert canonical_form(extract_ball(c12, 0, 1)) == canonical_form(extract_ball(c12, 7, 1))


def test_codes_differ_cycle_vs_path_end(c12, p12):
    assert canonical_form(extract_ball(c12, 0, 1)) != canonical_form(extract_ball(p12, 0, 1))


def test_relabeling_keeps_code():
    rng = random.Random(0)
    g = generate("random_planar(200,4)", seed=1)
    for v in range(0, 200, 11):
        b = extract_ball(g, v, 2)
        rest = list(range(1, b.size))
        rng.shuffle(rest)
        nb = b.relabeled([0] + rest)
        assert canonical_form(nb).code == canonical_form(b).code
        assert rooted_isomorphic(nb, b)


def test_rooted_isomorphic_basic():
    p3 = generate("path(3)")
    center, end = extract_ball(p3, 1, 2), extract_ball(p3, 0, 2)
    assert rooted_isomorphic(center, center)
    assert not rooted_isomorphic(center, end)
    star = build_graph(4, 3, [(0, 1), (0, 2), (0, 3)])
    star2 = build_graph(4, 3, [(3, 0), (3, 1), (3, 2)])
    assert rooted_isomorphic(extract_ball(star, 0, 1), extract_ball(star2, 3, 1))


def test_exact_frequency_cycle_and_path(c12, p12):
    fc = exact_frequency(c12, 1)
    assert fc.entries == {_path3_center_code(): 1.0}
    fp = exact_frequency(p12, 1)
    assert fp.get(_path3_center_code()) == pytest.approx(10 / 12, abs=1e-15)
    assert fp.get(_path2_end_code()) == pytest.approx(2 / 12, abs=1e-15)
    assert fp.sample_count == 12


def test_radius_zero_single_type():
    f = exact_frequency(generate("random_planar(100,4)", seed=2), 0)
    assert list(f.entries.values()) == [1.0]


def test_frequencies_sum_to_one():
    for spec in ["grid(7,9)", "tree(120,3)", "random_planar(150,4)"]:
        for r in range(4):
            assert abs(exact_frequency(generate(spec, seed=1), r).total() - 1) < 1e-12


def test_rho_values(c12, p12):
    fc = exact_frequency(c12, 1)
    assert rho_distance(fc, fc) == 0
    assert rho_distance(fc, exact_frequency(p12, 1)) == pytest.approx(4 / 12, abs=1e-12)
    other = FrequencyVector(1, {b"x": 1.0}, 1)
    assert rho_distance(fc, other) == 2.0


def test_rho_radius_mismatch(c12):
    with pytest.raises(RadiusMismatch):
        rho_distance(exact_frequency(c12, 1), exact_frequency(c12, 2))


def test_cycles_agree_below_half_girth():
    c12, c24 = generate("cycle(12)"), generate("cycle(24)")
    for r in range(6):
        assert rho(c12, c24, r) == 0
    assert rho(c12, c24, 6) > 0


def test_breakdown_sorted(c12, p12):
    rows = rho_breakdown(exact_frequency(c12, 1), exact_frequency(p12, 1))
    contrib = [abs(a - b) for _, a, b in rows]
    assert contrib == sorted(contrib, reverse=True)
    assert math.fsum(contrib) == pytest.approx(4 / 12)


def test_json_round_trip():
    f = exact_frequency(generate("grid(6,6)"), 2)
    assert FrequencyVector.from_json(f.to_json()) == f


def test_sampled_frequency_single_type(c12):
    f = sampled_frequency(QueryOracle(c12), 1, 50, seed=1)
    assert f.entries == {_path3_center_code(): 1.0}
    one = sampled_frequency(QueryOracle(c12), 2, 1, seed=3)
    assert list(one.entries.values()) == [1.0]


def test_sampled_frequency_query_bound():
    g = generate("random_planar(400,4)", seed=5)
    o = QueryOracle(g)
    sampled_frequency(o, 2, 100, seed=2)
    assert o.queries_used <= 100 * max_ball_size(4, 2) * 4


@pytest.mark.slow
def test_sampled_path_end_concentration(p12):
    end = _path2_end_code()
    good = 0
    for seed in range(100):
        f = sampled_frequency(QueryOracle(p12), 1, 10_000, seed=seed)
        good += abs(f.get(end) - 2 / 12) <= 0.02
    assert good >= 95


def test_sampled_converges_in_median():
    g = generate("random_planar(500,4)", seed=8)
    exact = exact_frequency(g, 1)
    med = []
    for s in (100, 1000, 10_000):
        errs = [rho_distance(sampled_frequency(QueryOracle(g), 1, s, seed=t), exact) for t in range(7)]
        med.append(float(np.median(errs)))
    assert med[0] > med[1] > med[2]


_graphs = st.sampled_from(["grid(4,5)", "cycle(9)", "path(7)", "tree(15,3)", "random_planar(14,4)", "petersen"])


@settings(max_examples=30, deadline=None)
@given(a=_graphs, b=_graphs, c=_graphs, r=st.integers(0, 3))
def test_pseudometric_axioms(a, b, c, r):
    ga, gb, gc = (generate(x, seed=1) for x in (a, b, c))
    fa, fb, fc = (exact_frequency(x, r) for x in (ga, gb, gc))
    assert rho_distance(fa, fb) == pytest.approx(rho_distance(fb, fa), abs=1e-12)
    assert rho_distance(fa, fc) <= rho_distance(fa, fb) + rho_distance(fb, fc) + 1e-12
    assert rho_distance(fa, fa) == 0
    assert 0 <= rho_distance(fa, fb) <= 2 + 1e-12


def test_monotone_in_radius():
    pairs = [("grid(6,6)", "grid(8,5)"), ("tree(40,3)", "path(40)"), ("random_planar(60,4)", "grid(6,10)")]
    for a, b in pairs:
        vals = [rho(generate(a, seed=2), generate(b, seed=3), r) for r in range(5)]
        assert all(x <= y + 1e-12 for x, y in itertools.pairwise(vals))


def test_code_ignores_exploration_radius():
    # an isolated edge looks the same whether explored to depth 1 or 3
    g = build_graph(2, 1, [(0, 1)])
    near, far = extract_ball(g, 0, 1), extract_ball(g, 0, 3)
    assert rooted_isomorphic(near, far)
    assert canonical_form(near).code == canonical_form(far).code
    assert canonical_form(near) != canonical_form(far)
