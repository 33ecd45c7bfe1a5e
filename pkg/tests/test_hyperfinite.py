import itertools
import math
import random

import networkx as nx
import numpy as np
import pytest

from localtest import NoAdmissibleR, SearchBudgetExceeded, build_graph, generate
from localtest.hyperfinite import (
    LocalCutTable,
    PartitionCut,
    build_local_cut_table,
    choose_R,
    count_connected_sets,
    cut_bound,
    enumerate_connected_sets,
    find_partition_exact,
    find_partition_greedy,
    iter_all_connected_sets,
    pair_code,
    prepare_local_cut,
    q_profile,
    radius_cap,
    sample_local_cut,
    selection_probability,
    transfer_cut,
)
from localtest.minors import small_graph


def _brute_connected_sets(g, k):
    h = g.to_networkx()
    out = set()
    for size in range(1, k + 1):
        for s in itertools.combinations(range(g.n), size):
            if nx.is_connected(h.subgraph(s)):
                out.add(frozenset(s))
    return out


def _brute_min_cut(g, k):
    for size in range(len(g.edges) + 1):
        for drop in itertools.combinations(g.edges, size):
            h = g.remove_edges(drop).to_networkx()
            if max(len(c) for c in nx.connected_components(h)) <= k:
                return size
    raise AssertionError


# -- connected sets --------------------------------------------------------

def test_triangle_connected_sets_at_vertex(triangle):
    sets = enumerate_connected_sets(triangle, 0, 3)
    assert sorted(map(sorted, sets)) == [[0], [0, 1], [0, 1, 2], [0, 2]]


def test_path_center_small_sets():
    p5 = generate("path(5)")
    assert sorted(map(sorted, enumerate_connected_sets(p5, 2, 2))) == [[1, 2], [2], [2, 3]]
    assert enumerate_connected_sets(p5, 2, 1) == [frozenset({2})]


def test_connected_sets_match_brute_force():
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randint(3, 9)
        g = generate(f"random_planar({n},4)", seed=rng.randrange(10**6))
        k = rng.randint(1, 4)
        brute = _brute_connected_sets(g, k)
        mine = list(iter_all_connected_sets(g, k))
        assert len(mine) == len(set(mine))
        assert set(mine) == brute
        assert count_connected_sets(g, k) == len(brute)
        for v in range(n):
            assert set(enumerate_connected_sets(g, v, k)) == {s for s in brute if v in s}


def test_count_limit_stops_early():
    assert count_connected_sets(generate("grid(20,20)"), 4, limit=50) == 51


# -- partitions --------------------------------------------------------------

def test_exact_small_examples():
    assert find_partition_exact(generate("cycle(9)"), 3).size == 3
    assert find_partition_exact(generate("path(4)"), 2).size == 1
    assert find_partition_exact(generate("complete(4)"), 4).size == 0
    assert find_partition_exact(generate("complete(4)"), 1).size == 6


def test_exact_matches_brute_force():
    rng = random.Random(5)
    for _ in range(15):
        n = rng.randint(4, 8)
        g = generate(f"random_planar({n},3)", seed=rng.randrange(10**6))
        if len(g.edges) > 11:
            continue
        k = rng.randint(1, 3)
        assert find_partition_exact(g, k).size == _brute_min_cut(g, k)


def test_exact_guard():
    with pytest.raises(SearchBudgetExceeded):
        find_partition_exact(generate("grid(5,5)"), 3)


def test_greedy_is_valid_and_never_beats_exact():
    rng = random.Random(9)
    for _ in range(20):
        n = rng.randint(6, 16)
        g = generate(f"random_planar({n},4)", seed=rng.randrange(10**6))
        k = rng.randint(2, 5)
        greedy = find_partition_greedy(g, k, seed=1)
        greedy.validate(g)
        assert find_partition_exact(g, k).size <= greedy.size


def test_greedy_grid_quality():
    cut = find_partition_greedy(generate("grid(30,30)"), 9)
    assert cut.size == 540 and max(map(len, cut.components)) <= 9


def test_partition_from_parts_and_edges():
    c6 = generate("cycle(6)")
    cut = PartitionCut.from_parts(c6, [[0, 1, 2], [3, 4, 5]], 3)
    assert cut.cut_edges == frozenset({(2, 3), (0, 5)})
    assert cut.size_histogram() == {3: 2}
    assert cut.delta == pytest.approx(2 / 6)
    # edges internal to a component are dropped
    tri = small_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert PartitionCut.from_edges(tri, [(0, 1)], 3).cut_edges == frozenset()
    with pytest.raises(ValueError):
        PartitionCut.from_edges(c6, [(0, 1)], 3)


# -- tables and q ------------------------------------------------------------

def test_triangle_table_values(triangles):
    cut = PartitionCut.from_edges(triangles, [], 3)
    table = build_local_cut_table(triangles, cut, 3, mode="complete")
    sizes = {}
    for code, p in table.rows.items():
        size = len(table._members[code][0])
        sizes[size] = p
    assert sizes == {1: 0.0, 2: 0.0, 3: 1.0}
    prof = q_profile(triangles, table)
    assert np.all(prof.values == 1.0) and prof.low_count == 0


def test_unknown_type_defaults_to_one():
    table = LocalCutTable(R=1, k=2, d=2)
    assert table.p(b"never seen") == 1.0


def test_zero_table_makes_every_vertex_low(triangles):
    cut = PartitionCut.from_edges(triangles, [], 3)
    table = build_local_cut_table(triangles, cut, 3, mode="complete").with_rows(0.0)
    assert q_profile(triangles, table).low_count == triangles.n
    sample = sample_local_cut(triangles, table, 0.1, seed=0)
    assert sample.size == triangles.num_edges and sample.covered == 0


def test_boundary_identity_is_twice_cut():
    for spec, k, R in [("cycle(12)", 3, 3), ("grid(6,6)", 4, 4), ("random_planar(40,4)", 3, 3)]:
        g = generate(spec, seed=2)
        cut = find_partition_greedy(g, k)
        table = build_local_cut_table(g, cut, R, mode="complete")
        assert table.boundary_identity() == pytest.approx(2 * cut.size, abs=1e-9)


def test_pair_code_is_isomorphism_invariant():
    g = generate("cycle(12)")
    assert pair_code(g, frozenset({0, 1}), 3) == pair_code(g, frozenset({5, 6}), 3)
    assert pair_code(g, frozenset({0, 1}), 3) != pair_code(g, frozenset({0}), 3)
    assert pair_code(g, frozenset({0, 1}), 2) != pair_code(g, frozenset({0, 1}), 3)


def test_positive_table_agrees_with_complete_on_source():
    g = generate("grid(8,8)")
    cut = find_partition_greedy(g, 4)
    full = build_local_cut_table(g, cut, 4, mode="complete")
    pos = build_local_cut_table(g, cut, 4, mode="positive")
    assert not pos.complete
    assert np.allclose(q_profile(g, full).values, q_profile(g, pos).values)
    for code, p in pos.rows.items():
        assert full.rows[code] == pytest.approx(p)


def test_json_round_trip():
    g = generate("cycle(12)")
    cut = PartitionCut.from_parts(g, [[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11]], 3)
    table = build_local_cut_table(g, cut, 3, mode="complete")
    back = LocalCutTable.from_json(table.to_json())
    assert back == table


def test_table_rejects_oversized_cut():
    g = generate("cycle(6)")
    cut = PartitionCut.from_parts(g, [[0, 1, 2], [3, 4, 5]], 3)
    with pytest.raises(ValueError):
        build_local_cut_table(g, cut, 2, k=2)


# -- radius search -----------------------------------------------------------

def test_radius_cap():
    assert radius_cap(3, 4, 0.1) == 12
    assert radius_cap(1, 1, 100) == 0
    assert radius_cap(2, 2, 1, budget=10**6) == 10 * 2 * 2**5


def test_choose_R_cycle():
    g = generate("cycle(12)")
    cut = PartitionCut.from_parts(g, [[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11]], 3)
    choice = choose_R(g, cut, 3, 0.3)
    assert choice.R == 3 and choice.table.complete
    assert choice.table.boundary_identity() == pytest.approx(8)


def test_choose_R_failure_carries_best():
    g = generate("grid(30,30)")
    cut = find_partition_greedy(g, 9)
    with pytest.raises(NoAdmissibleR) as info:
        choose_R(g, cut, 9, 0.1, max_radius=9)
    assert info.value.best is not None


# -- randomized cut ----------------------------------------------------------

def test_selection_probability():
    assert selection_probability([0.0, 0.01, 1.0], 0.1, 4).tolist() == pytest.approx(
        [0.0, 2 * math.log(80) * 0.01, 1.0]
    )
    assert selection_probability([0.0, 0.2], 0.0, 4).tolist() == [0.0, 1.0]


def test_cut_components_at_most_k_and_counts_add_up():
    g = generate("grid(12,12)")
    cut = find_partition_greedy(g, 4)
    table = build_local_cut_table(g, cut, 4, mode="complete")
    proc = prepare_local_cut(g, table, 0.2)
    rng = np.random.default_rng(0)
    for _ in range(30):
        s = proc.draw(rng)
        assert s.max_component <= 4
        assert s.size <= s.first_part + s.leftover
        assert len(s.edges(g)) == s.size


def test_cut_is_exact_when_every_component_is_distinguished(triangles):
    cut = PartitionCut.from_edges(triangles, [], 3)
    table = build_local_cut_table(triangles, cut, 3, mode="complete")
    assert sample_local_cut(triangles, table, 0.1, seed=3).size == 0


def test_transfer_to_isomorphic_copy_matches_source():
    g = generate("cycle(12)")
    perm = list(range(12))
    random.Random(1).shuffle(perm)
    h = build_graph(12, 2, [(perm[u], perm[v]) for u, v in g.edges])
    cut = PartitionCut.from_parts(g, [[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11]], 3)
    table = build_local_cut_table(g, cut, 3, mode="complete")
    a = [sample_local_cut(g, table, 0.1, seed=s).size for s in range(50)]
    b = [transfer_cut(h, table, 0.1, seed=s).size for s in range(50)]
    assert np.mean(a) == np.mean(b)


def test_transfer_selects_everything_with_unknown_types():
    # C4 has no pair types in common with a triangle table, so every set defaults to 1
    tri = small_graph(3, [(0, 1), (1, 2), (0, 2)])
    cut = PartitionCut.from_edges(tri, [], 3)
    table = build_local_cut_table(tri, cut, 3, mode="complete")
    c4 = generate("cycle(4)")
    s = transfer_cut(c4, table, 0.1, seed=0)
    assert s.covered == 4 and s.leftover == 0 and s.max_component <= 3


def test_transfer_requires_complete_table():
    g = generate("grid(6,6)")
    table = build_local_cut_table(g, find_partition_greedy(g, 3), 3, mode="positive")
    with pytest.raises(ValueError):
        transfer_cut(generate("grid(6,7)"), table, 0.1)


def test_cut_bound():
    assert cut_bound(0.5, 4, 100) == pytest.approx(4 * 0.5 * math.log(24) * 100)
