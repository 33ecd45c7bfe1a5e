import itertools
import random

from localtest.canon import canonical_code, canonical_labeling, rooted_isomorphic


def _adj(n, edges):
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def _permute(n, edges, perm):
    return [(perm[u], perm[v]) for u, v in edges]


def test_petersen_relabelings_share_code():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges = outer + spokes + inner
    base = canonical_code(_adj(10, edges), [0] * 10)
    rng = random.Random(1)
    for _ in range(20):
        perm = list(range(10))
        rng.shuffle(perm)
        assert canonical_code(_adj(10, _permute(10, edges, perm)), [0] * 10) == base


def test_colours_are_respected():
    adj = _adj(3, [(0, 1), (1, 2)])
    assert canonical_code(adj, [0, 1, 1]) != canonical_code(adj, [1, 0, 1])
    assert canonical_code(adj, [1, 1, 0]) == canonical_code(adj, [0, 1, 1])


def test_labeling_is_a_permutation():
    adj = _adj(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])
    pos, _ = canonical_labeling(adj, [0] * 6)
    assert sorted(pos) == list(range(6))


def test_all_graphs_on_five_vertices_against_backtracking():
    # every labelled graph on 5 vertices: equal codes iff isomorphic
    pairs = list(itertools.combinations(range(5), 2))
    graphs = []
    for mask in range(1 << len(pairs)):
        es = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        graphs.append(_adj(5, es))
    codes = [canonical_code(a, [0] * 5) for a in graphs]
    assert len(set(codes)) == 34
    rng = random.Random(3)
    for _ in range(3000):
        i, j = rng.randrange(len(graphs)), rng.randrange(len(graphs))
        iso = any(rooted_isomorphic(graphs[i], 0, graphs[j], r) for r in range(5))
        assert iso == (codes[i] == codes[j])


def test_strongly_regular_pair_distinguished():
    # 4x4 rook graph and the Shrikhande graph share parameters (16,6,2,2)
    rook = [(a, b) for a in range(16) for b in range(a + 1, 16) if a // 4 == b // 4 or a % 4 == b % 4]

    def sh(x, y):
        return 4 * (x % 4) + (y % 4)

    shr = set()
    for x in range(4):
        for y in range(4):
            for dx, dy in [(1, 0), (0, 1), (1, 1)]:
                u, v = sh(x, y), sh(x + dx, y + dy)
                shr.add((min(u, v), max(u, v)))
    a = canonical_code(_adj(16, rook), [0] * 16)
    b = canonical_code(_adj(16, sorted(shr)), [0] * 16)
    assert a != b
    assert not rooted_isomorphic(_adj(16, rook), 0, _adj(16, sorted(shr)), 0)
