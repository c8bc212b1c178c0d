import random

import pytest

from stablenu.bipartite import (
    BipartiteMultigraph,
    bicontract,
    c4_contract,
    delete_edge,
    find_perfect_matching,
    from_bipartite,
    is_central,
    is_isomorphic_bipartite,
    is_perfect_matching,
    k22_doubled,
    to_bipartite,
)
from stablenu.digraph import Digraph, all_digraphs, complete, is_isomorphic, path, random_digraph
from stablenu.errors import ContractError, InputError
from stablenu.minors import M5, N4

L = lambda i: ("L", i)  # noqa: E731
R = lambda j: ("R", j)  # noqa: E731


def cycle_graph(k: int) -> BipartiteMultigraph:
    """Even cycle L0 R0 L1 R1 ... on k left and k right vertices."""
    counts = {}
    for i in range(k):
        counts[(i, i)] = 1
        counts[((i + 1) % k, i)] = 1
    return BipartiteMultigraph.from_counts(k, k, counts)


def test_to_bipartite_examples():
    G, M = to_bipartite(complete(2))
    assert G.counts == {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1}
    assert M == {(0, 0), (1, 1)}
    G, M = to_bipartite(Digraph.from_arcs(1, []))
    assert G.edges == (((0, 0), 1),) and M == {(0, 0)}
    G, _ = to_bipartite(path(2))
    assert G.n_left + G.n_right == 4 and len(G.edges) == 3


def test_from_bipartite_examples():
    K22 = BipartiteMultigraph.from_counts(2, 2, {(i, j): 1 for i in range(2) for j in range(2)})
    for M in ({(0, 0), (1, 1)}, {(0, 1), (1, 0)}):
        assert from_bipartite(K22, M) == complete(2)
    single = BipartiteMultigraph.from_counts(1, 1, {(0, 0): 1})
    assert from_bipartite(single, {(0, 0)}) == Digraph.from_arcs(1, [])
    assert from_bipartite(*to_bipartite(N4)) == N4
    with pytest.raises(InputError):
        from_bipartite(K22, {(0, 0)})
    doubled = BipartiteMultigraph.from_counts(1, 1, {(0, 0): 2})
    with pytest.raises(InputError):
        from_bipartite(doubled, {(0, 0)})


def test_round_trip():
    for n in range(4):
        for D in all_digraphs(n):
            assert from_bipartite(*to_bipartite(D)) == D
    rng = random.Random(2)
    for _ in range(100):
        D = random_digraph(rng.randint(4, 6), 0.4, rng)
        G, M = to_bipartite(D)
        perm = list(range(D.n))
        rng.shuffle(perm)
        # a relabelled matching of the same graph gives an isomorphic digraph
        assert is_isomorphic(from_bipartite(G, M), D)


def test_bicontract_examples():
    P = BipartiteMultigraph.from_counts(2, 1, {(0, 0): 1, (1, 0): 1})  # L0 - R0 - L1
    G, _ = bicontract(P, R(0))
    assert (G.n_left, G.n_right, G.edges) == (1, 0, ())
    G, _ = bicontract(cycle_graph(3), L(0))  # C6 -> C4
    assert is_isomorphic_bipartite(G, cycle_graph(2))
    star = BipartiteMultigraph.from_counts(1, 3, {(0, 0): 1, (0, 1): 1, (0, 2): 1})
    with pytest.raises(ContractError):
        bicontract(star, L(0))


def exhaust_degree_two(G: BipartiteMultigraph) -> BipartiteMultigraph:
    while True:
        v = next((v for v in G.vertices()
                  if len(G.neighbors(v)) == 2 and all(c == 1 for c in G.neighbors(v).values())), None)
        if v is None:
            return G
        G, _ = bicontract(G, v)


def test_n4_bicontracts_to_doubled_k22():
    G, _ = to_bipartite(N4)
    assert is_isomorphic_bipartite(exhaust_degree_two(G), k22_doubled())


def test_m5_reaches_doubled_k22():
    G = exhaust_degree_two(to_bipartite(M5)[0])
    (hub,) = [v for v in G.vertices() if G.degree(v) == 5]
    (single,) = [u for u, c in G.neighbors(hub).items() if c == 1]
    G = delete_edge(G, hub, single)
    assert is_isomorphic_bipartite(exhaust_degree_two(G), k22_doubled())


def test_c4_contract_examples():
    K22 = BipartiteMultigraph.from_counts(2, 2, {(i, j): 1 for i in range(2) for j in range(2)})
    G, _ = c4_contract(K22, (L(0), R(0), L(1), R(1)))
    assert (G.n_left, G.n_right, G.edges) == (1, 1, (((0, 0), 2),))
    plus = BipartiteMultigraph.from_counts(3, 3, {**K22.counts, (2, 2): 1})
    G, _ = c4_contract(plus, (L(0), R(0), L(1), R(1)))
    assert G.counts == {(0, 0): 2, (1, 1): 1}
    # the extra vertices L2, R2 are only joined through the cycle
    bad = BipartiteMultigraph.from_counts(3, 3, {**K22.counts, (2, 0): 1, (0, 2): 1})
    with pytest.raises(ContractError):
        c4_contract(bad, (L(0), R(0), L(1), R(1)))
    with pytest.raises(ContractError):
        c4_contract(plus, (L(0), R(0), L(2), R(1)))


def test_find_perfect_matching():
    K22 = BipartiteMultigraph.from_counts(2, 2, {(i, j): 1 for i in range(2) for j in range(2)})
    M = find_perfect_matching(K22)
    assert M is not None and len(M) == 2 and is_perfect_matching(K22, M)
    star = BipartiteMultigraph.from_counts(1, 3, {(0, 0): 1, (0, 1): 1, (0, 2): 1})
    assert find_perfect_matching(star) is None
    for D in all_digraphs(3):
        G, _ = to_bipartite(D)
        assert find_perfect_matching(G) is not None


def test_is_central():
    two = BipartiteMultigraph.from_counts(2, 2, {(0, 0): 1, (1, 1): 1})
    assert is_central(two, [L(0), R(0)])
    P3 = BipartiteMultigraph.from_counts(2, 1, {(0, 0): 1, (1, 0): 1})
    assert not is_central(P3, [R(0)])
    G, _ = to_bipartite(N4)
    b, c = 1, 2
    assert is_central(G, [L(b), R(c), L(c), R(b)])


def test_matching_preserved_by_contractions():
    rng = random.Random(5)
    for _ in range(300):
        nl = rng.randint(2, 4)
        counts = {(i, j): 1 for i in range(nl) for j in range(nl) if rng.random() < 0.45}
        G = BipartiteMultigraph.from_counts(nl, nl, counts)
        before = find_perfect_matching(G) is not None
        for v in G.vertices():
            nb = G.neighbors(v)
            if len(nb) == 2 and all(c == 1 for c in nb.values()):
                H, _ = bicontract(G, v)
                assert (find_perfect_matching(H) is not None) == before
        for i in range(nl):
            for k in range(nl):
                for j in range(nl):
                    for m in range(nl):
                        if i == k or j == m:
                            continue
                        cyc = (L(i), R(j), L(k), R(m))
                        try:
                            H, _ = c4_contract(G, cyc)
                        except ContractError:
                            continue
                        assert (find_perfect_matching(H) is not None) == before
