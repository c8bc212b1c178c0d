"""Bipartite multigraphs with perfect matchings and their digraph dictionary.

Vertices are pairs ``(side, index)`` with side ``"L"`` (the ``v-`` copies)
or ``"R"`` (the ``v+`` copies).  Edges are left-right pairs ``(i, j)`` with
a multiplicity.  A matching is a set of such pairs, one copy each.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Optional

from .digraph import Digraph
from .errors import ContractError, InputError

Vertex = tuple[str, int]
Edge = tuple[int, int]


@dataclass(frozen=True)
class BipartiteMultigraph:
    n_left: int
    n_right: int
    edges: tuple[tuple[Edge, int], ...] = ()  # sorted ((i, j), multiplicity)

    def __post_init__(self):
        prev = None
        for (i, j), mult in self.edges:
            if not (0 <= i < self.n_left and 0 <= j < self.n_right):
                raise InputError(f"edge {(i, j)} out of range")
            if mult < 1:
                raise InputError(f"edge {(i, j)} has multiplicity {mult}")
            if prev is not None and (i, j) <= prev:
                raise InputError("edges must be sorted and listed once")
            prev = (i, j)

    @classmethod
    def from_counts(cls, n_left: int, n_right: int, counts: dict[Edge, int]) -> "BipartiteMultigraph":
        return cls(n_left, n_right, tuple(sorted((e, c) for e, c in counts.items() if c > 0)))

    @property
    def counts(self) -> dict[Edge, int]:
        return dict(self.edges)

    def multiplicity(self, i: int, j: int) -> int:
        return self.counts.get((i, j), 0)

    def vertices(self) -> list[Vertex]:
        return [("L", i) for i in range(self.n_left)] + [("R", j) for j in range(self.n_right)]

    def neighbors(self, v: Vertex) -> dict[Vertex, int]:
        side, x = v
        if side == "L":
            return {("R", j): c for (i, j), c in self.edges if i == x}
        return {("L", i): c for (i, j), c in self.edges if j == x}

    def degree(self, v: Vertex) -> int:
        return sum(self.neighbors(v).values())


PerfectMatching = frozenset  # of Edge


def _edge(a: Vertex, b: Vertex) -> Edge:
    if a[0] == b[0]:
        raise InputError(f"{a} and {b} lie on the same side")
    return (a[1], b[1]) if a[0] == "L" else (b[1], a[1])


def to_bipartite(D: Digraph) -> tuple[BipartiteMultigraph, PerfectMatching]:
    """Split each vertex v into v- (left v) and v+ (right v)."""
    counts = {(v, v): 1 for v in range(D.n)}
    for u, w in D.arcs:
        counts[(u, w)] = 1
    return BipartiteMultigraph.from_counts(D.n, D.n, counts), frozenset((v, v) for v in range(D.n))


def is_perfect_matching(G: BipartiteMultigraph, M: Iterable[Edge]) -> bool:
    M = list(M)
    if G.n_left != G.n_right or len(M) != G.n_left:
        return False
    counts = G.counts
    lefts = {i for i, _ in M}
    rights = {j for _, j in M}
    return len(lefts) == len(M) == len(rights) and all(counts.get(e, 0) >= 1 for e in M)


def from_bipartite(G: BipartiteMultigraph, M: Iterable[Edge]) -> Digraph:
    """D(G, M): vertex i is the matched pair of left i; arcs from non-matching edges.

    A second copy of a matching edge would encode an arc from a vertex to
    itself and is rejected.
    """
    M = frozenset(M)
    if not is_perfect_matching(G, M):
        raise InputError("M is not a perfect matching of G")
    owner = {j: i for i, j in M}
    arcs = []
    for (i, j), mult in G.edges:
        if (i, j) in M:
            if mult > 1:
                raise InputError(f"parallel copy of matching edge {(i, j)}")
            continue
        arcs.append((i, owner[j]))
    return Digraph.from_arcs(G.n_left, arcs)


def find_perfect_matching(G: BipartiteMultigraph) -> Optional[PerfectMatching]:
    """Augmenting-path search; None when no perfect matching exists."""
    if G.n_left != G.n_right:
        return None
    adj: list[list[int]] = [[] for _ in range(G.n_left)]
    for (i, j), _ in G.edges:
        adj[i].append(j)
    match_right: list[Optional[int]] = [None] * G.n_right

    def augment(i: int, visited: set[int]) -> bool:
        for j in adj[i]:
            if j in visited:
                continue
            visited.add(j)
            if match_right[j] is None or augment(match_right[j], visited):
                match_right[j] = i
                return True
        return False

    for i in range(G.n_left):
        if not augment(i, set()):
            return None
    return frozenset((i, j) for j, i in enumerate(match_right))


def delete_vertices(G: BipartiteMultigraph, H: Iterable[Vertex]) -> tuple[BipartiteMultigraph, dict[Vertex, Vertex]]:
    H = set(H)
    keep_l = [i for i in range(G.n_left) if ("L", i) not in H]
    keep_r = [j for j in range(G.n_right) if ("R", j) not in H]
    lmap = {i: k for k, i in enumerate(keep_l)}
    rmap = {j: k for k, j in enumerate(keep_r)}
    counts = {(lmap[i], rmap[j]): c for (i, j), c in G.edges if i in lmap and j in rmap}
    mapping = {("L", i): ("L", k) for i, k in lmap.items()}
    mapping.update({("R", j): ("R", k) for j, k in rmap.items()})
    return BipartiteMultigraph.from_counts(len(keep_l), len(keep_r), counts), mapping


def delete_edge(G: BipartiteMultigraph, a: Vertex, b: Vertex, copies: int = 1) -> BipartiteMultigraph:
    e = _edge(a, b)
    counts = G.counts
    if counts.get(e, 0) < copies:
        raise InputError(f"edge {e} has fewer than {copies} copies")
    counts[e] -= copies
    return BipartiteMultigraph.from_counts(G.n_left, G.n_right, counts)


def is_central(G: BipartiteMultigraph, H: Iterable[Vertex]) -> bool:
    """Whether G minus the vertices of H has a perfect matching."""
    rest, _ = delete_vertices(G, H)
    return find_perfect_matching(rest) is not None


def _merge(G: BipartiteMultigraph, pairs: list[tuple[Vertex, Vertex]],
           drop: Iterable[Vertex] = ()) -> tuple[BipartiteMultigraph, dict[Vertex, Vertex]]:
    """Delete ``drop``, then fold each ``a`` into ``b`` for every (a, b) in pairs."""
    drop = set(drop)
    alias = {a: b for a, b in pairs}
    gone = drop | set(alias)
    keep_l = [i for i in range(G.n_left) if ("L", i) not in gone]
    keep_r = [j for j in range(G.n_right) if ("R", j) not in gone]
    new = {("L", i): ("L", k) for k, i in enumerate(keep_l)}
    new.update({("R", j): ("R", k) for k, j in enumerate(keep_r)})
    for a, b in pairs:
        new[a] = new[b]
    counts: dict[Edge, int] = {}
    for (i, j), c in G.edges:
        a, b = ("L", i), ("R", j)
        if a in drop or b in drop:
            continue
        e = _edge(new[a], new[b])
        counts[e] = counts.get(e, 0) + c
    return BipartiteMultigraph.from_counts(len(keep_l), len(keep_r), counts), new


def bicontract(G: BipartiteMultigraph, v: Vertex) -> tuple[BipartiteMultigraph, dict[Vertex, Vertex]]:
    """Delete a degree-two vertex and identify its two neighbours.

    Multiplicities of edges landing on the merged vertex add up.  The
    mapping sends surviving old vertices to new ones.
    """
    nbrs = G.neighbors(v)
    if len(nbrs) != 2 or any(c != 1 for c in nbrs.values()):
        raise ContractError(f"{v} does not have exactly two neighbours joined by single edges")
    v1, v2 = sorted(nbrs)
    if v1[0] != v2[0]:
        raise InputError("neighbours of a vertex must lie on one side")
    return _merge(G, [(v2, v1)], drop=[v])


def is_four_cycle(G: BipartiteMultigraph, cycle: tuple[Vertex, Vertex, Vertex, Vertex]) -> bool:
    if len(set(cycle)) != 4:
        return False
    counts = G.counts
    try:
        return all(counts.get(_edge(cycle[k], cycle[(k + 1) % 4]), 0) >= 1 for k in range(4))
    except InputError:
        return False


def c4_contract(G: BipartiteMultigraph,
                cycle: tuple[Vertex, Vertex, Vertex, Vertex]) -> tuple[BipartiteMultigraph, dict[Vertex, Vertex]]:
    """Contract a central 4-cycle (v1, v2, v3, v4).

    Edges v1v2 and v3v4 are removed, v3 is folded into v1 and v4 into v2.
    The surviving edges v2v3 and v4v1 become parallel.
    """
    if not is_four_cycle(G, cycle):
        raise ContractError(f"{cycle} is not a 4-cycle")
    if not is_central(G, cycle):
        raise ContractError(f"{cycle} is not central")
    v1, v2, v3, v4 = cycle
    counts = G.counts
    counts.pop(_edge(v1, v2))
    counts.pop(_edge(v3, v4))
    trimmed = BipartiteMultigraph.from_counts(G.n_left, G.n_right, counts)
    return _merge(trimmed, [(v3, v1), (v4, v2)])


def simplify(G: BipartiteMultigraph) -> BipartiteMultigraph:
    """Collapse every multiplicity to one.

    This is the digraph-side convention: parallel arcs merge, and a parallel
    copy of a matching edge (a loop at its vertex) is forgotten.
    """
    return BipartiteMultigraph(G.n_left, G.n_right, tuple((e, 1) for e, _ in G.edges))


def map_matching(M: Iterable[Edge], mapping: dict[Vertex, Vertex]) -> PerfectMatching:
    """Image of a matching; edges losing an endpoint are dropped, duplicates merged."""
    out = set()
    for i, j in M:
        a, b = mapping.get(("L", i)), mapping.get(("R", j))
        if a is not None and b is not None:
            out.add(_edge(a, b))
    return frozenset(out)


def k22_doubled() -> BipartiteMultigraph:
    """K_{2,2} with every edge doubled."""
    return BipartiteMultigraph.from_counts(2, 2, {(i, j): 2 for i in range(2) for j in range(2)})


def is_isomorphic_bipartite(G1: BipartiteMultigraph, G2: BipartiteMultigraph) -> bool:
    """Side-preserving multigraph isomorphism by permutation (tiny graphs only)."""
    if (G1.n_left, G1.n_right) != (G2.n_left, G2.n_right):
        return False
    target = G2.counts
    c1 = G1.counts
    for pl in permutations(range(G1.n_left)):
        for pr in permutations(range(G1.n_right)):
            if {(pl[i], pr[j]): c for (i, j), c in c1.items()} == target:
                return True
    return False
