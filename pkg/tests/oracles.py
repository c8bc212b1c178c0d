"""Slow, obviously-correct reference implementations used to cross-check the library."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

from stablenu.digraph import Digraph, canonical_form, delete_arc, delete_vertex, touches
from stablenu.kelly import eliminate
from stablenu.matrixlab.linalg import RationalMatrix, right_nullspace
from stablenu.minors import butterfly_contract, contract_bidirected, is_butterfly_contractible


def brute_ordering_width(D: Digraph, order) -> int:
    labels = list(range(D.n))
    width = 0
    for v in order:
        k = labels.index(v)
        width = max(width, len(D.out_neighbors[k]))
        D = eliminate(D, k)
        labels.pop(k)
    return width


def brute_kelly_width(D: Digraph) -> int:
    """1 + min over all n! elimination orderings."""
    if D.n == 0:
        return 1
    return 1 + min(brute_ordering_width(D, p) for p in permutations(range(D.n)))


def brute_asap_dimension(B: RationalMatrix) -> int:
    """Dimension of {X : X∘B = 0, XᵀB = 0, BXᵀ = 0}, unknowns are all n² entries."""
    n = B.n
    idx = {(i, j): i * n + j for i in range(n) for j in range(n)}
    eqs = []
    for i in range(n):
        for j in range(n):
            if B[i, j] != 0:
                row = [Fraction(0)] * (n * n)
                row[idx[i, j]] = Fraction(1)
                eqs.append(row)
    # (XᵀB)_{ab} = sum_i X_{ia} B_{ib}
    for a in range(n):
        for b in range(n):
            row = [Fraction(0)] * (n * n)
            for i in range(n):
                row[idx[i, a]] += B[i, b]
            eqs.append(row)
    # (BXᵀ)_{ab} = sum_j B_{aj} X_{bj}
    for a in range(n):
        for b in range(n):
            row = [Fraction(0)] * (n * n)
            for j in range(n):
                row[idx[b, j]] += B[a, j]
            eqs.append(row)
    return len(right_nullspace(RationalMatrix(eqs, n * n)))


def _dependent(vectors) -> bool:
    if not vectors:
        return False
    M = RationalMatrix([list(v) for v in vectors], len(vectors[0]))
    return bool(right_nullspace(M.T))


def brute_sp_holds(B: RationalMatrix, D: Digraph) -> bool:
    """Enumerate disjoint non-touching (R, S); SP fails iff rows R and columns S can
    carry a left and a right null vector respectively."""
    n = B.n
    subsets = [frozenset(c) for k in range(1, n + 1) for c in combinations(range(n), k)]
    for R in subsets:
        if not _dependent([B.rows[i] for i in R]):
            continue
        for S in subsets:
            if R & S or touches(D, R, S):
                continue
            if _dependent([B.column(j) for j in S]):
                return False
    return True


def single_step_minors(D: Digraph):
    """Every digraph one operation away from D, over the free-interleaving regime."""
    for v in range(D.n):
        yield delete_vertex(D, v)[0]
    for u, w in D.arcs:
        yield delete_arc(D, u, w)
        if is_butterfly_contractible(D, u, w):
            yield butterfly_contract(D, u, w)[0]
        if u < w and D.has_arc(w, u):
            yield contract_bidirected(D, u, w)[0]


class MinorClosure:
    """Canonical forms of all directed minors, by closure under single steps."""

    def __init__(self):
        self._memo: dict = {}

    def of(self, D: Digraph) -> frozenset:
        key = canonical_form(D)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        out = {key}
        for child in single_step_minors(D):
            out |= self.of(child)
        result = frozenset(out)
        self._memo[key] = result
        return result

    def contains(self, D: Digraph, P: Digraph) -> bool:
        return canonical_form(P) in self.of(D)


def subdigraph_then_contract(D: Digraph, P: Digraph) -> bool:
    """The other regime: pick a subdigraph first, then only contractions."""
    seen: set = set()

    def contractions_reach(G: Digraph) -> bool:
        key = canonical_form(G)
        if key in seen:
            return False
        seen.add(key)
        if G.n == P.n:
            return key == canonical_form(P)
        for u, w in G.arcs:
            if is_butterfly_contractible(G, u, w) and contractions_reach(butterfly_contract(G, u, w)[0]):
                return True
            if u < w and G.has_arc(w, u) and contractions_reach(contract_bidirected(G, u, w)[0]):
                return True
        return False

    for k in range(P.n, D.n + 1):
        for keep in combinations(range(D.n), k):
            H = D
            for v in sorted(set(range(D.n)) - set(keep), reverse=True):
                H = delete_vertex(H, v)[0]
            arcs = list(H.arcs)
            for r in range(len(arcs) + 1):
                for drop in combinations(arcs, len(arcs) - r):
                    G = Digraph.from_arcs(H.n, [a for a in arcs if a not in set(drop)])
                    if G.m >= P.m and contractions_reach(G):
                        return True
    return False


# -- the digraph / bipartite dictionary ------------------------------------------------

def butterfly_commutes(D: Digraph, u: int, w: int) -> bool:
    """D/uw against bicontraction of the degree-two end of the matching edge."""
    from stablenu.bipartite import bicontract, from_bipartite, map_matching, simplify, to_bipartite
    from stablenu.digraph import is_isomorphic

    G, M = to_bipartite(D)
    # u- has neighbours u+, w+ when uw is u's only out-arc; w+ has u-, w- when it is w's only in-arc
    ends = [("L", u)] if len(D.out_neighbors[u]) == 1 else []
    ends += [("R", w)] if len(D.in_neighbors[w]) == 1 else []
    target = butterfly_contract(D, u, w)[0]
    for v in ends:
        H, mapping = bicontract(G, v)
        if not is_isomorphic(from_bipartite(simplify(H), map_matching(M, mapping)), target):
            return False
    return bool(ends)


def bidirected_commutes(D: Digraph, u: int, w: int) -> bool:
    """Contraction of the pair uw, wu against C4-contraction plus one edge deletion."""
    from stablenu.bipartite import c4_contract, delete_edge, from_bipartite, map_matching, simplify, to_bipartite
    from stablenu.digraph import is_isomorphic

    G, M = to_bipartite(D)
    cyc = (("L", u), ("R", u), ("L", w), ("R", w))
    H, mapping = c4_contract(G, cyc)
    merged_l, merged_r = mapping[("L", u)], mapping[("R", u)]
    H = delete_edge(H, merged_l, merged_r)
    M2 = map_matching(M, mapping)
    return is_isomorphic(from_bipartite(simplify(H), M2), contract_bidirected(D, u, w)[0])


# -- random instances for the reductions --------------------------------------------------

def reduction_instance(kind: str, rng):
    """A random (D, A, u) on which reduction ``kind`` applies at u, A of varied nullity."""
    from stablenu.digraph import random_digraph
    from stablenu.matrixlab.reduction import applicable_reduction
    from stablenu.matrixlab.search import random_q0_matrix

    while True:
        D = random_digraph(rng.randint(2, 6), rng.choice((0.25, 0.4, 0.55)), rng)
        need_arc = kind != "delete"
        cands = [u for u in range(D.n) if len(D.out_neighbors[u]) == 1
                 or (not need_arc and not D.out_neighbors[u])]
        if not cands:
            continue
        u = rng.choice(cands)
        for _ in range(20):
            A = random_q0_matrix(D, rng, rng.randint(0, 3))
            if applicable_reduction(D, A, u) == kind:
                return D, A, u
