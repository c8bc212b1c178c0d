"""
Digraphs as bipartite graphs with a perfect matching
====================================================

Vertex v of D becomes a matched pair (L v, R v) and an arc u -> w becomes
the edge L u - R w.  Butterfly contractions turn into bicontractions of
degree-two vertices.
"""

from stablenu.bipartite import (
    bicontract,
    from_bipartite,
    is_isomorphic_bipartite,
    k22_doubled,
    map_matching,
    simplify,
    to_bipartite,
)
from stablenu.digraph import cycle
from stablenu.formats import format_bigraph
from stablenu.minors import N4, butterfly_contract

G, M = to_bipartite(cycle(3))
print(format_bigraph(G, M))

# contract the arc 0 -> 1 on both sides
H, mapping = bicontract(G, ("L", 0))
D = from_bipartite(simplify(H), map_matching(M, mapping))
print("bipartite side:", D)
print("digraph side:  ", butterfly_contract(cycle(3), 0, 1)[0])

# N4 bicontracts down to K22 with doubled edges
G, _ = to_bipartite(N4)
while True:
    v = next((v for v in G.vertices() if len(G.neighbors(v)) == 2
              and all(c == 1 for c in G.neighbors(v).values())), None)
    if v is None:
        break
    G, _ = bicontract(G, v)
print("N4 ->", G.counts, "doubled K22:", is_isomorphic_bipartite(G, k22_doubled()))
