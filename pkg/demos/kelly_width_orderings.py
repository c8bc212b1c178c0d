"""
Kelly-width through elimination orderings
=========================================

Eliminating a vertex joins its in-neighbours to its out-neighbours.  The
width of an ordering is the largest out-degree met along the way and the
Kelly-width is one more than the best width.
"""

from stablenu.digraph import complete, cycle, path
from stablenu.kelly import (
    KellyDecomposition,
    build_kdag,
    kelly_width_exact,
    ordering_width,
    recognize_width1,
    validate_kelly_decomposition,
)

P = path(3)
print("path, sinks first:", ordering_width(P, (2, 1, 0)))
print("path, sources first:", ordering_width(P, (0, 1, 2)))

for name, D in [("path", P), ("6-cycle", cycle(6)), ("K3", complete(3)), ("K4", complete(4))]:
    r = kelly_width_exact(D)
    print(f"{name:8s} Kelly-width {r.width}, optimal ordering {r.ordering}")

# width <= 2 has a fast greedy recognizer
print("greedy on the 6-cycle:", recognize_width1(cycle(6)))
print("greedy on K3:", recognize_width1(complete(3)))

# k-DAGs: start from K_k and add vertices whose out-neighbours form a set of size <= k
D = build_kdag(2, [{0, 1}, {1, 2}, {0}])
print(f"a 2-DAG on {D.n} vertices: Kelly-width {kelly_width_exact(D).width} (at most 3)")

# a decomposition of the path: one node per vertex, arranged as a chain
kd = KellyDecomposition(((0, 1), (1, 2)), tuple(frozenset({v}) for v in range(3)),
                        (frozenset(),) * 3)
print(validate_kelly_decomposition(P, kd))
