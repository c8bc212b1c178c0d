"""
The five forbidden directed minors
==================================

A cyclic digraph has nu = 1 exactly when none of K3, N4, M5 or the
reverses of N4 and M5 is a directed minor.  Minor witnesses are step lists
that can be replayed.
"""

from stablenu.digraph import Digraph, complete
from stablenu.minors import CATALOG, N4, forbidden_scan, has_directed_minor

for name, P in CATALOG.items():
    print(f"{name:4s} n={P.n} arcs={list(P.arcs)}")

# subdivide the arc a -> c of N4 and find N4 again
sub = Digraph.from_arcs(5, [a for a in N4.arcs if a != (0, 2)] + [(0, 4), (4, 2)])
w = has_directed_minor(sub, N4, name="n4")
print("steps:", [(s.op, s.u, s.w) for s in w.steps])
print("replays to N4:", w.verify(sub))

scan = forbidden_scan(complete(4))
print("K4 clean?", scan.clean, "first witness:", scan.first().name)
