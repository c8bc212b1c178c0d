"""
The reduction engine
====================

For A in Q0(D), a vertex of out-degree at most one can be removed by a
Schur complement, a deletion or a star contraction without changing the
nullity.  The engine repeats this looking for a support-property violation.
"""

import random

from stablenu.digraph import Digraph, complete, cycle
from stablenu.errors import InternalConsistencyError
from stablenu.matrixlab import RationalMatrix, check_matrix, nullity, reduce_contract
from stablenu.matrixlab.search import random_q0_matrix

D, A = reduce_contract(complete(2), RationalMatrix.ones(2), 0)
print("contract K2 with all-ones:", D, A.rows)

rng = random.Random(57)
C = cycle(5)
A = random_q0_matrix(C, rng, min_nullity=2)
print(A)
v = check_matrix(C, A)
print("verdict:", v.kind, "via", v.terminal, "after", [(s.kind, s.vertex) for s in v.trace])
print("x =", [str(t) for t in v.witness.x])
print("y =", [str(t) for t in v.witness.y])

# nullity two with the support property intact: the engine says so instead of guessing
D = Digraph.from_arcs(3, [(0, 1), (1, 0), (2, 0), (2, 1)])
A = RationalMatrix([[0, 0, 0], [0, 0, 0], [0, 0, -1]])
try:
    check_matrix(D, A)
except InternalConsistencyError as e:
    print("nullity", nullity(A), "->", e)
