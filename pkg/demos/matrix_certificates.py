"""
Matrices, ASAP and the support property
=======================================

Lower bounds on nu come from matrices in Q(D) that have the ASAP.  The
all-ones matrices certify nu(K2) >= 1 and nu(K3) >= 2.
"""

from stablenu.digraph import complete, cycle, path
from stablenu.matrixlab import RationalMatrix, asap_check, nu_lower_bound_search, nullity, sp_check

for k in (2, 3):
    J = RationalMatrix.ones(k)
    print(f"all-ones {k}x{k}: nullity {nullity(J)}, ASAP {asap_check(J).holds}, "
          f"SP on K{k} {sp_check(J, complete(k)).holds}")

# the zero matrix fails the ASAP; the violation space is everything
print("zero 2x2 violation dimension:", asap_check(RationalMatrix.zeros(2)).dimension)

# randomized search with planted null vectors
A = nu_lower_bound_search(cycle(4), 1, 200, seed=1)
print("4-cycle certificate:")
print(A)
print("nullity", nullity(A))

# acyclic digraphs never yield one: every matrix in Q(D) is triangular up to relabelling
print("path:", nu_lower_bound_search(path(4), 1, 2000))
