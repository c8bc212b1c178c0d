"""
Classifying small digraphs
==========================

Every digraph falls into one of three classes: nu = 0, nu = 1 or nu >= 2.
Here we classify a few named digraphs and then count the classes over all
digraphs on three and four vertices.
"""

from collections import Counter

from stablenu import classify
from stablenu.digraph import all_digraphs, complete, cycle, path
from stablenu.minors import N4

for name, D in [("path 0->1->2", path(3)), ("K2", complete(2)), ("5-cycle", cycle(5)),
                ("K3", complete(3)), ("N4", N4)]:
    r = classify(D)
    extra = f", witness {r.witness.name}" if r.witness else ""
    print(f"{name:14s} {r.verdict}{extra}")

# class sizes over every labelled digraph
for n in (3, 4):
    counts = Counter(classify(D).verdict for D in all_digraphs(n))
    print(f"n={n}:", dict(sorted(counts.items())))

# a report carries certificates that can be checked again later
report = classify(complete(2), with_matrix=True)
print(report.to_json()["certificates"])
