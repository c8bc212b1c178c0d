"""Classification of digraphs by stable maximum nullity, with certificates.

The verdicts are decided structurally: acyclic digraphs have nu = 0, and a
cyclic digraph has nu = 1 exactly when it and its reverse both have
Kelly-width at most two (equivalently, when it has none of the five
forbidden directed minors).  Everything else has nu >= 2.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Any, Optional

from .digraph import Digraph, all_digraphs, random_digraph, reverse, topological_order
from .errors import CapacityError, InternalConsistencyError
from .formats import digraph_to_json, matrix_to_json
from .kelly import DP_LIMIT, kelly_width_exact, min_ordering_width, ordering_width, recognize_width1
from .matrixlab.linalg import RationalMatrix, nullity
from .matrixlab.properties import asap_check, in_Q
from .matrixlab.reduction import check_matrix
from .matrixlab.search import nu_lower_bound_search, random_q0_matrix
from .minors import DEFAULT_CAP, MinorWitness, forbidden_scan

NU_ZERO = "NuZero"
NU_ONE = "NuOne"
NU_AT_LEAST_TWO = "NuAtLeastTwo"
SCHEMA = 1


@dataclass(frozen=True)
class ClassificationReport:
    verdict: str
    digraph: Digraph
    topological_order: Optional[tuple[int, ...]] = None
    orderings: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None  # D, reverse(D)
    kelly_widths: Optional[tuple[int, int]] = None  # exact, when computed
    witness: Optional[MinorWitness] = None
    matrix: Optional[RationalMatrix] = None
    methods: dict[str, str] = field(default_factory=dict)
    timings: Optional[dict[str, float]] = None

    def to_json(self) -> dict:
        cert: dict[str, Any] = {}
        if self.topological_order is not None:
            cert["topological-order"] = [v + 1 for v in self.topological_order]
        if self.orderings is not None:
            cert["elimination-orderings"] = {
                "digraph": [v + 1 for v in self.orderings[0]],
                "reverse": [v + 1 for v in self.orderings[1]],
            }
        if self.kelly_widths is not None:
            cert["kelly-width"] = {"digraph": self.kelly_widths[0], "reverse": self.kelly_widths[1]}
        if self.witness is not None:
            cert["minor"] = self.witness.to_json()
        if self.matrix is not None:
            cert["matrix"] = {**matrix_to_json(self.matrix), "nullity": nullity(self.matrix),
                              "asap": True}
        out = {
            "schema": SCHEMA,
            "verdict": self.verdict,
            "digraph": digraph_to_json(self.digraph),
            "certificates": cert,
            "methods": dict(sorted(self.methods.items())),
        }
        if self.timings is not None:
            out["timings"] = self.timings
        return out

    def verify(self) -> bool:
        """Re-check every certificate against the digraph."""
        D = self.digraph
        if self.topological_order is not None:
            pos = {v: k for k, v in enumerate(self.topological_order)}
            if sorted(pos) != list(range(D.n)) or any(pos[u] >= pos[w] for u, w in D.arcs):
                return False
        if self.orderings is not None:
            if ordering_width(D, self.orderings[0]) > 1:
                return False
            if ordering_width(reverse(D), self.orderings[1]) > 1:
                return False
        if self.witness is not None and not self.witness.verify(D):
            return False
        if self.matrix is not None:
            target = 1 if self.verdict == NU_ONE else 2
            if not in_Q(D, self.matrix) or nullity(self.matrix) < target:
                return False
            if not asap_check(self.matrix).holds:
                return False
        return True


def _width_at_most_two(D: Digraph) -> tuple[Optional[tuple[int, ...]], Optional[int], str]:
    """(width-1 ordering or None, exact Kelly-width if computed, method)."""
    order = recognize_width1(D)
    if order is not None:
        return order, None, "greedy"
    if D.n > DP_LIMIT:
        return None, None, "none"
    width, order = min_ordering_width(D)
    return (order if width <= 1 else None), width + 1, "exact"


def classify(D: Digraph, with_matrix: bool = False, seed: int = 0, trials: int = 200,
             cap: int = DEFAULT_CAP, timings: bool = False) -> ClassificationReport:
    clock: dict[str, float] = {}
    start = time.perf_counter()

    topo = topological_order(D)
    if topo is not None:
        report = ClassificationReport(NU_ZERO, D, topological_order=topo,
                                      methods={"decision": "topological-sort"})
        return _finish(report, clock if timings else None, start)

    order_d, width_d, method_d = _width_at_most_two(D)
    order_r, width_r, method_r = _width_at_most_two(reverse(D))
    clock["kelly"] = time.perf_counter() - start
    decided = None
    if order_d is not None and order_r is not None:
        decided = True
    elif (order_d is None and method_d == "exact") or (order_r is None and method_r == "exact"):
        decided = False

    scan = None
    if D.n <= cap:
        t0 = time.perf_counter()
        scan = forbidden_scan(D, cap=cap)
        clock["minor-scan"] = time.perf_counter() - t0
        if decided is not None and decided != scan.clean:
            raise InternalConsistencyError(
                f"Kelly-width and forbidden minors disagree on {D}")
        decided = scan.clean
    if decided is None:
        raise CapacityError(f"no decision procedure fits n={D.n} "
                            f"(Kelly limit {DP_LIMIT}, minor cap {cap})")

    methods = {"kelly": f"{method_d}/{method_r}",
               "minor-scan": "exhaustive" if scan is not None else "skipped"}
    widths = (width_d, width_r) if width_d is not None and width_r is not None else None
    if decided:
        report = ClassificationReport(NU_ONE, D, orderings=(order_d, order_r),
                                      kelly_widths=widths, methods=methods)
    else:
        report = ClassificationReport(NU_AT_LEAST_TWO, D, kelly_widths=widths,
                                      witness=scan.first() if scan is not None else None,
                                      methods=methods)

    if with_matrix:
        t0 = time.perf_counter()
        target = 1 if decided else 2
        A = nu_lower_bound_search(D, target, trials, seed)
        clock["matrix"] = time.perf_counter() - t0
        methods = {**report.methods, "matrix": "found" if A is not None else "not-found"}
        report = ClassificationReport(report.verdict, D, report.topological_order,
                                      report.orderings, report.kelly_widths, report.witness,
                                      A, methods)
    return _finish(report, clock if timings else None, start)


def _finish(report: ClassificationReport, clock: Optional[dict], start: float) -> ClassificationReport:
    if not report.verify():
        raise InternalConsistencyError("a classification certificate failed to re-validate")
    if clock is None:
        return report
    clock["total"] = time.perf_counter() - start
    return ClassificationReport(report.verdict, report.digraph, report.topological_order,
                                report.orderings, report.kelly_widths, report.witness,
                                report.matrix, report.methods,
                                {k: round(v, 6) for k, v in sorted(clock.items())})


# -- the equivalence survey -------------------------------------------------------------

def survey_digraphs(n: int, sample: Optional[int] = None, seed: int = 0) -> list[Digraph]:
    """All digraphs on n vertices, or ``sample`` seeded random ones (arc density 1/2)."""
    if sample is None:
        return list(all_digraphs(n))
    rng = random.Random(f"survey:{n}:{seed}")
    return [random_digraph(n, 0.5, rng) for _ in range(sample)]


def survey(n: int, sample: Optional[int] = None, seed: int = 0, nu_trials: int = 0,
           q0_trials: int = 0) -> dict:
    """Check the equivalences on every (or a sample of) digraph on n vertices.

    Structural legs: acyclic iff Kelly-width 1, and forbidden-minor-free
    iff Kelly-width <= 2 for D and reverse(D).  With ``nu_trials`` the
    nullity-2 search runs on every minor-free digraph and must come up
    empty.  With ``q0_trials`` the matrix engine runs on random Q0 matrices
    of nullity >= 2; instances where it cannot produce a support-property
    violation are recorded, not raised.
    """
    graphs = survey_digraphs(n, sample, seed)
    rows = {"acyclic": 0, "nu-one": 0, "nu-two": 0}
    failures: list[dict] = []
    nu_hits: list[dict] = []
    engine = {"runs": 0, "violations": 0, "nullity<=1": 0, "no-violation": []}
    for idx, D in enumerate(graphs):
        kw = kelly_width_exact(D).width
        kw_rev = kelly_width_exact(reverse(D)).width
        acyclic = topological_order(D) is not None
        clean = forbidden_scan(D, stop_early=True).clean
        bounded = kw <= 2 and kw_rev <= 2
        if acyclic != (kw == 1) or clean != bounded:
            failures.append({"digraph": digraph_to_json(D), "acyclic": acyclic,
                             "kelly-width": [kw, kw_rev], "minor-free": clean})
        rows["acyclic" if acyclic else "nu-one" if clean else "nu-two"] += 1
        if not clean:
            continue
        if nu_trials:
            A = nu_lower_bound_search(D, 2, nu_trials, seed=f"{seed}:{idx}")
            if A is not None:
                nu_hits.append({"digraph": digraph_to_json(D), "matrix": matrix_to_json(A)})
        rng = random.Random(f"engine:{seed}:{idx}")
        for _ in range(q0_trials):
            A = random_q0_matrix(D, rng, min_nullity=2)
            engine["runs"] += 1
            try:
                verdict = check_matrix(D, A, require_clean=False)
            except InternalConsistencyError:
                engine["no-violation"].append(
                    {"digraph": digraph_to_json(D), "matrix": matrix_to_json(A)})
                continue
            engine["violations" if verdict.sp_violation else "nullity<=1"] += 1
    return {
        "schema": SCHEMA,
        "n": n,
        "mode": "exhaustive" if sample is None else f"sample:{sample}",
        "seed": seed,
        "digraphs": len(graphs),
        "classes": rows,
        "equivalence-failures": failures,
        "nu-two-certificates-on-minor-free": nu_hits,
        "engine": engine,
    }
