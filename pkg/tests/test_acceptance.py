"""The nine acceptance criteria, each at its stated size and time budget.

Every test prints one ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line, repeated in the terminal summary.
"""

import random
import time

import pytest

from oracles import brute_kelly_width, brute_sp_holds, butterfly_commutes, bidirected_commutes, reduction_instance
from stablenu.classify import NU_ZERO, classify
from stablenu.digraph import Digraph, all_digraphs, is_acyclic, random_digraph, reverse
from stablenu.errors import InternalConsistencyError
from stablenu.kelly import kelly_width_exact
from stablenu.matrixlab import (
    RationalMatrix,
    asap_check,
    check_matrix,
    in_Q,
    in_Q0,
    nu_lower_bound_search,
    nullity,
    reduce_contract,
    reduce_delete,
    reduce_semicontract,
    sp_check,
    validate_sp_witness,
)
from stablenu.matrixlab.search import matrix_with_kernel, random_q0_matrix, random_q_matrix, random_vector
from stablenu.minors import forbidden_scan, is_butterfly_contractible


@pytest.fixture
def report(request):
    def emit(number: int, ok: bool, detail: str, started: float, budget: float):
        elapsed = time.perf_counter() - started
        within = elapsed < budget
        line = (f"{'PASS' if ok and within else 'FAIL'} criterion {number}: {detail} "
                f"[{elapsed:.1f}s, budget {budget:.0f}s]")
        print(line)
        request.config.acceptance_lines.append(line)
        assert ok, line
        assert within, line
    return emit


def acyclic_digraph(n: int, p: float, rng: random.Random) -> Digraph:
    perm = list(range(n))
    rng.shuffle(perm)
    return Digraph.from_arcs(n, [(perm[a], perm[b]) for a in range(n) for b in range(a + 1, n)
                                 if rng.random() < p])


def test_criterion_1_all_ones_constants(report):
    t = time.perf_counter()
    got = [(asap_check(RationalMatrix.ones(k)).holds, nullity(RationalMatrix.ones(k))) for k in (2, 3)]
    report(1, got == [(True, 1), (True, 2)],
           f"all-ones 2x2 and 3x3 give (ASAP, nullity) = {got}", t, 1)


def test_criterion_2_acyclicity_theorem(report):
    t = time.perf_counter()
    bad = 0
    graphs = list(all_digraphs(4))
    for D in graphs:
        a = is_acyclic(D)
        if not (a == (kelly_width_exact(D).width == 1) == (classify(D).verdict == NU_ZERO)):
            bad += 1
    report(2, bad == 0 and len(graphs) == 4096,
           f"{len(graphs)} digraphs on 4 vertices, {bad} disagreements", t, 60)


def test_criterion_3_main_equivalence(report):
    t = time.perf_counter()
    rng = random.Random(3)
    graphs = [D for n in range(1, 5) for D in all_digraphs(n)]
    exhaustive = len(graphs)
    graphs += [random_digraph(5, rng.choice((0.2, 0.3, 0.4, 0.5, 0.6)), rng) for _ in range(2000)]
    bad = clean = 0
    for D in graphs:
        free = forbidden_scan(D, stop_early=True).clean
        clean += free
        bounded = kelly_width_exact(D).width <= 2 and kelly_width_exact(reverse(D)).width <= 2
        bad += free != bounded
    report(3, bad == 0,
           f"{exhaustive} exhaustive (n <= 4) + 2000 sampled (n = 5), {clean} minor-free, "
           f"{bad} disagreements", t, 1800)


def test_criterion_4_asap_implies_sp(report):
    t = time.perf_counter()
    rng = random.Random(4)
    total = asap_true = singular = violations = 0
    while total < 1200:
        D = random_digraph(rng.randint(1, 6), rng.choice((0.2, 0.35, 0.5)), rng)
        if total % 2:
            B = random_q_matrix(D, rng)
        else:
            # members of Q(D) with planted null vectors, the only ones where SP can fail
            kernel = [random_vector(D.n, rng) for _ in range(rng.randint(1, 2))]
            B = matrix_with_kernel(D, kernel, rng, forced=True)
            if B is None:
                continue
        assert in_Q(D, B)
        total += 1
        singular += nullity(B) > 0
        if asap_check(B).holds:
            asap_true += 1
            violations += not sp_check(B, D).holds
    report(4, violations == 0,
           f"{total} instances ({singular} singular, {asap_true} with ASAP), "
           f"{violations} with ASAP but not SP", t, 300)


REDUCE = {"contract": reduce_contract, "delete": reduce_delete, "semicontract": reduce_semicontract}


def test_criterion_5_reductions(report):
    t = time.perf_counter()
    counts = {}
    bad = 0
    for kind, fn in REDUCE.items():
        rng = random.Random(f"criterion-5:{kind}")
        positive = 0
        for _ in range(500):
            D, A, u = reduction_instance(kind, rng)
            D2, A2 = fn(D, A, u)
            bad += not (in_Q0(D2, A2) and nullity(A2) == nullity(A))
            positive += nullity(A) > 0
        counts[kind] = positive
    report(5, bad == 0,
           f"500 instances per reduction (with positive nullity: {counts}), {bad} violations", t, 300)


def test_criterion_6_dichotomy_engine(report):
    t = time.perf_counter()
    rng = random.Random(6)
    runs = verified = 0
    refused = []
    while runs < 250:
        D = random_digraph(rng.randint(3, 7), rng.choice((0.2, 0.3, 0.4)), rng)
        if not forbidden_scan(D, stop_early=True).clean:
            continue
        A = random_q0_matrix(D, rng, min_nullity=2)
        if nullity(A) < 2:
            continue
        runs += 1
        try:
            verdict = check_matrix(D, A)
        except InternalConsistencyError:
            refused.append((D, A))
            continue
        verified += verdict.sp_violation and validate_sp_witness(D, A, verdict.witness)
    # an independent enumeration separates engine bugs from instances that truly keep SP
    genuine = sum(brute_sp_holds(A, D) for D, A in refused)
    detail = (f"{runs} minor-free instances with nullity >= 2: {verified} verified SP violations, "
              f"{len(refused)} engine failures")
    if refused:
        smallest = min(refused, key=lambda p: p[0].n)
        detail += (f" ({genuine} confirmed by exhaustive enumeration to satisfy SP, so the "
                   f"dichotomy itself fails; smallest: {smallest[0]}, "
                   f"rows {[[str(x) for x in r] for r in smallest[1].rows]})")
    report(6, verified == runs, detail, t, 600)


def test_criterion_7_kelly_oracle(report):
    t = time.perf_counter()
    rng = random.Random(7)
    graphs = [D for n in range(1, 5) for D in all_digraphs(n)]
    exhaustive = len(graphs)
    graphs += [random_digraph(rng.choice((5, 6)), rng.choice((0.2, 0.35, 0.5, 0.65)), rng)
               for _ in range(600)]
    bad = sum(kelly_width_exact(D).width != brute_kelly_width(D) for D in graphs)
    report(7, bad == 0, f"{exhaustive} exhaustive (n <= 4) + 600 sampled (n = 5, 6), "
                        f"{bad} mismatches", t, 600)


def test_criterion_8_bipartite_dictionary(report):
    t = time.perf_counter()
    butterflies = pairs = bad = 0
    for n in range(1, 5):
        for D in all_digraphs(n):
            for u, w in D.arcs:
                if is_butterfly_contractible(D, u, w):
                    butterflies += 1
                    bad += not butterfly_commutes(D, u, w)
                if u < w and D.has_arc(w, u):
                    pairs += 1
                    bad += not bidirected_commutes(D, u, w)
    report(8, bad == 0, f"{butterflies} butterfly-contractible arcs and {pairs} bidirected pairs, "
                        f"{bad} failures to commute", t, 300)


def test_criterion_9_no_certificates_on_acyclic(report):
    t = time.perf_counter()
    rng = random.Random(9)
    hits = 0
    for k in range(100):
        D = acyclic_digraph(rng.randint(2, 7), rng.choice((0.3, 0.5, 0.7)), rng)
        hits += nu_lower_bound_search(D, 1, 10_000, seed=f"acyclic:{k}") is not None
    report(9, hits == 0, f"100 acyclic digraphs x 10^4 trials, {hits} certificates", t, 600)
