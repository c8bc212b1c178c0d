"""Directed minors: butterfly and bi-directed contractions, D*uv, and an
exhaustive containment search for small hosts.

Contractions follow one labeling convention throughout: contracting the
pair ``(u, w)`` deletes ``u`` and lets ``w`` stand for the merged vertex.
Indices above ``u`` shift down by one.  The returned mapping records this.

The containment search works on a normal form.  Any directed minor can be
reached by deleting arcs first and contracting afterwards, so the search
only ever takes steps that remove a vertex: delete it, contract a
bi-directed pair, or contract an arc after deleting the competing arcs on
one side of it.  Once the vertex count matches the pattern, a spanning
embedding of the pattern is looked up directly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Optional

from .digraph import (
    Digraph,
    Mapping,
    canonical_form,
    complete,
    delete_arc,
    delete_arcs,
    delete_vertex,
    find_embedding,
    identify,
    relabel,
    reverse,
)
from .errors import CapacityError, ContractError, InputError, InternalConsistencyError

DEFAULT_CAP = int(os.environ.get("STABLENU_MINOR_CAP", "8"))

# a..e -> 0..4
N4 = Digraph.from_arcs(4, [(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2), (0, 2), (3, 1)])
M5 = Digraph.from_arcs(
    5, [(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2), (3, 4), (4, 3), (0, 2), (4, 2)]
)

CATALOG: dict[str, Digraph] = {
    "k2": complete(2),
    "k3": complete(3),
    "n4": N4,
    "m5": M5,
    "n4r": reverse(N4),
    "m5r": reverse(M5),
}
FORBIDDEN = ("k3", "n4", "m5", "n4r", "m5r")


# -- single operations --------------------------------------------------------

def is_butterfly_contractible(D: Digraph, u: int, w: int) -> bool:
    if not D.has_arc(u, w):
        raise InputError(f"arc ({u}, {w}) not present")
    return len(D.out_neighbors[u]) == 1 or len(D.in_neighbors[w]) == 1


def butterfly_contract(D: Digraph, u: int, w: int) -> tuple[Digraph, Mapping]:
    if not D.has_arc(u, w):
        raise ContractError(f"arc ({u}, {w}) not present")
    if not is_butterfly_contractible(D, u, w):
        raise ContractError(f"arc ({u}, {w}) is not butterfly contractible")
    return identify(D, u, w)


def contract_bidirected(D: Digraph, u: int, w: int) -> tuple[Digraph, Mapping]:
    if not (D.has_arc(u, w) and D.has_arc(w, u)):
        raise ContractError(f"({u}, {w}) is not a bi-directed edge")
    return identify(D, u, w)


def star_contract(D: Digraph, u: int, v: int) -> tuple[Digraph, Mapping]:
    """D*uv: drop every other arc into v, then contract (u, v)."""
    if D.out_neighbors[u] != frozenset({v}):
        raise ContractError(f"vertex {u} must have (u, v) as its only outgoing arc")
    trimmed = delete_arcs(D, [(z, v) for z in D.in_neighbors[v] if z != u])
    return identify(trimmed, u, v)


# -- witnesses ------------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    op: str  # delete_vertex | delete_arc | butterfly_contract | contract_bidirected
    u: int
    w: Optional[int] = None

    def apply(self, D: Digraph) -> Digraph:
        if self.op == "delete_vertex":
            return delete_vertex(D, self.u)[0]
        if self.op == "delete_arc":
            return delete_arc(D, self.u, self.w)
        if self.op == "butterfly_contract":
            return butterfly_contract(D, self.u, self.w)[0]
        if self.op == "contract_bidirected":
            return contract_bidirected(D, self.u, self.w)[0]
        raise InputError(f"unknown minor step {self.op!r}")

    def to_json(self) -> dict:
        d = {"op": self.op, "u": self.u + 1}
        if self.w is not None:
            d["w"] = self.w + 1
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Step":
        w = d.get("w")
        return cls(d["op"], int(d["u"]) - 1, None if w is None else int(w) - 1)


@dataclass(frozen=True)
class MinorWitness:
    """Steps taking the host to a digraph that ``mapping`` sends onto the pattern."""

    steps: tuple[Step, ...]
    mapping: tuple[int, ...]
    pattern: Digraph
    name: str = ""

    def replay(self, host: Digraph) -> Digraph:
        D = host
        for step in self.steps:
            D = step.apply(D)
        return D

    def verify(self, host: Digraph) -> bool:
        try:
            final = self.replay(host)
        except InputError:
            return False
        if final.n != self.pattern.n:
            return False
        return relabel(final, self.mapping) == self.pattern

    def to_json(self) -> dict:
        return {
            "pattern": self.name,
            "steps": [s.to_json() for s in self.steps],
            "mapping": [x + 1 for x in self.mapping],
        }


# -- search ---------------------------------------------------------------------

def _reducing_steps(D: Digraph) -> Iterator[tuple[tuple[Step, ...], Digraph]]:
    """Every normal-form move that removes exactly one vertex, deduplicated."""
    seen: set = set()
    for u, w in D.arcs:
        if u < w and D.has_arc(w, u):
            child = identify(D, u, w)[0]
            if child.arcs not in seen:
                seen.add(child.arcs)
                yield (Step("contract_bidirected", u, w),), child
    for u, w in D.arcs:
        sides = (
            [(u, x) for x in sorted(D.out_neighbors[u]) if x != w],
            [(z, w) for z in sorted(D.in_neighbors[w]) if z != u],
        )
        for extra in sorted(sides, key=len):
            child = identify(delete_arcs(D, extra), u, w)[0]
            if child.arcs not in seen:
                seen.add(child.arcs)
                steps = tuple(Step("delete_arc", a, b) for a, b in extra)
                yield steps + (Step("butterfly_contract", u, w),), child
    for v in range(D.n):
        child = delete_vertex(D, v)[0]
        if child.arcs not in seen:
            seen.add(child.arcs)
            yield (Step("delete_vertex", v),), child


def _finish(D: Digraph, P: Digraph) -> Optional[tuple[tuple[Step, ...], tuple[int, ...]]]:
    phi = find_embedding(P, D)
    if phi is None:
        return None
    image = {(phi[a], phi[b]) for a, b in P.arcs}
    extra = [a for a in D.arcs if a not in image]
    inverse = [0] * D.n
    for a, x in enumerate(phi):
        inverse[x] = a
    return tuple(Step("delete_arc", a, b) for a, b in extra), tuple(inverse)


def has_directed_minor(D: Digraph, P: Digraph, cap: int = DEFAULT_CAP,
                       name: str = "") -> Optional[MinorWitness]:
    """A replayable witness that P is a directed minor of D, or None.

    The search is exhaustive, so None means P is not a minor.
    """
    if D.n > cap:
        raise CapacityError(f"minor search limited to {cap} host vertices, got {D.n}")
    k, m = P.n, P.m
    failed: set = set()

    def search(G: Digraph):
        if G.n < k or G.m < m:
            return None
        if G.n == k:
            return _finish(G, P)
        key = canonical_form(G)
        if key in failed:
            return None
        for steps, child in _reducing_steps(G):
            found = search(child)
            if found is not None:
                return steps + found[0], found[1]
        failed.add(key)
        return None

    found = search(D)
    if found is None:
        return None
    witness = MinorWitness(found[0], found[1], P, name)
    if not witness.verify(D):
        raise InternalConsistencyError("minor witness failed to replay")
    return witness


@dataclass(frozen=True)
class ForbiddenScan:
    witnesses: dict[str, Optional[MinorWitness]]

    @property
    def clean(self) -> bool:
        return all(w is None for w in self.witnesses.values())

    def first(self) -> Optional[MinorWitness]:
        return next((w for w in self.witnesses.values() if w is not None), None)


def forbidden_scan(D: Digraph, cap: int = DEFAULT_CAP, stop_early: bool = False) -> ForbiddenScan:
    """Search D for each of K3, N4, M5 and the reversals of N4 and M5."""
    found: dict[str, Optional[MinorWitness]] = {}
    for name in FORBIDDEN:
        found[name] = has_directed_minor(D, CATALOG[name], cap=cap, name=name)
        if stop_early and found[name] is not None:
            break
    return ForbiddenScan(found)


# -- low-degree pairs ---------------------------------------------------------------

@dataclass(frozen=True)
class LowDegreePair:
    """A digraph reached by butterfly contractions, and a pair on it.

    ``pair`` is ``(v, w)`` with outdeg(v) <= 1, indeg(w) <= 1, v != w and no
    arc between them, or None when no such pair could be produced.
    """

    digraph: Digraph
    contractions: tuple[Step, ...]
    pair: Optional[tuple[int, int]]


def low_degree_pairs(D: Digraph) -> list[tuple[int, int]]:
    """Valid pairs of D itself, best first (lowest degrees, then indices)."""
    outs = [len(s) for s in D.out_neighbors]
    ins = [len(s) for s in D.in_neighbors]
    pairs = [
        (v, w)
        for v in range(D.n) if outs[v] <= 1
        for w in range(D.n) if ins[w] <= 1
        if v != w and not D.has_arc(v, w) and not D.has_arc(w, v)
    ]
    pairs.sort(key=lambda p: (outs[p[0]] + ins[p[1]], p))
    return pairs


def _normalizing_arc(D: Digraph) -> Optional[tuple[int, int]]:
    """A butterfly-contractible arc at a low-degree vertex, joining v and w if possible."""
    outs = [len(s) for s in D.out_neighbors]
    ins = [len(s) for s in D.in_neighbors]
    lows = [v for v in range(D.n) if outs[v] <= 1]
    highs = [w for w in range(D.n) if ins[w] <= 1]
    for v in lows:
        for w in highs:
            for a, b in ((v, w), (w, v)):
                if a != b and D.has_arc(a, b) and is_butterfly_contractible(D, a, b):
                    return a, b
    for v in lows:
        if outs[v] == 1:
            return v, next(iter(D.out_neighbors[v]))
    for w in highs:
        if ins[w] == 1:
            return next(iter(D.in_neighbors[w])), w
    return None


def find_low_degree_pair(D: Digraph) -> LowDegreePair:
    """Normalize D by butterfly contractions until a valid pair appears.

    When the low-outdegree and low-indegree vertices coincide or are
    adjacent, an arc at them is contracted and the search repeats.
    """
    trace: list[Step] = []
    while True:
        pairs = low_degree_pairs(D)
        if pairs:
            return LowDegreePair(D, tuple(trace), pairs[0])
        if D.n <= 1:
            return LowDegreePair(D, tuple(trace), None)
        arc = _normalizing_arc(D)
        if arc is None:
            return LowDegreePair(D, tuple(trace), None)
        trace.append(Step("butterfly_contract", *arc))
        D = butterfly_contract(D, *arc)[0]
