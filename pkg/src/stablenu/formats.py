"""Text and JSON formats.  Vertex numbers are 1-based on disk, 0-based in memory.

Writers emit a canonical layout, so parse followed by write reproduces a
canonically written file byte for byte.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .bipartite import BipartiteMultigraph, PerfectMatching
from .digraph import Digraph
from .errors import InputError
from .kelly import KellyDecomposition
from .matrixlab.linalg import RationalMatrix


def _lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line.split())
    return out


def _int(tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"expected an integer for {what}, got {tok!r}") from None


def _header(lines: list[list[str]], word: str, count: int) -> list[int]:
    if not lines or lines[0][0] != word or len(lines[0]) != count + 1:
        raise InputError(f"expected header '{word}' with {count} size field(s)")
    sizes = [_int(t, "size") for t in lines[0][1:]]
    if any(s < 0 for s in sizes):
        raise InputError("negative size")
    return sizes


def _vertex(tok: str, n: int) -> int:
    v = _int(tok, "vertex")
    if not 1 <= v <= n:
        raise InputError(f"vertex {v} out of range 1..{n}")
    return v - 1


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON: {e}") from None


def dumps_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def looks_like_json(text: str) -> bool:
    return text.lstrip().startswith("{")


# -- digraphs -------------------------------------------------------------------

def parse_digraph(text: str) -> Digraph:
    if looks_like_json(text):
        return digraph_from_json(load_json(text))
    lines = _lines(text)
    (n,) = _header(lines, "digraph", 1)
    arcs = []
    for toks in lines[1:]:
        if len(toks) != 2:
            raise InputError(f"arc line needs two vertices: {' '.join(toks)!r}")
        arcs.append((_vertex(toks[0], n), _vertex(toks[1], n)))
    return Digraph.from_arcs(n, arcs)


def format_digraph(D: Digraph) -> str:
    return "".join([f"digraph {D.n}\n"] + [f"{u + 1} {w + 1}\n" for u, w in D.arcs])


def digraph_to_json(D: Digraph) -> dict:
    return {"n": D.n, "arcs": [[u + 1, w + 1] for u, w in D.arcs]}


def digraph_from_json(d: Any) -> Digraph:
    try:
        n = int(d["n"])
        arcs = [(int(u) - 1, int(w) - 1) for u, w in d["arcs"]]
    except (KeyError, TypeError, ValueError):
        raise InputError("digraph JSON needs 'n' and a list of [u, w] 'arcs'") from None
    return Digraph.from_arcs(n, arcs)


# -- matrices -------------------------------------------------------------------

def _fraction(tok: Any) -> Fraction:
    if isinstance(tok, bool) or not isinstance(tok, (int, str)):
        raise InputError(f"matrix entries must be integers or 'p/q' strings, got {tok!r}")
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad rational {tok!r}") from None


def parse_matrix(text: str) -> RationalMatrix:
    if looks_like_json(text):
        return matrix_from_json(load_json(text))
    lines = _lines(text)
    (n,) = _header(lines, "matrix", 1)
    rows = lines[1:]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InputError(f"expected {n} rows of {n} entries")
    return RationalMatrix([[_fraction(t) for t in r] for r in rows], n)


def format_matrix(A: RationalMatrix) -> str:
    body = "".join(" ".join(str(x) for x in r) + "\n" for r in A.rows)
    return f"matrix {A.n}\n" + body


def matrix_to_json(A: RationalMatrix) -> dict:
    return {"n": A.n, "entries": [[str(x) for x in r] for r in A.rows]}


def matrix_from_json(d: Any) -> RationalMatrix:
    try:
        n = int(d["n"])
        rows = d["entries"]
    except (KeyError, TypeError, ValueError):
        raise InputError("matrix JSON needs 'n' and 'entries'") from None
    if not isinstance(rows, list) or len(rows) != n or any(
            not isinstance(r, list) or len(r) != n for r in rows):
        raise InputError(f"expected {n} rows of {n} entries")
    return RationalMatrix([[_fraction(t) for t in r] for r in rows], n)


def vector_to_json(v) -> list[str]:
    return [str(x) for x in v]


# -- bipartite multigraphs --------------------------------------------------------

def parse_bigraph(text: str) -> tuple[BipartiteMultigraph, PerfectMatching | None]:
    """``bigraph nL nR``, edge lines ``i j mult``, then optionally ``matching``
    followed by ``i j`` lines."""
    lines = _lines(text)
    nl, nr = _header(lines, "bigraph", 2)
    counts: dict = {}
    matching = None
    for toks in lines[1:]:
        if toks == ["matching"]:
            if matching is not None:
                raise InputError("duplicate matching section")
            matching = set()
            continue
        if matching is None:
            if len(toks) != 3:
                raise InputError(f"edge line needs 'i j mult': {' '.join(toks)!r}")
            e = (_vertex(toks[0], nl), _vertex(toks[1], nr))
            mult = _int(toks[2], "multiplicity")
            if mult < 1:
                raise InputError("multiplicities must be positive")
            if e in counts:
                raise InputError(f"edge {e[0] + 1} {e[1] + 1} listed twice")
            counts[e] = mult
        else:
            if len(toks) != 2:
                raise InputError(f"matching line needs 'i j': {' '.join(toks)!r}")
            matching.add((_vertex(toks[0], nl), _vertex(toks[1], nr)))
    G = BipartiteMultigraph.from_counts(nl, nr, counts)
    return G, None if matching is None else frozenset(matching)


def format_bigraph(G: BipartiteMultigraph, M: PerfectMatching | None = None) -> str:
    out = [f"bigraph {G.n_left} {G.n_right}\n"]
    out += [f"{i + 1} {j + 1} {m}\n" for (i, j), m in G.edges]
    if M is not None:
        out.append("matching\n")
        out += [f"{i + 1} {j + 1}\n" for i, j in sorted(M)]
    return "".join(out)


# -- Kelly-decompositions -----------------------------------------------------------

def decomposition_from_json(d: Any) -> KellyDecomposition:
    """``{nodes, dag-arcs, W, X, child-order, root-order}``, 1-based throughout."""
    try:
        t = int(d["nodes"])
        arcs = tuple((int(a) - 1, int(b) - 1) for a, b in d.get("dag-arcs", []))
        W = tuple(frozenset(int(v) - 1 for v in part) for part in d["W"])
        X = tuple(frozenset(int(v) - 1 for v in part) for part in d["X"])
        child = {int(k) - 1: tuple(int(c) - 1 for c in v)
                 for k, v in d.get("child-order", {}).items()}
        roots = tuple(int(r) - 1 for r in d.get("root-order", []))
    except (KeyError, TypeError, ValueError, AttributeError):
        raise InputError("decomposition JSON needs nodes, W, X and optional "
                         "dag-arcs, child-order, root-order") from None
    if len(W) != t or len(X) != t:
        raise InputError("W and X must list one set per node")
    return KellyDecomposition(arcs, W, X, child, roots)


def decomposition_to_json(KD: KellyDecomposition) -> dict:
    return {
        "nodes": KD.nodes,
        "dag-arcs": [[a + 1, b + 1] for a, b in KD.dag_arcs],
        "W": [sorted(v + 1 for v in part) for part in KD.W],
        "X": [sorted(v + 1 for v in part) for part in KD.X],
        "child-order": {str(k + 1): [c + 1 for c in v] for k, v in sorted(KD.child_order.items())},
        "root-order": [r + 1 for r in KD.root_order],
    }
