"""Isomorph-free enumeration of feasible graphs by canonical augmentation.

The generation tree roots at the empty graph; a child adds one edge.
Two filters keep the output isomorph-free without a seen-set:

* parent side — the candidate r-sets (non-edges) are grouped into
  automorphism orbits of the parent (cheap invariant first, marked
  canonical forms to split ties) and one representative per orbit is
  tried;
* child side — an augmented graph is accepted only when the added edge
  lies in its canonical-deletion orbit, the edge orbit minimizing an
  isomorphism-invariant key (cheap invariant, then marked canonical
  form).

Marking a vertex set means pinning it as the first cell of the ordered
partition fed to the canonical labeler: an r-set is the only edge fully
inside its own cell, so equal marked forms mean an isomorphism carrying
one marked set to the other.  Feasibility (no forbidden realization) is
downward closed, so the tree never needs to look above an infeasible
graph.  Everything is deterministic; one graph per isomorphism class is
yielded in the generated labeling.
"""

from __future__ import annotations

from typing import Iterator

from .canon import canonical_labeling
from .core import Hypergraph
from .solver import ForbiddenConfig, _Searcher


def _marked_key(n: int, edges: tuple, mark: tuple) -> tuple:
    cells = [list(mark)]
    rest = [v for v in range(n) if v not in mark]
    if rest:
        cells.append(rest)
    _, canon_edges = canonical_labeling(n, edges, initial_cells=cells)
    return canon_edges


def _vertex_profiles(n: int, edges: tuple):
    """Per-vertex invariant: degree plus the sorted degree-profiles of
    incident edges."""
    deg = [0] * n
    for e in edges:
        for v in e:
            deg[v] += 1
    prof = [[] for _ in range(n)]
    for e in edges:
        shape = tuple(sorted(deg[v] for v in e))
        for v in e:
            prof[v].append(shape)
    return [(deg[v], tuple(sorted(prof[v]))) for v in range(n)]


def _set_invariant(profiles, s: tuple):
    return tuple(sorted(profiles[v] for v in s))


def _orbit_representatives(n: int, edges: tuple, candidates: list) -> list:
    """One candidate r-set per automorphism orbit of the given graph."""
    profiles = _vertex_profiles(n, edges)
    groups: dict = {}
    for s in candidates:
        groups.setdefault(_set_invariant(profiles, s), []).append(s)
    reps = []
    for group in groups.values():
        if len(group) == 1:
            reps.append(group[0])
            continue
        seen = set()
        for s in group:
            key = _marked_key(n, edges, s)
            if key not in seen:
                seen.add(key)
                reps.append(s)
    reps.sort()
    return reps


def _is_canonical_addition(n: int, edges: tuple, added: tuple) -> bool:
    """Does `added` lie in the canonical-deletion orbit of this graph?"""
    profiles = _vertex_profiles(n, edges)
    inv_added = _set_invariant(profiles, added)
    tied = []
    for e in edges:
        inv = _set_invariant(profiles, e)
        if inv < inv_added:
            return False
        if inv == inv_added:
            tied.append(e)
    if len(tied) == 1:
        return True
    key_added = _marked_key(n, edges, added)
    return all(key_added <= _marked_key(n, edges, e)
               for e in tied if e != added)


def free_graphs(n: int, config: ForbiddenConfig) -> Iterator[Hypergraph]:
    """All feasible graphs on n labeled vertices, one per isomorphism
    class, in nondecreasing edge-count order along each branch."""
    s = _Searcher(n, config)
    universe = s.edges

    def visit(mask: int, edges: tuple) -> Iterator[Hypergraph]:
        yield Hypergraph(n, s.r, edges)
        present = set(edges)
        candidates = [e for e in universe if e not in present]
        for e in _orbit_representatives(n, edges, candidates):
            child_mask = mask | (1 << s.index[e])
            if not s.is_feasible(child_mask):
                continue
            child_edges = tuple(sorted(edges + (e,)))
            if _is_canonical_addition(n, child_edges, e):
                yield from visit(child_mask, child_edges)

    yield from visit(0, ())


def count_free(n: int, config: ForbiddenConfig) -> int:
    return sum(1 for _ in free_graphs(n, config))
