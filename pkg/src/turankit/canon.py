"""Deterministic canonical labeling for small uniform hypergraphs.

The canonical form of (n, edges) is the lexicographically least relabeled
edge list over all vertex permutations (edge tuples sorted ascending, edge
lists sorted, lists compared lexicographically).  That global minimum is
found in two phases:

1.  a refinement/individualization scan (classical partition refinement,
    branching over the first smallest non-singleton cell) whose leaves
    yield concrete relabelings; pairs of leaves with equal relabeled edge
    lists reveal automorphisms.  This phase supplies automorphism
    generators and a good starting upper bound;

2.  an exact branch-and-bound that assigns labels 0..n-1 one vertex at a
    time, pruning with (a) a sound optimistic completion bound on the
    final edge list, and (b) orbit pruning: candidate vertices lying in a
    common orbit of the stabilizer (under the known automorphisms) of the
    already-assigned vertices are interchangeable, so only the first is
    explored.  New automorphisms discovered at equal-value leaves sharpen
    the pruning as the search runs.

Both phases are deterministic, pure Python, and desk-scale by design.
An ordered initial partition ("cells") may be supplied: vertices of
earlier cells are forced to receive smaller labels, which turns the
routine into a canonical form of a vertex-colored hypergraph (used for
marked-edge orbit tests elsewhere).
"""

from __future__ import annotations

from bisect import bisect_left, insort
from itertools import combinations
from math import comb
from typing import Optional, Sequence

Edge = tuple[int, ...]


def _refine(n: int, incident: Sequence[Sequence[Edge]], cells: list[list[int]]) -> list[list[int]]:
    """Split cells by incidence signatures until the partition is stable."""
    while True:
        cell_of = [0] * n
        for ci, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = ci
        new_cells: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            buckets: dict[tuple, list[int]] = {}
            for v in cell:
                sig = tuple(sorted(tuple(sorted(cell_of[u] for u in e)) for e in incident[v]))
                buckets.setdefault(sig, []).append(v)
            if len(buckets) == 1:
                new_cells.append(cell)
            else:
                changed = True
                for sig in sorted(buckets):
                    new_cells.append(sorted(buckets[sig]))
        cells = new_cells
        if not changed:
            return cells


class _OrbitOracle:
    """Union-find over the orbits of the subgroup generated by the known
    automorphisms that fix `base` pointwise."""

    def __init__(self, n: int, generators: list[tuple[int, ...]], base):
        self.n = n
        self.parent = list(range(n))
        for g in generators:
            if all(g[b] == b for b in base):
                for a in range(n):
                    self._union(a, g[a])

    def _find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def _union(self, a: int, b: int) -> None:
        ra, rb = self._find(a), self._find(b)
        if ra != rb:
            self.parent[ra] = rb

    def same(self, v: int, others) -> bool:
        rv = self._find(v)
        return any(self._find(u) == rv for u in others)


def _twin_transpositions(n: int, edges: Sequence[Edge],
                         cell_of: Sequence[int]) -> list[tuple[int, ...]]:
    """Automorphisms that are free to detect: transpositions (u v) of
    same-cell vertices whose swap maps the edge set onto itself."""
    edge_set = set(edges)
    incident: list[list[Edge]] = [[] for _ in range(n)]
    for e in edges:
        for v in e:
            incident[v].append(e)

    def swaps_ok(u: int, v: int) -> bool:
        for w, x in ((u, v), (v, u)):
            for e in incident[w]:
                if x in e:
                    continue
                if tuple(sorted(x if y == w else y for y in e)) not in edge_set:
                    return False
        return True

    out = []
    for u in range(n):
        for v in range(u + 1, n):
            if cell_of[u] == cell_of[v] and swaps_ok(u, v):
                g = list(range(n))
                g[u], g[v] = v, u
                out.append(tuple(g))
    return out


def _refinement_scan(n: int, edges: Sequence[Edge], cells0: list[list[int]],
                     seed_gens: list[tuple[int, ...]]):
    """Phase 1: collect automorphism generators and one achievable
    relabeled edge list (an upper bound for phase 2)."""
    incident: list[list[Edge]] = [[] for _ in range(n)]
    for e in edges:
        for v in e:
            incident[v].append(e)

    best_edges: Optional[tuple[Edge, ...]] = None
    best_perm: Optional[tuple[int, ...]] = None
    leaf_seen: dict[tuple[Edge, ...], tuple[int, ...]] = {}
    generators: list[tuple[int, ...]] = list(seed_gens)
    gen_set: set[tuple[int, ...]] = set(seed_gens)

    def visit_leaf(cells: list[list[int]]) -> None:
        nonlocal best_edges, best_perm
        perm = [0] * n
        for pos, cell in enumerate(cells):
            perm[cell[0]] = pos
        relabeled = tuple(sorted(tuple(sorted(perm[v] for v in e)) for e in edges))
        prev = leaf_seen.get(relabeled)
        if prev is None:
            leaf_seen[relabeled] = tuple(perm)
        else:
            inv_prev = [0] * n
            for v in range(n):
                inv_prev[prev[v]] = v
            gamma = tuple(inv_prev[perm[v]] for v in range(n))
            if gamma not in gen_set and any(gamma[v] != v for v in range(n)):
                gen_set.add(gamma)
                generators.append(gamma)
        if best_edges is None or relabeled < best_edges:
            best_edges = relabeled
            best_perm = tuple(perm)

    def search(cells: list[list[int]], base: tuple[int, ...]) -> None:
        cells = _refine(n, incident, cells)
        target = -1
        size = n + 1
        for idx, cell in enumerate(cells):
            if 1 < len(cell) < size:
                target = idx
                size = len(cell)
        if target < 0:
            visit_leaf(cells)
            return
        explored: list[int] = []
        for v in cells[target]:
            if explored and _OrbitOracle(n, generators, base).same(v, explored):
                explored.append(v)
                continue
            rest = [u for u in cells[target] if u != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            search(child, base + (v,))
            explored.append(v)

    search([list(c) for c in cells0], ())
    assert best_perm is not None and best_edges is not None
    return generators, gen_set, best_perm, best_edges


def canonical_labeling(n: int, edges: Sequence[Edge],
                       initial_cells: Optional[Sequence[Sequence[int]]] = None,
                       ) -> tuple[tuple[int, ...], tuple[Edge, ...]]:
    """Return (perm, canonical_edges) with perm[old_vertex] = new_vertex.

    `canonical_edges` is the lexicographically least relabeling of `edges`
    over all permutations that respect `initial_cells` (vertices of earlier
    cells receive smaller labels).  With the default single-cell start the
    minimum is over all n! permutations, so isomorphic inputs produce
    identical edge lists.
    """
    if n == 0:
        return (), ()
    if initial_cells is None:
        cells0 = [list(range(n))]
    else:
        cells0 = [sorted(c) for c in initial_cells if len(c) > 0]
        if sorted(v for c in cells0 for v in c) != list(range(n)):
            raise ValueError("initial cells must partition the vertex set")

    if not edges:
        perm = [0] * n
        pos = 0
        for cell in cells0:
            for v in cell:
                perm[v] = pos
                pos += 1
        return tuple(perm), ()

    # cell membership and the label range each cell occupies
    cell_of = [0] * n
    for ci, cell in enumerate(cells0):
        for v in cell:
            cell_of[v] = ci
    cell_stop = []
    acc = 0
    for cell in cells0:
        acc += len(cell)
        cell_stop.append(acc)

    twins = _twin_transpositions(n, edges, cell_of)
    generators, gen_set, seed_perm, seed_edges = _refinement_scan(n, edges, cells0, twins)

    m = len(edges)
    r = len(edges[0])
    incident_idx: list[list[int]] = [[] for _ in range(n)]
    for i, e in enumerate(edges):
        for v in e:
            incident_idx[v].append(i)

    best: list[Edge] = list(seed_edges)
    best_assign: Optional[tuple[int, ...]] = None

    label_of = [-1] * n   # old vertex -> label
    assign = [-1] * n     # label -> old vertex
    maxtuple = (n,) * r

    # Optimistic-completion pools: an edge still undecided once labels
    # 0..j-1 are placed ends up as a tuple whose largest label is >= j,
    # and distinct edges end up as distinct tuples.  pools[j] lists all
    # such tuples in order, so merging `decided` with the first k pool
    # entries lower-bounds every completable edge list.
    if comb(n, r) <= 4096:
        universe = list(combinations(range(n), r))
        pools: Optional[list[list[Edge]]] = [
            [t for t in universe if t[-1] >= j] for j in range(n)]
    else:
        pools = None

    def improve(final: list[Edge], here: tuple[int, ...]) -> None:
        nonlocal best, best_assign
        if final < best:
            best = list(final)
            best_assign = here

    def bound_beats_best(j: int, decided: list[Edge]) -> bool:
        """True iff the optimistic completion of `decided` is >= best
        (so the subtree cannot strictly improve and may be cut)."""
        k = m - len(decided)
        if pools is not None:
            pool = pools[j]
            if k > len(pool):
                return True
            i = p = 0
            nd = len(decided)
            for b in best:
                if i < nd and (p >= k or decided[i] <= pool[p]):
                    t = decided[i]
                    i += 1
                else:
                    t = pool[p]
                    p += 1
                if t != b:
                    return t > b
            return True  # optimistic completion equals best exactly
        opt = tuple(range(r - 1)) + (j,)
        cut = bisect_left(decided, opt)
        lb = decided[:cut] + [opt] * k + decided[cut:]
        return lb >= best

    def search(j: int, decided: list[Edge]) -> None:
        if j == n:
            improve(decided, tuple(assign))
            return
        if len(decided) == m:
            # every edge already has its final tuple; finish with the
            # least remaining vertex of each label's cell
            here = list(assign)
            for jj in range(j, n):
                ci = bisect_left(cell_stop, jj + 1)
                pick = min(u for u in cells0[ci]
                           if label_of[u] < 0 and u not in here[j:jj])
                here[jj] = pick
            improve(decided, tuple(here))
            return
        if bound_beats_best(j, decided):
            return
        # candidates: unused vertices of the cell that owns label j
        ci = bisect_left(cell_stop, j + 1)
        cand = [u for u in cells0[ci] if label_of[u] < 0]
        scored = []
        for u in cand:
            newly = []
            for ei in incident_idx[u]:
                e = edges[ei]
                if all(label_of[w] >= 0 for w in e if w != u):
                    newly.append(tuple(sorted((label_of[w] if w != u else j) for w in e)))
            newly.sort()
            scored.append((newly or [maxtuple], u, newly))
        scored.sort(key=lambda t: (t[0], t[1]))
        base = tuple(v for v in range(n) if label_of[v] >= 0)
        oracle = _OrbitOracle(n, generators, base) if len(scored) > 1 else None
        tried: list[int] = []
        for _, u, newly in scored:
            if tried and oracle is not None and oracle.same(u, tried):
                tried.append(u)
                continue
            label_of[u] = j
            assign[j] = u
            child = decided
            if newly:
                child = list(decided)
                for t in newly:
                    insort(child, t)
            search(j + 1, child)
            label_of[u] = -1
            assign[j] = -1
            tried.append(u)

    search(0, [])
    if best_assign is None:
        # phase 2 never strictly improved on the phase-1 labeling
        return seed_perm, tuple(seed_edges)
    perm = [0] * n
    for label in range(n):
        perm[best_assign[label]] = label
    return tuple(perm), tuple(best)
