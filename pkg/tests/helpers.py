"""Independent oracles and small utilities shared by the test modules.

Everything here deliberately avoids the library's enumeration and
canonicalization paths: graphs are raw (genus, edges, legs) tuples,
generation is a filter over all multigraphs, and deduplication minimizes
over vertex bijections directly.
"""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement, permutations, product

from strata import DualGraph


def raw(G: DualGraph) -> tuple:
    return (G.genus, tuple(sorted(G.edges)), G.legs)


def relabel(G: DualGraph, perm: tuple[int, ...]) -> DualGraph:
    """Copy of ``G`` with vertex ``v`` renamed to ``perm[v]``."""
    genus = [0] * G.num_vertices
    for old, new in enumerate(perm):
        genus[new] = G.genus[old]
    edges = tuple((perm[i], perm[j]) for i, j in G.edges)
    legs = tuple(perm[v] for v in G.legs)
    return DualGraph(tuple(genus), edges, legs)


def _connected(V: int, edges) -> bool:
    parent = list(range(V))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    return len({find(v) for v in range(V)}) == 1


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _mark_assignments(marks: tuple[int, ...], counts: tuple[int, ...]):
    """All ways to deal ``marks`` into ordered groups of the given sizes."""
    if not counts:
        yield ()
        return
    for chosen in combinations(marks, counts[0]):
        rest = tuple(m for m in marks if m not in chosen)
        for tail in _mark_assignments(rest, counts[1:]):
            yield (chosen,) + tail


def oracle_canon(genus, edges, legs) -> tuple:
    """Reference canonical form: minimum over genus/leg-preserving bijections.

    Any isomorphism fixes leg labels and genera, so it permutes vertices
    only within groups of equal (genus, leg set); minimizing the relabeled
    encoding over those bijections is a complete invariant.
    """
    V = len(genus)
    legsets = [tuple(sorted(m for m, w in enumerate(legs) if w == v)) for v in range(V)]
    groups: dict[tuple, list[int]] = {}
    for v in range(V):
        groups.setdefault((genus[v], legsets[v]), []).append(v)
    ordered = [groups[key] for key in sorted(groups)]
    best = None
    for perms in product(*(permutations(cell) for cell in ordered)):
        new_id = [0] * V
        pos = 0
        for cell in perms:
            for v in cell:
                new_id[v] = pos
                pos += 1
        g2 = [0] * V
        for old in range(V):
            g2[new_id[old]] = genus[old]
        e2 = tuple(
            sorted(
                (new_id[i], new_id[j]) if new_id[i] <= new_id[j] else (new_id[j], new_id[i])
                for i, j in edges
            )
        )
        l2 = tuple(new_id[v] for v in legs)
        enc = (tuple(g2), e2, l2)
        if best is None or enc < best:
            best = enc
    return best


def oracle_strata(g: int, n: int, k: int) -> dict[tuple, tuple]:
    """All stable (g, n) dual graphs with k edges, by exhaustive filtering.

    Scans every multigraph on at most k+1 vertices, every genus assignment,
    and every stable distribution of the marks, deduplicating with
    :func:`oracle_canon`.  Returns canonical form -> one raw representative.
    """
    marks = tuple(range(1, n + 1))
    classes: dict[tuple, tuple] = {}
    for V in range(1, k + 2):
        pairs = [(i, j) for i in range(V) for j in range(i, V)]
        for edges in combinations_with_replacement(pairs, k):
            if not _connected(V, edges):
                continue
            cycle_rank = k - V + 1
            decoration = g - cycle_rank
            if decoration < 0:
                continue
            deg = [0] * V
            for i, j in edges:
                deg[i] += 1
                deg[j] += 1
            for genus in _compositions(decoration, V):
                for counts in _compositions(n, V):
                    stable = all(
                        deg[v] + counts[v] >= 3
                        if genus[v] == 0
                        else deg[v] + counts[v] >= 1
                        if genus[v] == 1
                        else True
                        for v in range(V)
                    )
                    if not stable:
                        continue
                    for groups in _mark_assignments(marks, counts):
                        legs = [0] * n
                        for v, group in enumerate(groups):
                            for m in group:
                                legs[m - 1] = v
                        raw_graph = (genus, edges, tuple(legs))
                        classes.setdefault(oracle_canon(*raw_graph), raw_graph)
    return classes
