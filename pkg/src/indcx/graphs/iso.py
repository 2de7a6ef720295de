"""Desk-scale graph isomorphism by colour refinement plus backtracking.

Both graphs are refined jointly (as one disjoint union) so colour ids are
comparable across them; the search individualises one vertex of the first
graph against each same-coloured vertex of the second and refines again.
"""

from __future__ import annotations

from collections import Counter

from .core import Graph, _bits


def _refine(adj: list[list[int]], colors: list[int]) -> list[int]:
    ncolors = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(len(adj))]
        table = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [table[s] for s in sigs]
        if len(table) == ncolors:
            return new
        colors, ncolors = new, len(table)


def color_classes(g: Graph) -> list[int]:
    """Stable colour-refinement colouring of ``g`` (starting from degrees)."""
    adj = [g.neighbors(i) for i in range(g.order)]
    return _refine(adj, [len(a) for a in adj])


def find_isomorphism(g: Graph, h: Graph) -> dict | None:
    """An index map ``g -> h`` preserving adjacency, or ``None``."""
    n = g.order
    if n != h.order or g.size != h.size:
        return None
    if sorted(map(int.bit_count, g.nbrs)) != sorted(map(int.bit_count, h.nbrs)):
        return None
    adj = [g.neighbors(i) for i in range(n)] + [[j + n for j in h.neighbors(i)] for i in range(n)]
    start = [len(a) for a in adj]

    def search(colors):
        colors = _refine(adj, colors)
        left, right = Counter(colors[:n]), Counter(colors[n:])
        if left != right:
            return None
        cells = [c for c, k in left.items() if k > 1]
        if not cells:
            where = {colors[n + j]: j for j in range(n)}
            mapping = {i: where[colors[i]] for i in range(n)}
            for i, j in g.edge_list:
                if not h.has_edge(mapping[i], mapping[j]):
                    return None
            return mapping
        target = min(cells, key=lambda c: (left[c], c))
        x = next(i for i in range(n) if colors[i] == target)
        fresh = max(colors) + 1
        for y in range(n, 2 * n):
            if colors[y] != target:
                continue
            trial = list(colors)
            trial[x] = trial[y] = fresh
            found = search(trial)
            if found is not None:
                return found
        return None

    return search(start)


def isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


def connected_components(g: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for s in range(g.order):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            grow = 0
            for v in _bits(frontier):
                grow |= g.nbrs[v]
            frontier = grow & ~comp
            comp |= frontier
        seen |= comp
        comps.append(list(_bits(comp)))
    return comps
