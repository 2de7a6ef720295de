"""Immutable labeled simple graphs and the basic graph operations.

Vertices carry provenance labels (ints, strings, or tuples of those) and a
canonical integer index given by their position in ``Graph.labels``.
Adjacency is stored as one bitmask per vertex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """A simple graph: ``labels[i]`` names vertex ``i``, ``nbrs[i]`` is its
    neighbourhood as a bitmask over vertex indices."""

    labels: tuple
    nbrs: tuple

    def __post_init__(self):
        n = len(self.labels)
        if len(self.nbrs) != n:
            raise ValueError("labels and neighbourhoods differ in length")
        if len(set(self.labels)) != n:
            raise ValueError("vertex labels must be unique")
        full = (1 << n) - 1
        for i, m in enumerate(self.nbrs):
            if m & ~full:
                raise ValueError(f"vertex {i} has a neighbour out of range")
            if m >> i & 1:
                raise ValueError(f"self-loop at vertex {self.labels[i]!r}")
            for j in _bits(m):
                if not self.nbrs[j] >> i & 1:
                    raise ValueError("adjacency is not symmetric")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, labels: Sequence[Hashable], edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build from index pairs."""
        labels = tuple(labels)
        nbrs = [0] * len(labels)
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {labels[i]!r}")
            nbrs[i] |= 1 << j
            nbrs[j] |= 1 << i
        return cls(labels, tuple(nbrs))

    @classmethod
    def from_label_edges(cls, labels: Sequence[Hashable], edges: Iterable[tuple]) -> "Graph":
        labels = tuple(labels)
        index = {lab: i for i, lab in enumerate(labels)}
        return cls.from_edges(labels, ((index[a], index[b]) for a, b in edges))

    # -- queries ------------------------------------------------------------

    def __len__(self):
        return len(self.labels)

    @property
    def order(self) -> int:
        return len(self.labels)

    @cached_property
    def _index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label) -> int:
        """Canonical index of ``label``; raises ``KeyError`` if absent."""
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown vertex {label!r}") from None

    def __contains__(self, label) -> bool:
        return label in self._index

    def neighbors(self, i: int) -> list[int]:
        return list(_bits(self.nbrs[i]))

    def degree(self, i: int) -> int:
        return self.nbrs[i].bit_count()

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.nbrs[i] >> j & 1)

    @cached_property
    def edge_list(self) -> tuple:
        """Sorted index pairs ``(i, j)`` with ``i < j``."""
        return tuple((i, j) for i, m in enumerate(self.nbrs) for j in _bits(m >> (i + 1) << (i + 1)))

    @property
    def size(self) -> int:
        return len(self.edge_list)

    def isolated_vertices(self) -> list[int]:
        return [i for i, m in enumerate(self.nbrs) if not m]

    def is_triangle_free_at(self, i: int) -> bool:
        """True if vertex ``i`` lies in no triangle."""
        m = self.nbrs[i]
        return all(not (self.nbrs[j] & m) for j in _bits(m))

    def __repr__(self):
        return f"Graph(order={self.order}, size={self.size})"

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"labels": [_label_to_json(lab) for lab in self.labels],
                "edges": [list(e) for e in self.edge_list]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        labels = [_label_from_json(lab) for lab in data["labels"]]
        return cls.from_edges(labels, (tuple(e) for e in data["edges"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _label_to_json(label):
    if isinstance(label, tuple):
        return [_label_to_json(x) for x in label]
    return label


def _label_from_json(label):
    if isinstance(label, list):
        return tuple(_label_from_json(x) for x in label)
    return label


def subgraph_by_indices(g: Graph, keep: Iterable[int]) -> Graph:
    """Induced subgraph on the given indices, in canonical order."""
    keep = sorted(set(keep))
    pos = {old: new for new, old in enumerate(keep)}
    nbrs = []
    for old in keep:
        m = 0
        for j in _bits(g.nbrs[old]):
            if j in pos:
                m |= 1 << pos[j]
        nbrs.append(m)
    return Graph(tuple(g.labels[i] for i in keep), tuple(nbrs))


def induced_subgraph(g: Graph, keep: Iterable) -> Graph:
    """Induced subgraph on a set of vertex labels; labels are preserved."""
    return subgraph_by_indices(g, (g.index(lab) for lab in keep))


def delete_vertices(g: Graph, drop: Iterable) -> Graph:
    """``g`` minus a set of vertex labels."""
    gone = {g.index(lab) for lab in drop}
    return subgraph_by_indices(g, (i for i in range(g.order) if i not in gone))


def closed_neighborhood(g: Graph, label) -> set:
    i = g.index(label)
    return {g.labels[j] for j in _bits(g.nbrs[i])} | {label}


def tensor_product(g: Graph, h: Graph) -> Graph:
    """Categorical product: ``(a, b) ~ (c, d)`` iff ``a ~ c`` and ``b ~ d``."""
    nh = h.order
    labels = tuple((a, b) for a in g.labels for b in h.labels)
    nbrs = []
    for a in range(g.order):
        for b in range(nh):
            m = 0
            hb = h.nbrs[b]
            for c in _bits(g.nbrs[a]):
                m |= hb << (c * nh)
            nbrs.append(m)
    return Graph(labels, tuple(nbrs))


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union; vertex ``x`` of the ``t``-th operand is relabeled ``(t, x)``."""
    labels = []
    nbrs = []
    offset = 0
    for t, g in enumerate(graphs):
        labels.extend((t, lab) for lab in g.labels)
        nbrs.extend(m << offset for m in g.nbrs)
        offset += g.order
    return Graph(tuple(labels), tuple(nbrs))


def complement(g: Graph) -> Graph:
    full = (1 << g.order) - 1
    return Graph(g.labels, tuple(full & ~m & ~(1 << i) for i, m in enumerate(g.nbrs)))


def relabel(g: Graph, labels: Sequence[Hashable]) -> Graph:
    return Graph(tuple(labels), g.nbrs)
