"""Homotopy-preserving reductions of a graph's independence complex.

Rules
-----
fold
    if ``N(u) <= N(v)`` for some ``u != v``, delete ``v``.
cofiber
    if ``I(G - N[v])`` is (probe-)contractible, delete ``v``.
edge-suspension
    a connected component that is a single edge contributes one suspension:
    ``I(K_2 + H) = S I(H)``; delete both ends, bump the shift.

An isolated vertex makes ``I(G)`` a cone, so it ends reduction with status
``contractible``. Scans go in ascending canonical index and restart after
every deletion, which makes traces reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .graphs import Graph, subgraph_by_indices
from .graphs.core import _bits


class Status(str, Enum):
    OPEN = "open"
    CONTRACTIBLE = "contractible"


class Probe(str, Enum):
    CONTRACTIBLE = "contractible"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Step:
    rule: str
    witness: tuple
    removed: tuple


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple = ()

    def __len__(self):
        return len(self.steps)

    def to_json(self) -> list:
        from .graphs.core import _label_to_json

        return [{"rule": s.rule,
                 "witness": [_label_to_json(x) for x in s.witness],
                 "removed": [_label_to_json(x) for x in s.removed]} for s in self.steps]

    def dumps(self) -> str:
        return json.dumps(self.to_json())


@dataclass(frozen=True)
class ReducedForm:
    graph: Graph
    suspension_shift: int = 0
    status: Status = Status.OPEN
    trace: ReductionTrace = field(default_factory=ReductionTrace)

    @property
    def contractible(self) -> bool:
        return self.status is Status.CONTRACTIBLE


class _Work:
    """Mutable reduction state over the original vertex indices."""

    def __init__(self, g: Graph):
        self.g = g
        self.alive = (1 << g.order) - 1
        self.steps: list[Step] = []
        self.shift = 0
        self.contractible = False

    def nb(self, v: int) -> int:
        return self.g.nbrs[v] & self.alive

    def label(self, v: int):
        return self.g.labels[v]

    def remove(self, rule: str, witness, removed):
        for v in removed:
            self.alive &= ~(1 << v)
        self.steps.append(Step(rule, tuple(self.label(x) for x in witness),
                               tuple(self.label(x) for x in removed)))

    def find_isolated(self):
        for v in _bits(self.alive):
            if not self.nb(v):
                return v
        return None

    def fold_once(self) -> bool:
        for v in _bits(self.alive):
            nv = self.nb(v)
            # a dominated-by candidate u shares a neighbour with v
            cand = 0
            for w in _bits(nv):
                cand |= self.nb(w)
            cand &= ~(1 << v)
            for u in _bits(cand):
                if not self.nb(u) & ~nv:
                    self.remove("fold", (u,), (v,))
                    return True
        return False

    def folds(self):
        while not self.contractible:
            if self.find_isolated() is not None:
                self.contractible = True
                return
            if not self.fold_once():
                return

    def cofiber_once(self) -> bool:
        for v in _bits(self.alive):
            rest = self.alive & ~self.g.nbrs[v] & ~(1 << v)
            if not rest:
                continue
            witness = _probe_mask(self.g, rest)
            if witness is not None:
                self.remove("cofiber", (witness,), (v,))
                return True
        return False

    def peel_edge(self) -> bool:
        for v in _bits(self.alive):
            nv = self.nb(v)
            if nv.bit_count() == 1:
                u = nv.bit_length() - 1
                if self.nb(u) == 1 << v:
                    self.remove("edge-suspension", (), (v, u))
                    self.shift += 1
                    return True
        return False

    def result(self) -> ReducedForm:
        graph = subgraph_by_indices(self.g, _bits(self.alive))
        status = Status.CONTRACTIBLE if self.contractible else Status.OPEN
        return ReducedForm(graph, self.shift, status, ReductionTrace(tuple(self.steps)))


def _probe_mask(g: Graph, alive: int):
    """Fold the induced subgraph on ``alive``; return an isolated vertex if one appears."""
    work = _Work(g)
    work.alive = alive
    while True:
        iso = work.find_isolated()
        if iso is not None:
            return iso
        if not work.fold_once():
            return None


def fold_reduce(g: Graph) -> ReducedForm:
    work = _Work(g)
    work.folds()
    return work.result()


def contractibility_probe(g: Graph) -> Probe:
    """Sound but incomplete: ``contractible`` only when folding exposes an
    isolated vertex."""
    if g.order and _probe_mask(g, (1 << g.order) - 1) is not None:
        return Probe.CONTRACTIBLE
    return Probe.UNKNOWN


def _run(g: Graph, cofiber: bool, peel: bool) -> ReducedForm:
    work = _Work(g)
    while True:
        work.folds()
        if work.contractible:
            break
        if cofiber and work.cofiber_once():
            continue
        if peel and work.peel_edge():
            continue
        break
    return work.result()


def cofiber_prune(g: Graph) -> ReducedForm:
    """Fold to fixpoint, then delete one cofiber-removable vertex; repeat."""
    return _run(g, cofiber=True, peel=False)


def auto_reduce(g: Graph, edge_suspension: bool = True) -> ReducedForm:
    """Default reduction policy: folds, cofiber deletions and (optionally)
    edge-component suspensions, to fixpoint. Never uses star clusters."""
    return _run(g, cofiber=True, peel=edge_suspension)


def replay(g: Graph, trace: ReductionTrace) -> Graph:
    """Re-apply the deletions recorded in ``trace`` to ``g``."""
    gone = set()
    for step in trace.steps:
        gone.update(step.removed)
    return subgraph_by_indices(g, (i for i, lab in enumerate(g.labels) if lab not in gone))


def star_cluster_complex(g: Graph, v):
    """``(Complex, 1)`` where the complex is ``st(v) & SC(v)`` and ``I(g)`` is its
    suspension. ``v`` is a vertex label."""
    from .complex import star_cluster_faces

    return star_cluster_faces(g, g.index(v)), 1
