"""Named graph families and the text syntax used to request them.

Two spellings are accepted:

* long form, ``cycle-x-complete:k=9,n=3`` or ``W:k=5,n=3`` -- factor names
  joined by ``-x-``; parameters are assigned to factors in the order given;
* short form, ``C9xK3``, ``K2xK3xK4``, ``P5xK3``, ``M2``, ``W(5,3)``,
  ``Hring(4,3)``, ``Q(3,3)``.

``str(spec)`` always yields the short form.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

from ..errors import ParameterError
from .core import Graph, subgraph_by_indices, tensor_product

log = logging.getLogger(__name__)

ATOMIC = ("complete", "cycle", "path", "star", "matching", "edgeless")
AUXILIARY = ("W", "H", "G", "Wring", "Hring", "Q")

_SHORT = {"K": "complete", "C": "cycle", "P": "path", "S": "star", "M": "matching", "E": "edgeless"}
_LETTER = {v: k for k, v in _SHORT.items()}

# (structural minimum, proven minimum) per parameter
_AUX_RANGES = {
    "W": ((1, 2), (2, 3)),
    "H": ((1, 2), (2, 3)),
    "G": ((1, 2), (2, 3)),
    "Wring": ((1, 2), (2, 3)),
    "Hring": ((1, 2), (2, 3)),
    "Q": ((1, 1), (2, 2)),
}
_ATOMIC_MIN = {"complete": 1, "cycle": 3, "path": 1, "star": 1, "matching": 1, "edgeless": 0}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple = ()
    factors: tuple = field(default=())

    def __post_init__(self):
        if self.family == "tensor":
            if len(self.factors) < 2:
                raise ParameterError("a tensor product needs at least two factors")
            for f in self.factors:
                if f.family not in ATOMIC:
                    raise ParameterError(f"product factors must be atomic graphs, got {f.family}")
        elif self.family in ATOMIC:
            if len(self.params) != 1:
                raise ParameterError(f"{self.family} takes exactly one parameter")
        elif self.family in AUXILIARY:
            if len(self.params) != 2:
                raise ParameterError(f"{self.family} takes exactly two parameters")
        else:
            raise ParameterError(f"unknown family {self.family!r}")
        if any(not isinstance(p, int) or isinstance(p, bool) for p in self.params):
            raise ParameterError("family parameters must be integers")

    def __str__(self):
        if self.family == "tensor":
            return "x".join(str(f) for f in self.factors)
        if self.family in ATOMIC:
            return f"{_LETTER[self.family]}{self.params[0]}"
        return f"{self.family}({','.join(map(str, self.params))})"

    @property
    def is_proven_range(self) -> bool:
        """Whether parameters lie where the family's results are stated."""
        if self.family in AUXILIARY:
            lo = _AUX_RANGES[self.family][1]
            return all(p >= m for p, m in zip(self.params, lo))
        return True

    def validate(self, allow_unproven: bool = False) -> None:
        if self.family == "tensor":
            for f in self.factors:
                f.validate()
            return
        if self.family in ATOMIC:
            p, lo = self.params[0], _ATOMIC_MIN[self.family]
            if p < lo:
                raise ParameterError(f"{self.family} needs parameter >= {lo}, got {p}")
            return
        structural, proven = _AUX_RANGES[self.family]
        for p, lo in zip(self.params, structural):
            if p < lo:
                raise ParameterError(f"{self} is not constructible (parameter {p} < {lo})")
        if not self.is_proven_range:
            if not allow_unproven:
                raise ParameterError(
                    f"{self} is outside the proven range k>={proven[0]}, n>={proven[1]}; "
                    "pass allow_unproven=True to build it anyway")
            log.warning("building %s outside its proven parameter range (unproven)", self)


def atomic(family: str, p: int) -> FamilySpec:
    return FamilySpec(family, (p,))


def product(*factors: FamilySpec) -> FamilySpec:
    return FamilySpec("tensor", (), tuple(factors))


_SHORT_ATOM = re.compile(r"^([KCPSME])(\d+)$")
_SHORT_AUX = re.compile(r"^(Wring|Hring|W|H|G|Q)\((\d+),(\d+)\)$")


def parse_spec(text: str) -> FamilySpec:
    """Parse a family spec in long or short form (see module docstring)."""
    text = text.strip().replace(" ", "")
    if ":" in text:
        return _parse_long(text)
    m = _SHORT_AUX.match(text)
    if m:
        return FamilySpec(m.group(1), (int(m.group(2)), int(m.group(3))))
    parts = text.split("x")
    atoms = []
    for part in parts:
        m = _SHORT_ATOM.match(part)
        if not m:
            raise ParameterError(f"cannot parse family spec {text!r}")
        atoms.append(atomic(_SHORT[m.group(1)], int(m.group(2))))
    return atoms[0] if len(atoms) == 1 else product(*atoms)


def _parse_long(text: str) -> FamilySpec:
    head, _, tail = text.partition(":")
    values = []
    for item in filter(None, tail.split(",")):
        key, eq, val = item.partition("=")
        if not eq:
            raise ParameterError(f"expected key=value, got {item!r}")
        try:
            values.append(int(val))
        except ValueError:
            raise ParameterError(f"parameter {key} must be an integer, got {val!r}") from None
    names = head.split("-x-")
    if len(names) == 1 and names[0] in AUXILIARY:
        return FamilySpec(names[0], tuple(values))
    if any(nm not in ATOMIC for nm in names):
        raise ParameterError(f"unknown family in {head!r}")
    if len(values) != len(names):
        raise ParameterError(f"{head} needs {len(names)} parameters, got {len(values)}")
    atoms = [atomic(nm, v) for nm, v in zip(names, values)]
    return atoms[0] if len(atoms) == 1 else product(*atoms)


# -- constructors -------------------------------------------------------------

def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(tuple(range(1, n + 1)), tuple(full & ~(1 << i) for i in range(n)))


def edgeless_graph(n: int) -> Graph:
    return Graph(tuple(range(1, n + 1)), (0,) * n)


def cycle_graph(k: int) -> Graph:
    return Graph.from_edges([f"u{i}" for i in range(1, k + 1)], ((i, (i + 1) % k) for i in range(k)))


def path_graph(k: int) -> Graph:
    return Graph.from_edges([f"u{i}" for i in range(1, k + 1)], ((i, i + 1) for i in range(k - 1)))


def star_graph(n: int) -> Graph:
    """``K_{1,n}``; vertex 1 is the centre."""
    return Graph.from_edges(range(1, n + 2), ((0, i) for i in range(1, n + 1)))


def matching_graph(q: int) -> Graph:
    """``M_q``: ``q`` disjoint edges ``{2i-1, 2i}``."""
    return Graph.from_edges(range(1, 2 * q + 1), ((2 * i, 2 * i + 1) for i in range(q)))


_ATOMIC_BUILDERS = {
    "complete": complete_graph,
    "cycle": cycle_graph,
    "path": path_graph,
    "star": star_graph,
    "matching": matching_graph,
    "edgeless": edgeless_graph,
}


def build_atomic(spec: FamilySpec) -> Graph:
    if spec.family not in ATOMIC:
        raise ParameterError(f"{spec.family} is not an atomic graph")
    spec.validate()
    return _ATOMIC_BUILDERS[spec.family](spec.params[0])


def _extend(g: Graph, new_labels, edges) -> Graph:
    labels = g.labels + tuple(new_labels)
    return Graph.from_label_edges(labels, [(g.labels[i], g.labels[j]) for i, j in g.edge_list] + list(edges))


def _path_product(k: int, n: int) -> Graph:
    return tensor_product(path_graph(k), complete_graph(n))


def _w_graph(k: int, n: int) -> Graph:
    base = _path_product(k, n)
    edges = [(("u1", i), "v1") for i in range(1, n + 1) if i != 2]
    edges += [((f"u{k}", i), "v2") for i in range(1, n + 1) if i != 2]
    return _extend(base, ["v1", "v2"], edges)


def _h_graph(k: int, n: int) -> Graph:
    base = _path_product(k, n)
    edges = [(("u1", i), "v1") for i in range(2, n + 1)]
    edges += [((f"u{k}", i), "v2") for i in range(1, n + 1) if i != 2]
    return _extend(base, ["v1", "v2"], edges)


def _g_graph(k: int, n: int) -> Graph:
    return _extend(_h_graph(k, n), ["w1", "w2"], [("v1", "w1"), ("w1", "w2"), ("w2", "v2")])


def _wring_graph(k: int, n: int) -> Graph:
    return _extend(_w_graph(k, n), ["w1", "w", "w2"],
                   [("w1", "w"), ("w", "w2"), ("v1", "w1"), ("v2", "w2")])


def _hring_graph(k: int, n: int) -> Graph:
    return _extend(_h_graph(k, n), ["w1", "w2"], [("v1", "w1"), ("v2", "w2")])


def _q_graph(n: int, m: int) -> Graph:
    """``K_2 x K_n x K_m`` minus ``N((1,1,1)) | N((2,2,2))``, labels as triples."""
    big = tensor_product(tensor_product(complete_graph(2), complete_graph(n)), complete_graph(m))
    flat = tuple((a, b, c) for (a, b), c in big.labels)
    big = Graph(flat, big.nbrs)
    drop = big.nbrs[big.index((1, 1, 1))]
    if n >= 2 and m >= 2:
        drop |= big.nbrs[big.index((2, 2, 2))]
    return subgraph_by_indices(big, (i for i in range(big.order) if not drop >> i & 1))


_FAMILY_BUILDERS = {
    "W": _w_graph,
    "H": _h_graph,
    "G": _g_graph,
    "Wring": _wring_graph,
    "Hring": _hring_graph,
    "Q": _q_graph,
}


def build_family(spec: FamilySpec, allow_unproven: bool = False) -> Graph:
    """Build one of the auxiliary families W, H, G, W-ring, H-ring, Q."""
    if spec.family not in AUXILIARY:
        raise ParameterError(f"{spec.family} is not an auxiliary family")
    spec.validate(allow_unproven=allow_unproven)
    return _FAMILY_BUILDERS[spec.family](*spec.params)


def build(spec: FamilySpec | str, allow_unproven: bool = False) -> Graph:
    """Build any supported spec, including tensor products of atomic graphs."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    if spec.family == "tensor":
        g = build_atomic(spec.factors[0])
        for f in spec.factors[1:]:
            g = tensor_product(g, build_atomic(f))
        return g
    if spec.family in ATOMIC:
        return build_atomic(spec)
    return build_family(spec, allow_unproven=allow_unproven)
