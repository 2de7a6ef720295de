"""Independence complexes as explicit face lists, plus boundary matrices.

Faces are strictly increasing tuples of vertex indices, grouped by dimension
and sorted lexicographically. Enumeration is a depth-first extension over
forward candidate sets (all faces, not only maximal ones), which emits each
dimension already in sorted order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ParameterError, PreconditionError, ResourceError
from .graphs import Graph
from .graphs.core import _bits
from .sparse import SparseIntMatrix

DEFAULT_MAX_FACES = 50_000_000


@dataclass(frozen=True)
class Complex:
    faces_by_dim: tuple
    vertex_count: int
    labels: tuple = field(default=(), compare=False)

    @property
    def dim(self) -> int:
        """Top dimension; ``-1`` for the empty complex."""
        return len(self.faces_by_dim) - 1

    def faces(self, q: int) -> tuple:
        if 0 <= q < len(self.faces_by_dim):
            return self.faces_by_dim[q]
        return ()

    @property
    def face_count(self) -> int:
        return sum(len(f) for f in self.faces_by_dim)

    def is_empty(self) -> bool:
        return not self.faces_by_dim

    def to_json(self) -> dict:
        return {"dims": [[list(f) for f in faces] for faces in self.faces_by_dim]}

    @classmethod
    def from_json(cls, data: dict) -> "Complex":
        dims = tuple(tuple(tuple(f) for f in faces) for faces in data["dims"])
        return cls(dims, len(dims[0]) if dims else 0)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def complex_from_facets(facets, vertex_count: int | None = None) -> Complex:
    """Downward closure of a list of facets over integer vertices 0..n-1."""
    from itertools import combinations

    by_dim: dict[int, set] = {}
    for facet in facets:
        facet = tuple(sorted(set(facet)))
        for size in range(1, len(facet) + 1):
            by_dim.setdefault(size - 1, set()).update(combinations(facet, size))
    dims = tuple(tuple(sorted(by_dim[q])) for q in range(len(by_dim)))
    if vertex_count is None:
        vertex_count = len(dims[0]) if dims else 0
    return Complex(dims, vertex_count)


def _enumerate(nbrs, order, max_size, max_faces, witnesses=None, free=0):
    """Independent sets (as index tuples) in lexicographic order, bucketed by size.

    ``order`` lists the usable vertices ascending. With ``witnesses`` (a list
    of bitmasks ``A[x]`` of witness ids adjacent to ``x``), only sets that
    keep at least one witness of the initial ``free`` mask without
    neighbours in the set are produced.
    """
    buckets: list[list] = []
    count = 0
    allowed = 0
    for v in order:
        allowed |= 1 << v

    def rec(prefix, cand, free):
        nonlocal count
        depth = len(prefix)
        if depth >= max_size:
            return
        if len(buckets) <= depth:
            buckets.append([])
        bucket = buckets[depth]
        while cand:
            low = cand & -cand
            x = low.bit_length() - 1
            cand ^= low
            if witnesses is not None:
                nfree = free & ~witnesses[x]
                if not nfree:
                    continue
            else:
                nfree = free
            face = prefix + (x,)
            bucket.append(face)
            count += 1
            if count > max_faces:
                raise ResourceError(f"face guard exceeded: more than {max_faces} faces", count, max_faces)
            rec(face, cand & ~nbrs[x], nfree)

    rec((), allowed, free)
    while buckets and not buckets[-1]:
        buckets.pop()
    return buckets


def independence_complex(g: Graph, max_dim: int | None = None, max_faces: int = DEFAULT_MAX_FACES) -> Complex:
    """All independent sets of ``g`` with at most ``max_dim + 1`` vertices."""
    max_size = g.order if max_dim is None else max_dim + 1
    buckets = _enumerate(g.nbrs, list(range(g.order)), max_size, max_faces)
    return Complex(tuple(tuple(b) for b in buckets), g.order, g.labels)


def clique_complex(g: Graph, max_dim: int | None = None, max_faces: int = DEFAULT_MAX_FACES) -> Complex:
    from .graphs import complement

    return independence_complex(complement(g), max_dim, max_faces)


def star_cluster_faces(g: Graph, v: int, max_faces: int = DEFAULT_MAX_FACES) -> Complex:
    """``st(v) & SC(v)`` in ``I(g)``: independent ``tau`` avoiding ``N[v]`` such
    that some neighbour ``u`` of ``v`` has no neighbour in ``tau``.

    The result is re-indexed over its own vertex set; ``labels`` keeps the
    original vertex labels.
    """
    if not g.nbrs[v]:
        raise PreconditionError(f"vertex {g.labels[v]!r} is isolated")
    if not g.is_triangle_free_at(v):
        raise PreconditionError(f"vertex {g.labels[v]!r} lies in a triangle")
    nv = list(_bits(g.nbrs[v]))
    rest = [x for x in range(g.order) if x != v and not g.nbrs[v] >> x & 1]
    wit = [0] * g.order
    for t, u in enumerate(nv):
        for x in _bits(g.nbrs[u]):
            wit[x] |= 1 << t
    # A vertex appears iff it leaves some witness free on its own.
    everyone = (1 << len(nv)) - 1
    verts = [x for x in rest if wit[x] & everyone != everyone]
    pos = {x: i for i, x in enumerate(verts)}
    sub_nbrs = []
    sub_wit = []
    for x in verts:
        m = 0
        for y in _bits(g.nbrs[x]):
            if y in pos:
                m |= 1 << pos[y]
        sub_nbrs.append(m)
        sub_wit.append(wit[x])
    buckets = _enumerate(sub_nbrs, list(range(len(verts))), len(verts), max_faces, sub_wit, everyone)
    return Complex(tuple(tuple(b) for b in buckets), len(verts), tuple(g.labels[x] for x in verts))


def f_vector(x: Complex) -> tuple:
    return tuple(len(f) for f in x.faces_by_dim)


def euler(x: Complex) -> int:
    """Unreduced Euler characteristic."""
    return sum((-1) ** q * n for q, n in enumerate(f_vector(x)))


def boundary_matrix(x: Complex, q: int) -> SparseIntMatrix:
    """Simplicial boundary from ``q``-faces to ``(q-1)``-faces.

    Dropping the ``i``-th vertex of a sorted face contributes ``(-1)**i``.
    """
    if not 1 <= q <= x.dim:
        raise ParameterError(f"boundary degree {q} outside 1..{x.dim}")
    index = {f: i for i, f in enumerate(x.faces_by_dim[q - 1])}
    cols = []
    for face in x.faces_by_dim[q]:
        col = {}
        for i in range(len(face)):
            col[index[face[:i] + face[i + 1:]]] = -1 if i & 1 else 1
        cols.append(col)
    return SparseIntMatrix(len(x.faces_by_dim[q - 1]), len(cols), tuple(cols))


def is_downward_closed(x: Complex) -> bool:
    for q in range(1, len(x.faces_by_dim)):
        lower = set(x.faces_by_dim[q - 1])
        for face in x.faces_by_dim[q]:
            if any(face[:i] + face[i + 1:] not in lower for i in range(len(face))):
                return False
    return True
