"""Reduced homology of complexes and of graphs' independence complexes."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..complex import (
    DEFAULT_MAX_FACES,
    Complex,
    boundary_matrix,
    euler,
    f_vector,
    independence_complex,
)
from ..errors import ResourceError
from ..graphs import Graph
from ..reduce import ReducedForm, auto_reduce, star_cluster_complex
from .profile import HomologyProfile
from .snf import rank_mod_p, smith_normal_form


class ChainComplexError(AssertionError):
    """A computed chain complex failed a consistency check."""


def reduced_homology(x: Complex, max_degree: int | None = None, check: bool = False) -> HomologyProfile:
    """Integral reduced homology of ``x``.

    Degrees above ``max_degree`` are not reported (their boundary matrices
    are not even reduced). With ``check``, verifies ``d o d = 0`` and the
    Euler characteristic against the Betti numbers.
    """
    if x.is_empty():
        return HomologyProfile({-1: 1})
    top = x.dim if max_degree is None else min(x.dim, max_degree)
    sizes = f_vector(x)
    ranks = {0: 1}  # augmentation onto Z
    factors = {}
    prev = None
    for q in range(1, min(top + 1, x.dim) + 1):
        d = boundary_matrix(x, q)
        if check and prev is not None and not (prev @ d).is_zero():
            raise ChainComplexError(f"boundary composition nonzero in degree {q}")
        snf = smith_normal_form(d)
        ranks[q] = snf.rank
        factors[q - 1] = snf.torsion
        prev = d
    betti = {q: sizes[q] - ranks[q] - ranks.get(q + 1, 0) for q in range(top + 1)}
    out = HomologyProfile.from_invariant_factors(betti, factors)
    if check and top == x.dim and out.reduced_euler() != euler(x) - 1:
        raise ChainComplexError("Euler characteristic disagrees with Betti numbers")
    return out


def betti_mod_p(x: Complex, p: int) -> dict:
    """Reduced Betti numbers over GF(p); a diagnostic, never the certified answer."""
    if x.is_empty():
        return {-1: 1}
    sizes = f_vector(x)
    ranks = {0: 1}
    for q in range(1, x.dim + 1):
        ranks[q] = rank_mod_p(boundary_matrix(x, q), p)
    out = {q: sizes[q] - ranks[q] - ranks.get(q + 1, 0) for q in range(x.dim + 1)}
    return {q: b for q, b in out.items() if b}


@dataclass
class HomologyRun:
    profile: HomologyProfile
    reduced: ReducedForm | None
    f_vector: tuple = ()
    timings: dict = field(default_factory=dict)

    def summary(self, original: Graph) -> dict:
        after = self.reduced.graph.order if self.reduced else original.order
        return {"vertices_before": original.order, "vertices_after": after,
                "steps": len(self.reduced.trace) if self.reduced else 0,
                "suspension_shift": self.reduced.suspension_shift if self.reduced else 0,
                "status": self.reduced.status.value if self.reduced else "open"}


def run_graph_homology(g: Graph, reduce: bool = True, max_dim: int | None = None,
                       max_faces: int = DEFAULT_MAX_FACES, check: bool = False) -> HomologyRun:
    """Pipeline: reduce, enumerate ``I(G)``, Smith forms, shift back."""
    timings = {}
    t0 = time.perf_counter()
    red = auto_reduce(g) if reduce else None
    timings["reduce_ms"] = (time.perf_counter() - t0) * 1000
    if red is not None and red.contractible:
        return HomologyRun(HomologyProfile.zero(), red, (), timings)
    target = red.graph if red is not None else g
    shift = red.suspension_shift if red is not None else 0
    t1 = time.perf_counter()
    cap = None if max_dim is None else max(max_dim - shift + 1, 0)
    try:
        x = independence_complex(target, cap, max_faces)
    except ResourceError as exc:
        raise ResourceError(f"{exc} (reduced graph has {target.order} vertices)", exc.count, exc.limit) from None
    timings["enumerate_ms"] = (time.perf_counter() - t1) * 1000
    t2 = time.perf_counter()
    top = None if max_dim is None else max_dim - shift
    prof = reduced_homology(x, top, check=check and max_dim is None)
    timings["homology_ms"] = (time.perf_counter() - t2) * 1000
    if shift:
        prof = prof.shifted(shift)
    if max_dim is not None:
        prof = HomologyProfile({q: r for q, r in prof.betti.items() if q <= max_dim},
                               {q: t for q, t in prof.torsion.items() if q <= max_dim},
                               prof.shift_applied)
    return HomologyRun(prof, red, f_vector(x), timings)


def homology_of_graph(g: Graph, reduce: bool = True, max_dim: int | None = None,
                      max_faces: int = DEFAULT_MAX_FACES, check: bool = False) -> HomologyProfile:
    """Reduced integral homology of ``I(g)``."""
    return run_graph_homology(g, reduce, max_dim, max_faces, check).profile


def homology_via_star_cluster(g: Graph, v, max_faces: int = DEFAULT_MAX_FACES) -> HomologyProfile:
    """``H~(I(g))`` computed as the suspension of ``st(v) & SC(v)``."""
    x, shift = star_cluster_complex(g, v)
    if x.face_count > max_faces:
        raise ResourceError("face guard exceeded", x.face_count, max_faces)
    return reduced_homology(x).shifted(shift)
