"""Closed-form and recursive wedge-of-spheres predictions for ``I(G)``.

Every prediction names the result it comes from in ``WedgeProfile.source``.
Recursive families (``W``, ``H``, ring-``H``) are evaluated by literally
expanding their recursions down to the stated base cases, using the
profile algebra from :mod:`indcx.homology`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Mapping

from .errors import HypothesisError, ParameterError, RangeError
from .graphs import FamilySpec, parse_spec
from .homology.profile import HomologyProfile, suspend, wedge


@dataclass(frozen=True)
class WedgeProfile:
    """``sphere_counts[d]`` spheres of dimension ``d``; no spheres means contractible."""

    sphere_counts: dict = field(default_factory=dict)
    source: str = field(default="", compare=False)
    conjecture: bool = field(default=False, compare=False)
    notes: tuple = field(default=(), compare=False)
    discrepancy: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        counts = {int(d): int(c) for d, c in sorted(self.sphere_counts.items()) if c}
        if any(c < 0 for c in counts.values()):
            raise ValueError("negative sphere count")
        object.__setattr__(self, "sphere_counts", counts)

    @property
    def contractible(self) -> bool:
        return not self.sphere_counts

    @classmethod
    def point(cls, **kw) -> "WedgeProfile":
        return cls({}, **kw)

    @classmethod
    def spheres(cls, dim: int, count: int, **kw) -> "WedgeProfile":
        return cls({dim: count}, **kw)

    @classmethod
    def from_homology(cls, p: HomologyProfile, **kw) -> "WedgeProfile":
        if p.has_torsion:
            raise ValueError("a profile with torsion is not a wedge of spheres")
        return cls(dict(p.betti), **kw)

    def to_homology(self) -> HomologyProfile:
        return HomologyProfile(dict(self.sphere_counts))

    def total(self) -> int:
        return sum(self.sphere_counts.values())

    def to_json(self) -> dict:
        out = {"spheres": {str(d): c for d, c in self.sphere_counts.items()},
               "contractible": self.contractible, "source": self.source,
               "conjecture": self.conjecture}
        if self.notes:
            out["notes"] = list(self.notes)
        if self.discrepancy:
            out["discrepancy"] = self.discrepancy
        return out

    @classmethod
    def from_json(cls, data: dict) -> "WedgeProfile":
        return cls({int(d): c for d, c in data.get("spheres", {}).items()},
                   data.get("source", ""), data.get("conjecture", False),
                   tuple(data.get("notes", ())), data.get("discrepancy"))

    def __str__(self):
        if self.contractible:
            return "*"
        return " v ".join(f"{c}xS^{d}" for d, c in self.sphere_counts.items())


# -- h(r, n) -------------------------------------------------------------------

def h_recursive(r: int, n: int) -> int:
    """Sphere count of ``I(H_{3r+2,n})`` from its defining recursion."""
    if r < 0:
        raise ParameterError("h is defined for r >= 0")
    a, b = n - 2, n - 1 + (n - 2) ** 2
    if r == 0:
        return a
    for _ in range(r - 1):
        a, b = b, (n - 1) * a + (n - 2) * b
    return b


def h_value(r: int, n: int) -> int:
    """``h(r, n) = ((n-1)**(r+2) - (-1)**r) / n``, checked against the recursion."""
    if r < 0 or n < 3:
        raise ParameterError(f"h(r, n) needs r >= 0 and n >= 3, got r={r}, n={n}")
    num = (n - 1) ** (r + 2) - (-1) ** r
    q, rem = divmod(num, n)
    if rem:
        raise AssertionError(f"closed form for h({r},{n}) is not an integer")
    if q != h_recursive(r, n):
        raise AssertionError(f"closed form and recursion disagree at h({r},{n})")
    return q


def _hx(r: int, n: int) -> int:
    """``h`` extended to ``r = -1`` by the closed form (value 1)."""
    return 1 if r == -1 else h_value(r, n)


# -- vanishing window ------------------------------------------------------------

@dataclass(frozen=True)
class VanishingWindow:
    allowed_dims: frozenset

    def __contains__(self, q) -> bool:
        return q in self.allowed_dims

    def __iter__(self):
        return iter(sorted(self.allowed_dims))


def vanishing_window(k: int, n: int) -> VanishingWindow:
    """Degrees in which ``H~(I(C_k x K_n))`` may be nonzero, for ``k = 3r+1, 3r+2``, ``r >= 2``."""
    r, s = divmod(k, 3)
    if s == 0:
        raise RangeError(f"k={k} is a multiple of 3; the homotopy type is known exactly")
    if r < 2:
        raise RangeError(f"the two-degree window is stated for k >= 7, got k={k}")
    if n < 1:
        raise ParameterError("n must be positive")
    dims = {2 * r - 1, 2 * r} if s == 1 else {2 * r, 2 * r + 1}
    return VanishingWindow(frozenset(dims))


# -- recursions over profiles -------------------------------------------------------

class _Expansion:
    """One prediction's worth of recursive expansion (per-call cache)."""

    def __init__(self, n: int):
        self.n = n
        self.cache: dict = {}

    def H(self, k: int) -> HomologyProfile:
        key = ("H", k)
        if key not in self.cache:
            self.cache[key] = self._H(k)
        return self.cache[key]

    def _H(self, k: int) -> HomologyProfile:
        n = self.n
        if k < 2:
            raise RangeError(f"H recursion reached k={k} < 2")
        base = {2: (1, n - 2), 3: (2, n - 2), 4: (3, n - 2), 5: (3, (n - 1) + (n - 2) ** 2)}
        if k in base:
            d, c = base[k]
            return HomologyProfile.spheres(d, c)
        r, s = divmod(k, 3)
        if s == 0:
            return suspend(self.H(k - 1), 1)
        if s == 1:
            return suspend(self.H(k - 2), 2)
        return wedge(*([suspend(self.H(k - 6), 4)] * (n - 1) + [suspend(self.H(k - 3), 2)] * (n - 2)))

    def W(self, k: int) -> HomologyProfile:
        n = self.n
        if k == 2:
            return HomologyProfile.spheres(1, n - 1)
        if k < 2:
            raise RangeError(f"W recursion reached k={k} < 2")
        s = k % 3
        if s == 0:
            return suspend(self.W(k - 1), 1)
        if s == 1:
            return suspend(self.W(k - 2), 2)
        return wedge(*[suspend(self.H(k - 3), 2)] * (n - 1))

    def Hring(self, k: int) -> HomologyProfile:
        if k == 2:
            return HomologyProfile.spheres(2)
        if k == 3:
            return HomologyProfile.spheres(3)
        return suspend(self.H(k - 2), 2)


def _from_profile(p: HomologyProfile, **kw) -> WedgeProfile:
    return WedgeProfile.from_homology(p, **kw)


# -- dispatch ---------------------------------------------------------------------------

def _f(l, n, m):
    num = (l - 1) * (n - 1) * (m - 1) * (l * n * m - 4)
    q, rem = divmod(num, 4)
    if rem:
        raise AssertionError(f"f({l},{n},{m}) is not an integer")
    return q


def triple_count(l: int, n: int, m: int) -> int:
    """``f(l, n, m) = (l-1)(n-1)(m-1)(lnm-4) / 4``."""
    return _f(l, n, m)


def kozlov_cycle(k: int) -> WedgeProfile:
    src = "Kozlov: independence complexes of cycles"
    j, s = divmod(k, 3)
    if s == 0:
        return WedgeProfile.spheres(j - 1, 2, source=src)
    if s == 1:
        return WedgeProfile.spheres(j - 1, 1, source=src)
    return WedgeProfile.spheres(j, 1, source=src)


def cycle_times_k2(k: int) -> WedgeProfile:
    src = "C_k x K_2 table"
    j, s = divmod(k, 6)
    table = {0: (4 * j - 1, 4), 1: (4 * j, 1), 2: (4 * j + 1, 1), 3: (4 * j + 1, 2),
             4: (4 * j + 1, 1), 5: (4 * j + 2, 1)}
    d, c = table[s]
    return WedgeProfile.spheres(d, c, source=src)


def cycle_times_complete(k: int, n: int) -> WedgeProfile:
    if k < 3 or n < 1:
        raise ParameterError(f"C_{k} x K_{n} is not defined")
    if n == 1:
        return WedgeProfile.point(source="edgeless product")
    if k == 5:
        return WedgeProfile.spheres(
            2, n - 1, source="C_5 x K_n induction",
            notes=(f"the tabulated C_k x K_n value is {n} spheres for k=5; "
                   f"the inductive argument gives {n - 1}",),
            discrepancy={"dimension": 2, "candidates": {"induction": n - 1, "table": n}})
    if n == 2:
        return cycle_times_k2(k)
    if k == 3:
        return WedgeProfile.spheres(1, 2 * (n - 1), source="complete products (C_3 = K_3)")
    if k == 4:
        return WedgeProfile.spheres(1, n - 1, source="C_4 x K_n folds to K_2 x K_n")
    r, s = divmod(k, 3)
    if s:
        raise RangeError(f"no closed form for C_{k} x K_{n} (k not a multiple of 3); "
                         "only the vanishing window is known", result="C_k x K_n, k != 0 mod 3")
    src = "C_3r x K_n"
    if r == 2:
        return WedgeProfile.spheres(3, (n - 1) * (3 * n - 2), source=src)
    return WedgeProfile.spheres(2 * r - 1, n * (n - 1) * h_value(r - 3, n) + 2 * (n - 1) ** r, source=src)


def path_times_complete(k: int, n: int) -> WedgeProfile:
    if k < 1 or n < 2:
        raise RangeError(f"P_k x K_n result needs k >= 1, n >= 2; got k={k}, n={n}")
    src = "P_k x K_n"
    r, s = divmod(k, 3)
    if s == 0:
        return WedgeProfile.spheres(2 * r - 1, (n - 1) ** r, source=src)
    if s == 1:
        return WedgeProfile.point(source=src)
    return WedgeProfile.spheres(2 * r + 1, (n - 1) ** (r + 1), source=src)


def complete_product(ns: list, allow_conjecture: bool = False) -> WedgeProfile:
    ns = sorted(ns)
    if len(ns) == 2:
        a, b = ns
        return WedgeProfile.spheres(1, (a - 1) * (b - 1), source="complete products")
    if len(ns) == 3:
        l, n, m = ns
        if l <= 2:
            return WedgeProfile.spheres(3, _f(2 if l == 2 else 1, n, m), source="K_2 x K_n x K_m")
        if not allow_conjecture:
            raise RangeError(f"K_{l} x K_{n} x K_{m} is only conjectured; pass allow_conjecture",
                             result="triple product conjecture")
        return WedgeProfile.spheres(3, _f(l, n, m), source="triple product conjecture", conjecture=True)
    raise RangeError(f"no result for a product of {len(ns)} complete graphs")


def _aux(spec: FamilySpec, allow_conjecture: bool) -> WedgeProfile:
    fam = spec.family
    a, b = spec.params
    unproven = not spec.is_proven_range
    if fam == "Q":
        unproven = a < 3 or b < 3
    if unproven and not allow_conjecture:
        raise RangeError(f"{spec} is outside the proven range of its result", result=fam)
    kw = {"conjecture": unproven}
    if unproven:
        kw["notes"] = ("parameters outside the proven range",)
    if fam == "Q":
        return WedgeProfile.spheres(2, a + b - 3, source="Q_{n,m}", **kw)
    k, n = a, b
    if k < 2 or n < 2:
        raise RangeError(f"{spec}: recursion needs k >= 2 and n >= 2")
    ex = _Expansion(n)
    if fam == "W":
        return _from_profile(ex.W(k), source="W recursion", **kw)
    if fam == "H":
        return _from_profile(ex.H(k), source="H recursion", **kw)
    if fam == "Hring":
        return _from_profile(ex.Hring(k), source="ring-H recursion", **kw)
    r, s = divmod(k, 3)
    if fam == "G":
        src = "G_{k,n}"
        if k == 2:
            return WedgeProfile.spheres(2, n, source=src, **kw)
        if s == 0:
            return WedgeProfile.spheres(2 * r, _hx(r - 1, n), source=src, **kw)
        if s == 1:
            return WedgeProfile.spheres(2 * r + 1, _hx(r - 1, n), source=src, **kw)
        return WedgeProfile.spheres(2 * r + 2, _hx(r - 1, n) + (n - 1) ** (r + 1), source=src, **kw)
    if fam == "Wring":
        src = "ring-W_{k,n}"
        if s == 0:
            return WedgeProfile.spheres(2 * r + 1, (n - 1) ** r, source=src, **kw)
        if s == 1:
            return WedgeProfile.point(source=src, **kw)
        return WedgeProfile.spheres(2 * r + 2, (n - 1) ** (r + 1), source=src, **kw)
    raise RangeError(f"no prediction for family {fam}")


def predict(spec: FamilySpec | str, allow_conjecture: bool = False) -> WedgeProfile:
    """Predicted homotopy type of ``I(G)`` for a family spec.

    Raises :class:`RangeError` when no result covers the spec, or when only
    a conjecture/unproven range does and ``allow_conjecture`` is off.
    """
    if isinstance(spec, str):
        spec = parse_spec(spec)
    fam = spec.family
    if fam == "cycle":
        return kozlov_cycle(spec.params[0])
    if fam in ("W", "H", "G", "Wring", "Hring", "Q"):
        return _aux(spec, allow_conjecture)
    if fam != "tensor":
        raise RangeError(f"no prediction for a bare {fam} graph")
    names = sorted(f.family for f in spec.factors)
    if all(nm == "complete" for nm in names):
        return complete_product([f.params[0] for f in spec.factors], allow_conjecture)
    if len(spec.factors) == 2:
        by = {f.family: f.params[0] for f in spec.factors}
        if names == ["complete", "cycle"]:
            return cycle_times_complete(by["cycle"], by["complete"])
        if names == ["complete", "path"]:
            return path_times_complete(by["path"], by["complete"])
    raise RangeError(f"no prediction for {spec}")


# -- union calculus --------------------------------------------------------------------------

def union_profile(pieces: list, intersections: Mapping | Callable | None = None) -> WedgeProfile:
    """Homotopy type of a union ``K_1 u ... u K_n`` from its pieces and intersections.

    ``intersections`` maps a frozenset of piece indices (size >= 2) to the
    WedgeProfile of that intersection; absent subsets count as contractible.
    Requires the dimension ladder: pieces in dims ``>= r``; intersections of
    ``s`` pieces concentrated in one dim ``r_s`` with ``r_2 <= r - 1`` and
    ``r_{s+1} = r_s - 1``. The result wedges ``S^{|S|-1}`` of every
    ``S``-fold intersection.
    """
    n = len(pieces)
    if n == 0:
        raise HypothesisError("need at least one piece")
    if intersections is None:
        lookup = lambda S: None  # noqa: E731
    elif callable(intersections):
        lookup = intersections
    else:
        lookup = lambda S: intersections.get(S)  # noqa: E731

    piece_dims = [d for p in pieces for d in p.sphere_counts]
    r = min(piece_dims) if piece_dims else None
    levels: dict[int, int] = {}
    total: dict[int, int] = {}
    for p in pieces:
        for d, c in p.sphere_counts.items():
            total[d] = total.get(d, 0) + c
    for size in range(2, n + 1):
        for S in combinations(range(n), size):
            prof = lookup(frozenset(S))
            if prof is None or prof.contractible:
                continue
            dims = set(prof.sphere_counts)
            if len(dims) != 1:
                raise HypothesisError(f"intersection {sorted(S)} is not concentrated in one dimension")
            (d,) = dims
            if levels.setdefault(size, d) != d:
                raise HypothesisError(f"{size}-fold intersections live in dims {levels[size]} and {d}")
            for dd, c in prof.sphere_counts.items():
                total[dd + size - 1] = total.get(dd + size - 1, 0) + c
    defined = sorted(levels)
    if defined:
        s0 = defined[0]
        if r is not None and levels[s0] > r - (s0 - 1):
            raise HypothesisError(f"{s0}-fold intersections in dim {levels[s0]} are too high for pieces in dims >= {r}")
        for s, t in zip(defined, defined[1:]):
            if levels[t] != levels[s] - (t - s):
                raise HypothesisError(f"intersection dims do not descend by one: r_{s}={levels[s]}, r_{t}={levels[t]}")
    return WedgeProfile(total, source="union of wedges")
