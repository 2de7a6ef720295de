"""Reduced integral homology profiles and their algebra (suspension, wedge, join)."""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy import factorint

from ..errors import UnsupportedError


def prime_powers(d: int) -> list[int]:
    """Elementary divisors of ``Z/d``: ``12 -> [3, 4]``."""
    return sorted(p ** e for p, e in factorint(d).items())


@dataclass(frozen=True)
class HomologyProfile:
    """``betti[q]`` free rank and ``torsion[q]`` sorted prime powers of
    ``H~_q``; only nonzero degrees are stored."""

    betti: dict = field(default_factory=dict)
    torsion: dict = field(default_factory=dict)
    shift_applied: int = field(default=0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "betti", {int(q): int(r) for q, r in sorted(self.betti.items()) if r})
        object.__setattr__(self, "torsion",
                           {int(q): tuple(sorted(t)) for q, t in sorted(self.torsion.items()) if t})
        if any(r < 0 for r in self.betti.values()):
            raise ValueError("negative Betti number")
        if any(x < 2 for t in self.torsion.values() for x in t):
            raise ValueError("torsion coefficients must be at least 2")

    @classmethod
    def zero(cls) -> "HomologyProfile":
        return cls()

    @classmethod
    def spheres(cls, dim: int, count: int = 1) -> "HomologyProfile":
        return cls({dim: count})

    @classmethod
    def from_invariant_factors(cls, betti: dict, factors: dict) -> "HomologyProfile":
        torsion = {q: [pp for d in ds for pp in prime_powers(d)] for q, ds in factors.items()}
        return cls(betti, torsion)

    def is_zero(self) -> bool:
        return not self.betti and not self.torsion

    @property
    def has_torsion(self) -> bool:
        return bool(self.torsion)

    @property
    def support(self) -> set:
        return set(self.betti) | set(self.torsion)

    def rank(self, q: int) -> int:
        return self.betti.get(q, 0)

    def reduced_euler(self) -> int:
        return sum((-1) ** q * r for q, r in self.betti.items())

    def shifted(self, s: int) -> "HomologyProfile":
        return HomologyProfile({q + s: r for q, r in self.betti.items()},
                               {q + s: t for q, t in self.torsion.items()},
                               self.shift_applied + s)

    def to_json(self) -> dict:
        return {"betti": {str(q): r for q, r in self.betti.items()},
                "torsion": {str(q): list(t) for q, t in self.torsion.items()},
                "shift_applied": self.shift_applied}

    @classmethod
    def from_json(cls, data: dict) -> "HomologyProfile":
        return cls({int(q): r for q, r in data.get("betti", {}).items()},
                   {int(q): tuple(t) for q, t in data.get("torsion", {}).items()},
                   data.get("shift_applied", 0))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for q in sorted(self.support):
            terms = []
            if self.rank(q):
                terms.append("Z" if self.rank(q) == 1 else f"Z^{self.rank(q)}")
            terms.extend(f"Z/{t}" for t in self.torsion.get(q, ()))
            parts.append(f"H~{q}={'+'.join(terms)}")
        return " ".join(parts)


def suspend(p: HomologyProfile, s: int = 1) -> HomologyProfile:
    return p.shifted(s)


def wedge(*profiles: HomologyProfile) -> HomologyProfile:
    betti: dict = {}
    torsion: dict = {}
    for p in profiles:
        for q, r in p.betti.items():
            betti[q] = betti.get(q, 0) + r
        for q, t in p.torsion.items():
            torsion[q] = torsion.get(q, ()) + t
    return HomologyProfile(betti, torsion)


def join(a: HomologyProfile, b: HomologyProfile) -> HomologyProfile:
    """``H~_k(X*Y) = sum_{i+j=k-1} H~_i(X) (x) H~_j(Y)`` for torsion-free inputs."""
    if a.has_torsion or b.has_torsion:
        raise UnsupportedError("join of profiles with torsion needs Tor terms, which are not implemented")
    betti: dict = {}
    for i, x in a.betti.items():
        for j, y in b.betti.items():
            betti[i + j + 1] = betti.get(i + j + 1, 0) + x * y
    return HomologyProfile(betti)


def profile_algebra(op: str, *args, s: int = 1) -> HomologyProfile:
    """Dispatch ``"suspend"`` (by ``s``), ``"wedge"`` or ``"join"``."""
    if op == "suspend":
        (p,) = args
        return suspend(p, s)
    if op == "wedge":
        return wedge(*args)
    if op == "join":
        out = HomologyProfile.spheres(-1)  # the empty complex is the unit for join
        for p in args:
            out = join(out, p)
        return out
    raise ValueError(f"unknown profile operation {op!r}")
