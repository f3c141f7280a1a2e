"""Finite antichains of exponent vectors (minimal generators of monomial ideals)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


def dominates(u: Sequence[int], v: Sequence[int]) -> bool:
    """Componentwise u >= v."""
    return all(a >= b for a, b in zip(u, v))


def minimalize(points: Iterable[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Minimal elements of a finite set under componentwise <=, sorted."""
    pts = sorted({tuple(int(x) for x in p) for p in points})
    keep: list[tuple[int, ...]] = []
    for p in pts:
        if any(dominates(p, q) for q in keep):
            continue
        keep = [q for q in keep if not dominates(q, p)]
        keep.append(p)
    return tuple(sorted(keep))


@dataclass(frozen=True)
class MonomialIdeal:
    """Minimal generators of an up-closed set of exponent vectors.

    ``variables`` names the ambient variables (1-based indices into x_1..x_n);
    each generator has one exponent per variable.  Generators always form an
    antichain and are stored sorted.
    """

    variables: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        gens = tuple(sorted(tuple(int(x) for x in g) for g in self.generators))
        if any(len(g) != len(self.variables) for g in gens):
            raise ValueError("generator arity must match the variable count")
        if any(x < 0 for g in gens for x in g):
            raise ValueError("exponents must be nonnegative")
        if minimalize(gens) != gens:
            raise ValueError("generators must form an antichain")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_points(
        cls, variables: Sequence[int], points: Iterable[Sequence[int]]
    ) -> "MonomialIdeal":
        """Build from any generating set; redundant generators are dropped."""
        return cls(tuple(variables), minimalize(points))

    def contains(self, point: Sequence[int]) -> bool:
        """Membership of a monomial (exponent vector) in the ideal."""
        return any(dominates(point, g) for g in self.generators)

    def standard_exponents(self) -> tuple[tuple[int, ...], ...]:
        """All exponent vectors outside the ideal, when finitely many.

        Requires a pure power of every variable among the generators (so the
        complement of the staircase is finite).
        """
        nvars = len(self.variables)
        bounds = [None] * nvars
        for g in self.generators:
            support = [k for k, e in enumerate(g) if e > 0]
            if len(support) == 1:
                k = support[0]
                if bounds[k] is None or g[k] < bounds[k]:
                    bounds[k] = g[k]
        if nvars and any(x is None for x in bounds):
            raise ValueError("staircase complement is infinite")
        out = []
        stack = [()]
        for k in range(nvars):
            stack = [p + (e,) for p in stack for e in range(bounds[k])]
        for p in stack:
            if not self.contains(p):
                out.append(p)
        return tuple(sorted(out))

    def monomial_strings(self, names: dict[int, str] | None = None) -> list[str]:
        """Render generators like ``x1^2*x2^2`` (ascending exponent order)."""
        labels = names or {v: f"x{v}" for v in self.variables}
        out = []
        for g in self.generators:
            parts = []
            for v, e in zip(self.variables, g):
                if e == 1:
                    parts.append(labels[v])
                elif e > 1:
                    parts.append(f"{labels[v]}^{e}")
            out.append("*".join(parts) if parts else "1")
        return out
