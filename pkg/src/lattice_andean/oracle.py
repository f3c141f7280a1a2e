"""Brute-force ground truth for lattice-point graphs.

Components of a graph G_Q(M) (vertices a box window inside the monoid Q,
edges u ~ u + column of M) are labeled by union-find and decorated with
soundness certificates:

* ``closed_finite`` -- no edge of the ambient graph leaves the window, so the
  explored vertex set IS the whole component.
* ``infinite_by_difference`` -- the component contains distinct u, v whose
  difference can be added to every vertex without leaving the monoid;
  translating the connecting path certifies an infinite component.
* ``undetermined`` -- neither applies (the component touches a growth face).

Derived quantities (infinite band columns, staircase generators of the
infinite-vertex set) are only emitted once windows stabilize: growing the
window must not change the answer, and every vertex of the report region must
carry a certificate.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import NoStabilization, WindowTooLarge
from .monomials import MonomialIdeal, minimalize

DEFAULT_BUDGET = 2_000_000
BUDGET_ENV_VAR = "LATTICE_ANDEAN_BUDGET"

CLOSED_FINITE = "closed_finite"
INFINITE = "infinite_by_difference"
UNDETERMINED = "undetermined"


def vertex_budget(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class Window:
    """A box of lattice points inside a monoid Q.

    Per coordinate: ``kinds`` is "nat" (lower bound 0 structural) or "int";
    ``level`` is an optional structural upper bound (part of Q itself, like
    the band constraint u_1 <= l); ``lo``/``hi`` are the inclusive exploration
    bounds.  Bounds that coincide with structural ones are not growth faces.
    """

    kinds: tuple[str, ...]
    lo: tuple[int, ...]
    hi: tuple[int, ...]
    level: tuple[Optional[int], ...] = ()

    def __post_init__(self):
        n = len(self.kinds)
        if not self.level:
            object.__setattr__(self, "level", (None,) * n)
        if not (len(self.lo) == len(self.hi) == len(self.level) == n):
            raise ValueError("kinds, lo, hi, level must have equal length")
        for k in range(n):
            if self.kinds[k] not in ("nat", "int"):
                raise ValueError(f"bad coordinate kind {self.kinds[k]!r}")
            if self.kinds[k] == "nat" and self.lo[k] != 0:
                raise ValueError("nat coordinates have lower bound 0")
            if self.level[k] is not None and self.hi[k] > self.level[k]:
                raise ValueError("window must not exceed the structural level")

    @classmethod
    def naturals(cls, hi: Sequence[int], level: Sequence[Optional[int]] = ()) -> "Window":
        n = len(hi)
        return cls(("nat",) * n, (0,) * n, tuple(hi), tuple(level) if level else (None,) * n)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(h - l + 1 for l, h in zip(self.lo, self.hi))

    @property
    def size(self) -> int:
        out = 1
        for d in self.dims:
            out *= max(0, d)
        return out

    def contains(self, point: Sequence[int]) -> bool:
        return all(l <= x <= h for l, x, h in zip(self.lo, point, self.hi))


@dataclass(frozen=True)
class ComponentReport:
    """One connected component of the windowed graph with its certificate."""

    vertices: tuple[tuple[int, ...], ...]
    certificate: str
    witness: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None

    def __post_init__(self):
        if self.certificate not in (CLOSED_FINITE, INFINITE, UNDETERMINED):
            raise ValueError(f"unknown certificate {self.certificate!r}")
        if (self.certificate == INFINITE) != (self.witness is not None):
            raise ValueError("infinite certificates carry exactly one witness pair")


def _columns(mat: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    m = len(mat[0])
    return [tuple(int(row[j]) for row in mat) for j in range(m)]


def cols_to_matrix(cols: Sequence[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    """Column vectors -> the matrix whose columns they are."""
    return tuple(zip(*cols))


def _subbox_flat(lo, hi, box_lo, box_hi, strides):
    """Flat indices of the box [box_lo, box_hi] clipped to the window grid."""
    parts = []
    for k in range(len(lo)):
        a = max(lo[k], box_lo[k])
        b = min(hi[k], box_hi[k])
        if a > b:
            return np.empty(0, dtype=np.int64)
        parts.append((np.arange(a, b + 1, dtype=np.int64) - lo[k]) * strides[k])
    return reduce(np.add.outer, parts).ravel()


class _Grid:
    """Shared state for one windowed component computation."""

    def __init__(self, mat: Sequence[Sequence[int]], window: Window, budget: Optional[int]):
        if window.size > vertex_budget(budget):
            raise WindowTooLarge(
                f"window has {window.size} vertices, budget {vertex_budget(budget)}"
            )
        self.window = window
        self.cols = _columns(mat)
        ndim = len(window.kinds)
        if any(len(c) != ndim for c in self.cols):
            raise ValueError("column length must match window dimension")
        dims = window.dims
        strides = [0] * ndim
        acc = 1
        for k in reversed(range(ndim)):
            strides[k] = acc
            acc *= dims[k]
        self.strides = tuple(strides)
        self.size = acc
        self._label()

    def _monoid_lo(self, k: int) -> Optional[int]:
        return 0 if self.window.kinds[k] == "nat" else None

    def _monoid_hi(self, k: int) -> Optional[int]:
        return self.window.level[k]

    def _label(self):
        w = self.window
        ndim = len(w.kinds)
        froms, tos = [], []
        for mu in self.cols:
            box_lo = [max(w.lo[k], w.lo[k] - mu[k]) for k in range(ndim)]
            box_hi = [min(w.hi[k], w.hi[k] - mu[k]) for k in range(ndim)]
            src = _subbox_flat(w.lo, w.hi, box_lo, box_hi, self.strides)
            if src.size:
                offset = sum(mu[k] * self.strides[k] for k in range(ndim))
                froms.append(src)
                tos.append(src + offset)
        if froms:
            i = np.concatenate(froms)
            j = np.concatenate(tos)
            graph = coo_matrix(
                (np.ones(len(i), dtype=np.int8), (i, j)), shape=(self.size, self.size)
            )
            self.n_components, self.labels = connected_components(graph, directed=False)
        else:
            self.n_components = self.size
            self.labels = np.arange(self.size, dtype=np.int64)

    def coordinate(self, k: int) -> np.ndarray:
        """Flat array of the k-th coordinate of every window vertex."""
        w = self.window
        dims = w.dims
        arr = np.arange(w.lo[k], w.hi[k] + 1, dtype=np.int64)
        shape = [1] * len(dims)
        shape[k] = dims[k]
        return np.broadcast_to(arr.reshape(shape), dims).ravel()

    def open_labels(self) -> np.ndarray:
        """Labels of components with an edge that escapes the window while
        staying inside the monoid."""
        w = self.window
        ndim = len(w.kinds)
        escape = np.zeros(self.size, dtype=bool)
        for mu in self.cols:
            for sign in (1, -1):
                step = [sign * c for c in mu]
                feas_lo, feas_hi = list(w.lo), list(w.hi)
                for k in range(ndim):
                    mlo, mhi = self._monoid_lo(k), self._monoid_hi(k)
                    if mlo is not None:
                        feas_lo[k] = max(feas_lo[k], mlo - step[k])
                    if mhi is not None:
                        feas_hi[k] = min(feas_hi[k], mhi - step[k])
                if any(a > b for a, b in zip(feas_lo, feas_hi)):
                    continue
                mask = np.zeros(self.size, dtype=bool)
                mask[_subbox_flat(w.lo, w.hi, feas_lo, feas_hi, self.strides)] = True
                stay_lo = [max(feas_lo[k], w.lo[k] - step[k]) for k in range(ndim)]
                stay_hi = [min(feas_hi[k], w.hi[k] - step[k]) for k in range(ndim)]
                mask[_subbox_flat(w.lo, w.hi, stay_lo, stay_hi, self.strides)] = False
                escape |= mask
        return np.unique(self.labels[escape])

    def infinite_labels(self) -> tuple[np.ndarray, dict[int, tuple[int, int]]]:
        """Labels certified infinite by a monoid-difference pair, plus one
        witness (flat index pair (u, v), u - v in the difference monoid)."""
        w = self.window
        ndim = len(w.kinds)
        fixed = [k for k in range(ndim) if w.level[k] is not None]
        grow = [k for k in range(ndim) if w.level[k] is None and w.kinds[k] == "nat"]
        if len(grow) > 2:
            return self._infinite_labels_generic(fixed, grow)
        coords = {k: self.coordinate(k) for k in fixed + grow}
        keys = [coords[k] for k in grow[::-1]] + [coords[k] for k in fixed[::-1]]
        keys.append(self.labels)
        order = np.lexsort(tuple(keys))
        lab = self.labels[order]
        same = lab[1:] == lab[:-1]
        for k in fixed:
            c = coords[k][order]
            same &= c[1:] == c[:-1]
        if len(grow) == 2:
            c2 = coords[grow[1]][order]
            same &= c2[1:] >= c2[:-1]
        hits = np.nonzero(same)[0]
        witnesses: dict[int, tuple[int, int]] = {}
        for h in hits:
            label = int(lab[h])
            if label not in witnesses:
                witnesses[label] = (int(order[h + 1]), int(order[h]))
        return np.array(sorted(witnesses), dtype=np.int64), witnesses

    def _infinite_labels_generic(self, fixed, grow):
        # O(k^2) per component; only used for 3-dimensional validation windows.
        ndim = len(self.window.kinds)
        coords = [self.coordinate(k) for k in range(ndim)]
        by_label: dict[int, list[int]] = {}
        for flat, label in enumerate(self.labels):
            by_label.setdefault(int(label), []).append(flat)
        witnesses: dict[int, tuple[int, int]] = {}
        for label, flats in by_label.items():
            pts = [(tuple(int(coords[k][f]) for k in range(ndim)), f) for f in flats]
            for (u, fu) in pts:
                for (v, fv) in pts:
                    if fu == fv:
                        continue
                    if any(u[k] != v[k] for k in fixed):
                        continue
                    if all(u[k] >= v[k] for k in grow):
                        witnesses[label] = (fu, fv)
                        break
                if label in witnesses:
                    break
        return np.array(sorted(witnesses), dtype=np.int64), witnesses

    def unflatten(self, flat: int) -> tuple[int, ...]:
        out = []
        for k in range(len(self.strides)):
            q, flat = divmod(flat, self.strides[k])
            out.append(self.window.lo[k] + q)
        return tuple(out)


def window_components(
    mat: Sequence[Sequence[int]],
    window: Window,
    budget: Optional[int] = None,
) -> list[ComponentReport]:
    """Union-find census of the windowed graph with per-component certificates."""
    if len(mat[0]) not in (1, 2):
        raise ValueError("only matrices with 1 or 2 columns are supported")
    if window.size <= 0:
        return []
    grid = _Grid(mat, window, budget)
    inf_labels, witnesses = grid.infinite_labels()
    open_set = set(int(x) for x in grid.open_labels())
    inf_set = set(int(x) for x in inf_labels)
    contradiction = inf_set - open_set
    if contradiction:
        label = next(iter(contradiction))
        fu, fv = witnesses[label]
        raise RuntimeError(
            "certificate contradiction: closed component with infinite witness "
            f"{grid.unflatten(fu)} - {grid.unflatten(fv)}"
        )
    members: dict[int, list[int]] = {}
    for flat, label in enumerate(grid.labels):
        members.setdefault(int(label), []).append(flat)
    reports = []
    for label in sorted(members):
        verts = tuple(sorted(grid.unflatten(f) for f in members[label]))
        if label in inf_set:
            fu, fv = witnesses[label]
            reports.append(
                ComponentReport(verts, INFINITE, (grid.unflatten(fu), grid.unflatten(fv)))
            )
        elif label in open_set:
            reports.append(ComponentReport(verts, UNDETERMINED))
        else:
            reports.append(ComponentReport(verts, CLOSED_FINITE))
    return reports


def certified_infinite_vertices(
    mat: Sequence[Sequence[int]],
    window: Window,
    margin: int = 0,
    budget: Optional[int] = None,
) -> set[tuple[int, ...]]:
    """Vertices whose windowed component carries an infinite certificate.

    Infinite certificates are sound at any distance from the growth faces, so
    ``margin`` does not filter them; it exists because finite claims derived
    from the same window do need clearance (and callers share the argument).
    The result grows monotonically as the window grows.
    """
    if window.size <= 0:
        return set()
    if margin >= max(window.dims):
        raise ValueError("margin must be smaller than the window size")
    grid = _Grid(mat, window, budget)
    inf_labels, _ = grid.infinite_labels()
    mask = np.isin(grid.labels, inf_labels)
    return {grid.unflatten(int(f)) for f in np.nonzero(mask)[0]}


# ---------------------------------------------------------------------------
# Band graphs: certified infinite columns at a fixed level.
# ---------------------------------------------------------------------------


def _band_classify(cols, level, zmax, budget):
    """One-window classification of a band graph (w <= level, z explored to zmax).

    Returns (infinite_columns, fully_classified): the flag means every column
    is either certified infinite or all of its vertices with z below the
    report line lie in closed finite components.
    """
    window = Window.naturals((level, zmax), (level, None))
    grid = _Grid(cols_to_matrix(cols), window, budget)
    inf_labels, _ = grid.infinite_labels()
    open_labels = grid.open_labels()
    wcoord = grid.coordinate(0)
    zcoord = grid.coordinate(1)
    inf_mask = np.isin(grid.labels, inf_labels)
    inf_cols = frozenset(int(x) for x in np.unique(wcoord[inf_mask]))
    bad = np.isin(grid.labels, open_labels) & ~inf_mask
    zreport = (3 * zmax) // 4
    unresolved = {int(x) for x in np.unique(wcoord[bad & (zcoord <= zreport)])}
    return inf_cols, unresolved <= inf_cols


def oracle_band_infinite_columns(
    band_matrix: Sequence[Sequence[int]],
    level: int,
    budget: Optional[int] = None,
) -> frozenset[int]:
    """Certified infinite columns of the band graph of ``band_matrix`` at
    ``level``, via stabilized window growth."""
    cols = _columns(band_matrix)
    if any(c[0] <= 0 or c[1] <= 0 for c in cols):
        raise ValueError("band matrices must have positive entries")
    total = sum(abs(x) for c in cols for x in c)
    zheight = sum(c[1] for c in cols)
    zmax = 4 * total + zheight * (level + 2)
    cap = vertex_budget(budget)
    prev = None
    while (level + 1) * (zmax + 1) <= cap:
        inf_cols, complete = _band_classify(cols, level, zmax, budget)
        if complete and prev == inf_cols:
            return inf_cols
        prev = inf_cols
        zmax *= 2
    raise NoStabilization(
        f"band window at level {level} did not stabilize within budget {cap}"
    )


# ---------------------------------------------------------------------------
# 2x2 opposite-quadrant graphs: certified census and staircase generators.
# ---------------------------------------------------------------------------


def _toral_classify(cols, wmax, budget):
    window = Window.naturals((wmax, wmax))
    grid = _Grid(cols_to_matrix(cols), window, budget)
    inf_labels, _ = grid.infinite_labels()
    open_labels = grid.open_labels()
    return grid, set(map(int, inf_labels)), set(map(int, open_labels))


def oracle_toral_census(
    mat: Sequence[Sequence[int]],
    budget: Optional[int] = None,
) -> int:
    """Number of finite components of G(M) on the full nonnegative quadrant,
    certified by stabilized window growth."""
    cols = _columns(mat)
    wmax = 4 * sum(abs(x) for c in cols for x in c)
    cap = vertex_budget(budget)
    prev = None
    while (wmax + 1) ** 2 <= cap:
        grid, inf_set, open_set = _toral_classify(cols, wmax, budget)
        x = grid.coordinate(0)
        y = grid.coordinate(1)
        report = (3 * wmax) // 4
        in_report = (x <= report) & (y <= report)
        undet = sorted(open_set - inf_set)
        complete = not bool(np.any(np.isin(grid.labels[in_report], undet)))
        closed_mask = ~np.isin(grid.labels, sorted(open_set | inf_set))
        count = len(set(map(int, np.unique(grid.labels[closed_mask]))))
        if complete and prev == count:
            return count
        prev = count
        wmax *= 2
    raise NoStabilization(f"census window did not stabilize within budget {cap}")


def oracle_toral_generators(
    mat: Sequence[Sequence[int]],
    budget: Optional[int] = None,
) -> MonomialIdeal:
    """Minimal generators of the infinite-vertex set of G(M), M a 2x2 matrix
    with opposite-quadrant rows, computed without the closed-form census."""
    cols = _columns(mat)
    wmax = 4 * sum(abs(x) for c in cols for x in c)
    cap = vertex_budget(budget)
    prev = None
    while (wmax + 1) ** 2 <= cap:
        grid, inf_set, open_set = _toral_classify(cols, wmax, budget)
        x = grid.coordinate(0)
        y = grid.coordinate(1)
        report = (3 * wmax) // 4
        in_report = (x <= report) & (y <= report)
        undet = sorted(open_set - inf_set)
        complete = not bool(np.any(np.isin(grid.labels[in_report], undet)))
        not_finite = np.isin(grid.labels, sorted(open_set | inf_set)).reshape(
            grid.window.dims
        )
        gens = None
        if complete:
            candidates = []
            ok = False
            cur_min = None
            for xi in range(report + 1):
                col = not_finite[xi]
                if not col.any():
                    break
                yv = int(col.argmax())
                if yv > report:
                    break
                if cur_min is None or yv < cur_min:
                    candidates.append((xi, yv))
                    cur_min = yv
                if yv == 0:
                    ok = True
                    break
            if ok:
                gens = minimalize(candidates)
        if gens is not None and prev == gens:
            return MonomialIdeal((1, 2), gens)
        prev = gens
        wmax *= 2
    raise NoStabilization(f"generator window did not stabilize within budget {cap}")


# ---------------------------------------------------------------------------
# Three-variable staircases via straightened slice graphs.
# ---------------------------------------------------------------------------


def oracle_andean_monomials(
    r: int,
    s: int,
    lam,
    a: int,
    b: int,
    budget: Optional[int] = None,
) -> MonomialIdeal:
    """Minimal (x, y)-exponents admitting an infinite z-vertex in the graph of
    the 3 x 2 matrix with rows (r, s), (-lam*r, -lam*s), (a, b).

    Every point of the nonnegative (x, y)-quadrant sits on a unique slice of
    the octant, and slices straighten onto band graphs of [[r/q, s/q], [a, b]]
    (q the reduced denominator of lam); a point is an infinite vertex exactly
    when its straightened band column is certified infinite at the
    straightened level.  The per-level certification stays brute force.
    """
    lam = Fraction(lam)
    p, q = lam.numerator, lam.denominator
    if lam <= 0:
        raise ValueError("lam must be positive")
    if r % q or s % q:
        raise ValueError("the reduced denominator of lam must divide r and s")
    rq, sq = r // q, s // q
    if rq * b == sq * a:
        raise ValueError("band matrix must have rank 2")
    cols = [(rq, a), (sq, b)]
    level_cap = 4 * (rq + sq) + 16
    inf_at: list[frozenset[int]] = []
    full_streak = 0
    for lev in range(level_cap + 1):
        cols_inf = oracle_band_infinite_columns(cols_to_matrix(cols), lev, budget)
        inf_at.append(cols_inf)
        if cols_inf == frozenset(range(lev + 1)):
            full_streak += 1
            if full_streak >= 2:
                break
        else:
            full_streak = 0
    else:
        raise NoStabilization("level sweep did not reach an all-infinite level")
    top = len(inf_at) - 1
    candidates = []
    for w in range(top + 1):
        first = next((lev for lev in range(w, top + 1) if w in inf_at[lev]), None)
        if first is None:
            raise NoStabilization(f"column {w} never certified infinite")
        candidates.append((q * w, p * (first - w)))
    return MonomialIdeal.from_points((1, 2), candidates)
