"""Closed-form combinatorics of lattice-point graphs in the plane.

Covers the finite-component census of 2x2 opposite-quadrant graphs, band
graphs (nonnegative quadrant truncated to u_1 <= level) with their infinite
thresholds and the left-turn chase, dilation to a coprime top row, and slice
graphs of the nonnegative octant together with their straightening onto band
graphs.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd
from typing import Callable, Optional

from .errors import CapExceeded, EmptySlice, NotALeftTurn, OrientationError, RankDeficient
from .monomials import MonomialIdeal, minimalize

Vertex2 = tuple[int, int]


# ---------------------------------------------------------------------------
# Band graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BandSpec:
    """A 2x2 all-positive rank-2 matrix [[r, s], [a, b]] in canonical
    orientation (r >= s, a <= b), with an optional band level.

    The band graph at level l lives on {(w, z) : 0 <= w <= l, z >= 0} with
    edges u ~ u + (r, a) and u ~ u + (s, b).
    """

    r: int
    s: int
    a: int
    b: int
    level: Optional[int] = None
    swapped: bool = False

    def __post_init__(self):
        if min(self.r, self.s, self.a, self.b) <= 0:
            raise ValueError("band entries must be positive")
        if self.r < self.s or self.a > self.b:
            raise ValueError("canonical orientation requires r >= s and a <= b")
        if self.r * self.b == self.s * self.a:
            raise RankDeficient("band matrix must have rank 2")
        if self.level is not None and self.level < 0:
            raise ValueError("level must be nonnegative")

    @classmethod
    def from_matrix(cls, matrix, level: Optional[int] = None) -> "BandSpec":
        """Normalize a 2x2 all-positive matrix by sorting the top row
        descending and the bottom row ascending.

        The reported quantities (minimal infinite level, infinite columns)
        depend only on the top-row entries and are invariant under these
        swaps; ``swapped`` records whether any reordering happened.
        """
        (r, s), (a, b) = matrix
        swapped = r < s or a > b
        if r < s:
            r, s = s, r
        if a > b:
            a, b = b, a
        return cls(int(r), int(s), int(a), int(b), level, swapped)

    @property
    def d(self) -> int:
        return gcd(self.r, self.s)

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.r, self.s), (self.a, self.b))

    @property
    def columns(self) -> tuple[Vertex2, Vertex2]:
        return ((self.r, self.a), (self.s, self.b))

    def with_level(self, level: int) -> "BandSpec":
        return replace(self, level=level)


def band_min_infinite_level(spec: BandSpec) -> int:
    """Smallest band level whose graph has an infinite component: r + s - d."""
    return spec.r + spec.s - spec.d


def band_infinite_columns(spec: BandSpec) -> frozenset[int]:
    """Columns w in {0..level} containing an infinite vertex.

    Empty below level r+s-d.  At level r+s-d+t with 0 <= t < d, the dilation
    maps identify the residue-t0 columns with a coprime band graph at level
    floor((l - t0)/d), which is at or above its own infinite threshold exactly
    when t0 <= t; so the infinite columns are those with (w mod d) <= t.  From
    level r+s-1 on, every column is infinite.
    """
    if spec.level is None:
        raise ValueError("band level must be set")
    lvl = spec.level
    t = lvl - band_min_infinite_level(spec)
    if t < 0:
        return frozenset()
    if t >= spec.d - 1:
        return frozenset(range(lvl + 1))
    return frozenset(w for w in range(lvl + 1) if w % spec.d <= t)


# ---------------------------------------------------------------------------
# Turns and the left-turn chase (coprime top row)
# ---------------------------------------------------------------------------


class TurnKind(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class ChaseResult(enum.Enum):
    FINITE = "finite"
    INFINITE = "infinite"


def _edge_directions(spec: BandSpec, vertex: Vertex2) -> tuple[set[str], bool]:
    """Which edge kinds ('r'/'s') touch the vertex, and whether some neighbor
    has a strictly smaller first coordinate."""
    if spec.level is None:
        raise ValueError("band level must be set")
    w, z = vertex
    kinds: set[str] = set()
    smaller = False
    for name, (dw, dz) in zip("rs", spec.columns):
        if w + dw <= spec.level:
            kinds.add(name)
        if w - dw >= 0 and z - dz >= 0:
            kinds.add(name)
            smaller = True
    return kinds, smaller


def classify_turn(spec: BandSpec, vertex: Vertex2) -> Optional[TurnKind]:
    """LEFT/RIGHT when the vertex touches both edge kinds, else None."""
    if spec.level is None or not (0 <= vertex[0] <= spec.level) or vertex[1] < 0:
        raise ValueError("vertex must lie in the band")
    kinds, smaller = _edge_directions(spec, vertex)
    if kinds != {"r", "s"}:
        return None
    return TurnKind.LEFT if smaller else TurnKind.RIGHT


def left_turn_chase(spec: BandSpec, start: Vertex2) -> ChaseResult:
    """Decide whether the component of a left turn is infinite.

    Requires gcd(r, s) = 1 and level = r + t with 0 <= t < s.  Successive
    left turns exist while the remainders (k*r + t - w0) mod s stay at most
    t; since the remainders cycle with period s, the chase needs at most s
    steps.  An uninterrupted cycle yields infinitely many left turns, hence
    an infinite component.
    """
    if spec.level is None:
        raise ValueError("band level must be set")
    if spec.d != 1:
        raise ValueError("the chase requires a coprime top row")
    t = spec.level - spec.r
    if not 0 <= t < spec.s:
        raise ValueError("the chase requires r <= level < r + s")
    if classify_turn(spec, start) is not TurnKind.LEFT:
        raise NotALeftTurn(f"{start} is not a left turn at level {spec.level}")
    w0 = start[0]
    seen: set[int] = set()
    rem = (spec.r + t - w0) % spec.s
    while True:
        if rem > t:
            return ChaseResult.FINITE
        if rem in seen:
            return ChaseResult.INFINITE
        seen.add(rem)
        rem = (rem + spec.r) % spec.s


# ---------------------------------------------------------------------------
# Dilation: reduce the top row by its gcd
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DilationReduction:
    """Residue decomposition of a band graph along w mod d.

    The vertices with w = d*w' + t0 form an induced subgraph isomorphic, via
    (w', z) -> (d*w' + t0, z), to the band graph of the reduced matrix at
    level floor((l - t0)/d).
    """

    original: BandSpec
    reduced: BandSpec
    residue_levels: tuple[int, ...]

    def reduced_at(self, t0: int) -> BandSpec:
        return self.reduced.with_level(self.residue_levels[t0])

    def embed(self, t0: int, vertex: Vertex2) -> Vertex2:
        d = self.original.d
        return (d * vertex[0] + t0, vertex[1])


def dilate_reduce(spec: BandSpec) -> DilationReduction:
    """Split a band graph into residue classes with a coprime-top-row model."""
    if spec.level is None:
        raise ValueError("band level must be set")
    d = spec.d
    reduced = BandSpec(spec.r // d, spec.s // d, spec.a, spec.b)
    levels = tuple((spec.level - t0) // d for t0 in range(d))
    return DilationReduction(spec, reduced, levels)


# ---------------------------------------------------------------------------
# 2x2 opposite-quadrant graphs on the full quadrant
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Census2x2:
    """Finite-component census: each finite component of the graph holds
    exactly one vertex of the rectangle."""

    count: int
    rectangle: tuple[Vertex2, ...]


def _check_orientation(matrix) -> tuple[int, int, int, int]:
    (m11, m12), (m21, m22) = matrix
    if not (m11 > 0 and m12 > 0 and m21 < 0 and m22 < 0):
        raise OrientationError(
            "row one must lie in the open positive quadrant and row two in the "
            "open negative quadrant"
        )
    if m11 * m22 == m12 * m21:
        raise RankDeficient("matrix must have rank 2")
    return m11, m12, m21, m22


def finite_census_2x2(matrix) -> Census2x2:
    """Count the finite components of the quadrant graph of a 2x2 matrix with
    opposite-quadrant rows: min(|m11*m22|, |m12*m21|), realized by an explicit
    rectangle of representatives."""
    m11, m12, m21, m22 = _check_orientation(matrix)
    if abs(m11 * m22) > abs(m12 * m21):
        xmax, ymax = m12, -m21
    else:
        xmax, ymax = m11, -m22
    rect = tuple((x, y) for x in range(xmax) for y in range(ymax))
    return Census2x2(len(rect), rect)


def default_bfs_cap(matrix) -> int:
    (m11, m12), (m21, m22) = matrix
    return 16 * (abs(m11) + abs(m12)) * (abs(m21) + abs(m22))


def toral_infinite_generators(matrix, cap: Optional[int] = None) -> MonomialIdeal:
    """Minimal generators of the (up-closed) infinite-vertex set of the
    quadrant graph of a 2x2 opposite-quadrant matrix.

    The finite vertex set is the union of the components of the rectangle
    representatives; each is explored by breadth-first search under a safety
    cap (the theory guarantees termination, the cap converts a bug into a
    loud error).  The generators are the minimal elements of the complement.
    """
    census = finite_census_2x2(matrix)
    cap = default_bfs_cap(matrix) if cap is None else cap
    cols = [(matrix[0][0], matrix[1][0]), (matrix[0][1], matrix[1][1])]
    finite: set[Vertex2] = set()
    for seed in census.rectangle:
        if seed in finite:
            continue
        comp = {seed}
        queue = deque([seed])
        while queue:
            x, y = queue.popleft()
            for dx, dy in cols:
                for nx, ny in ((x + dx, y + dy), (x - dx, y - dy)):
                    if nx >= 0 and ny >= 0 and (nx, ny) not in comp:
                        comp.add((nx, ny))
                        queue.append((nx, ny))
            if len(comp) > cap:
                raise CapExceeded(
                    f"component of {seed} exceeded the exploration cap {cap}"
                )
        finite |= comp
    candidates = []
    max_x = max(x for x, _ in finite)
    best = None
    for x in range(max_x + 2):
        y = 0
        while (x, y) in finite:
            y += 1
        if best is None or y < best:
            candidates.append((x, y))
            best = y
        if y == 0:
            break
    return MonomialIdeal((1, 2), minimalize(candidates))


# ---------------------------------------------------------------------------
# Slice graphs of the nonnegative octant
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SliceSpec:
    """The 3x2 matrix with rows (r, s), (-lam*r, -lam*s), (a, b) plus an
    optional slice index.

    Writing lam = p/q in lowest terms, integrality of the middle row forces
    q | gcd(r, s).  The slice at index l in (1/p)N is the set of lattice
    points of the nonnegative octant on the plane u_y = -lam*u_x + lam*l,
    with the induced graph structure.
    """

    r: int
    s: int
    lam: Fraction
    a: int
    b: int
    index: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if min(self.r, self.s, self.a, self.b) <= 0 or self.lam <= 0:
            raise ValueError("slice data must be positive")
        if self.r < self.s or self.a > self.b:
            raise ValueError("canonical orientation requires r >= s and a <= b")
        if self.r % self.q or self.s % self.q:
            raise ValueError("the reduced denominator of lam must divide r and s")
        if self.r * self.b == self.s * self.a:
            raise RankDeficient("rows (r, s) and (a, b) must be independent")
        if self.index is not None:
            idx = Fraction(self.index)
            object.__setattr__(self, "index", idx)
            if idx < 0 or (idx * self.p).denominator != 1:
                raise ValueError("slice index must lie in (1/p)N")

    @property
    def p(self) -> int:
        return self.lam.numerator

    @property
    def q(self) -> int:
        return self.lam.denominator

    @property
    def d(self) -> int:
        return gcd(self.r, self.s)

    @property
    def bhat_rows(self) -> tuple[tuple[int, int], ...]:
        lr, ls = self.lam * self.r, self.lam * self.s
        return (
            (self.r, self.s),
            (-int(lr), -int(ls)),
            (self.a, self.b),
        )

    def with_index(self, index) -> "SliceSpec":
        return replace(self, index=Fraction(index))

    def slice_points(self, max_x: int, max_z: int) -> list[tuple[int, int, int]]:
        """Lattice points of the slice with u_x <= max_x, u_z <= max_z."""
        if self.index is None:
            raise ValueError("slice index must be set")
        out = []
        for ux in range(max_x + 1):
            uy = self.lam * (self.index - ux)
            if uy < 0:
                break
            if uy.denominator == 1:
                out.extend((ux, int(uy), uz) for uz in range(max_z + 1))
        return out


def slice_translation_reduce(spec: SliceSpec) -> tuple[SliceSpec, tuple[int, int]]:
    """Translate a slice onto an equivalent one whose index is a multiple of q.

    Returns the reduced spec and the offset (i, j) with 0 <= i < q,
    0 <= j < p: the map (u_x, u_y, u_z) -> (u_x - i, u_y - j, u_z) is a graph
    isomorphism onto the reduced slice.
    """
    if spec.index is None:
        raise ValueError("slice index must be set")
    p, q = spec.p, spec.q
    big_l = int(spec.index * p)
    # Slice points have p*u_x = big_l (mod q); all of them share u_x mod q.
    i = (big_l * pow(p, -1, q)) % q if q > 1 else 0
    rem = big_l - p * i
    if rem < 0:
        raise EmptySlice(f"slice {spec.index} contains no lattice point")
    uy0 = rem // q if rem % q == 0 else None
    if uy0 is None:
        raise EmptySlice(f"slice {spec.index} contains no lattice point")
    j = uy0 % p
    reduced_index = spec.index - i - Fraction(j, 1) / spec.lam
    if reduced_index < 0 or reduced_index.denominator != 1 or int(reduced_index) % q:
        raise EmptySlice(f"slice {spec.index} contains no lattice point")
    return spec.with_index(reduced_index), (i, j)


@dataclass(frozen=True)
class SliceEmbedding:
    """The straightening map from a band graph onto a slice graph:
    (w, k) -> (q*w, p*(level - w), k)."""

    p: int
    q: int
    level: int

    def phi(self, w: int, k: int) -> tuple[int, int, int]:
        return (self.q * w, self.p * (self.level - w), k)


def slice_to_band(spec: SliceSpec) -> tuple[BandSpec, SliceEmbedding]:
    """Straighten a slice with index in qN onto the band graph of
    [[r/q, s/q], [a, b]] at level index/q."""
    if spec.index is None:
        raise ValueError("slice index must be set")
    if spec.index.denominator != 1 or int(spec.index) % spec.q:
        raise ValueError("slice index must be divisible by q")
    level = int(spec.index) // spec.q
    band = BandSpec(spec.r // spec.q, spec.s // spec.q, spec.a, spec.b, level)
    return band, SliceEmbedding(spec.p, spec.q, level)
