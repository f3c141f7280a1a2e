"""Exact integer and rational linear algebra for n x 2 input matrices.

Everything here is arbitrary-precision: integer matrices are nested tuples of
Python ints, rationals are ``fractions.Fraction``.  Row and variable indices
are 1-based throughout the public API, matching the usual naming of the
polynomial ring variables x_1, ..., x_n.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import MalformedInput, RankDeficient

IntMatrix = tuple[tuple[int, ...], ...]


def _freeze(rows: Iterable[Iterable[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    """Exact product of two integer matrices."""
    if a and b and len(a[0]) != len(b):
        raise ValueError("incompatible shapes")
    inner = len(b)
    width = len(b[0]) if inner else 0
    return tuple(
        tuple(sum(row[t] * b[t][j] for t in range(inner)) for j in range(width))
        for row in a
    )


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def det(mat: Sequence[Sequence[int]]) -> Fraction:
    """Exact determinant via fraction Gaussian elimination."""
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    work = [[Fraction(x) for x in row] for row in mat]
    result = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if work[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            result = -result
        result *= work[col][col]
        inv = 1 / work[col][col]
        for i in range(col + 1, n):
            factor = work[i][col] * inv
            if factor:
                work[i] = [x - factor * y for x, y in zip(work[i], work[col])]
    return result


def rank(mat: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals."""
    work = [[Fraction(x) for x in row] for row in mat]
    m = len(work)
    k = len(work[0]) if m else 0
    r = 0
    for col in range(k):
        pivot = next((i for i in range(r, m) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = 1 / work[r][col]
        for i in range(r + 1, m):
            factor = work[i][col] * inv
            if factor:
                work[i] = [x - factor * y for x, y in zip(work[i], work[r])]
        r += 1
        if r == m:
            break
    return r


def smith_normal_form(
    mat: Sequence[Sequence[int]],
) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form of an arbitrary integer matrix.

    Returns (U, D, V) with U, V unimodular, U * mat * V = D, D diagonal with
    nonnegative entries satisfying d_1 | d_2 | ...  Total: works for any
    shape, including empty and rank-deficient matrices.
    """
    m = len(mat)
    k = len(mat[0]) if m else 0
    if any(len(row) != k for row in mat):
        raise ValueError("ragged matrix")
    d = [[int(x) for x in row] for row in mat]
    u = [list(row) for row in identity(m)]
    v = [list(row) for row in identity(k)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, c):
        d[dst] = [x + c * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, c):
        for row in d:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def combine_rows(i, j, a, b, c, e):
        # (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + e*row_j), a*e - b*c = +/-1
        d[i], d[j] = (
            [a * x + b * y for x, y in zip(d[i], d[j])],
            [c * x + e * y for x, y in zip(d[i], d[j])],
        )
        u[i], u[j] = (
            [a * x + b * y for x, y in zip(u[i], u[j])],
            [c * x + e * y for x, y in zip(u[i], u[j])],
        )

    def combine_cols(i, j, a, b, c, e):
        for row in (*d, *v):
            row[i], row[j] = a * row[i] + b * row[j], c * row[i] + e * row[j]

    def clear_column(t):
        for i in range(t + 1, m):
            if d[i][t] == 0:
                continue
            a, b = d[t][t], d[i][t]
            if a != 0 and b % a == 0:
                addmul_row(i, t, -(b // a))
            else:
                g, x, y = xgcd(a, b)
                combine_rows(t, i, x, y, -(b // g), a // g)

    def clear_row(t):
        for j in range(t + 1, k):
            if d[t][j] == 0:
                continue
            a, b = d[t][t], d[t][j]
            if a != 0 and b % a == 0:
                addmul_col(j, t, -(b // a))
            else:
                g, x, y = xgcd(a, b)
                combine_cols(t, j, x, y, -(b // g), a // g)

    t = 0
    while t < min(m, k):
        pivot = None
        for i in range(t, m):
            for j in range(t, k):
                if d[i][j] != 0 and (pivot is None or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            clear_column(t)
            clear_row(t)
            if all(d[i][t] == 0 for i in range(t + 1, m)):
                break
        t += 1

    for i in range(min(m, k)):
        if d[i][i] < 0:
            d[i] = [-x for x in d[i]]
            u[i] = [-x for x in u[i]]

    # Sort zeros to the back and enforce the divisibility chain.
    changed = True
    while changed:
        changed = False
        for i in range(min(m, k) - 1):
            a, b = d[i][i], d[i + 1][i + 1]
            if a == 0 and b != 0:
                swap_rows(i, i + 1)
                swap_cols(i, i + 1)
                changed = True
            elif a != 0 and b % a != 0:
                addmul_col(i, i + 1, 1)
                g, x, y = xgcd(a, b)
                combine_rows(i, i + 1, x, y, -(b // g), a // g)
                clear_row(i)
                changed = True

    return _freeze(u), _freeze(d), _freeze(v)


def elementary_divisors(mat: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero diagonal entries of the Smith normal form."""
    _, d, _ = smith_normal_form(mat)
    return tuple(d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i] != 0)


@dataclass(frozen=True)
class BMatrix:
    """An n x 2 integer matrix of rank 2; rows indexed 1..n."""

    rows: IntMatrix

    def __post_init__(self):
        if any(len(row) != 2 for row in self.rows):
            raise MalformedInput("every row must have exactly 2 entries")
        if rank(self.rows) != 2:
            raise RankDeficient("matrix must have rank 2")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "BMatrix":
        return cls(_freeze(rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> tuple[int, int]:
        """The i-th row, 1-based."""
        return self.rows[i - 1]

    @property
    def columns(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(r[0] for r in self.rows), tuple(r[1] for r in self.rows)

    def pair_matrix(self, i: int, j: int) -> IntMatrix:
        """The 2x2 submatrix on rows i and j (1-based)."""
        return (self.row(i), self.row(j))


def parse_matrix(text: str | bytes) -> BMatrix:
    """Parse an n x 2 integer matrix.

    Accepts one row per line with two whitespace-separated integers, or the
    JSON form {"rows": [[b11, b12], ...]}.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedInput(f"undecodable input: {exc}") from None
    stripped = text.strip()
    if not stripped:
        raise MalformedInput("empty matrix input")
    if stripped.startswith("{"):
        try:
            payload = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"bad JSON: {exc}") from None
        if not isinstance(payload, dict) or "rows" not in payload:
            raise MalformedInput('JSON matrix must be {"rows": [[b11, b12], ...]}')
        rows = payload["rows"]
        if not isinstance(rows, list) or not rows:
            raise MalformedInput("JSON rows must be a nonempty list")
        out = []
        for row in rows:
            if not isinstance(row, list) or len(row) != 2:
                raise MalformedInput("each JSON row must be a list of 2 integers")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise MalformedInput(f"non-integer entry {x!r}")
            out.append((row[0], row[1]))
        return BMatrix.from_rows(out)
    rows = []
    for lineno, line in enumerate(stripped.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise MalformedInput(f"line {lineno}: expected 2 entries, got {len(tokens)}")
        try:
            rows.append(tuple(int(tok) for tok in tokens))
        except ValueError:
            raise MalformedInput(f"line {lineno}: non-integer token in {tokens}") from None
    if not rows:
        raise MalformedInput("no rows found")
    return BMatrix.from_rows(rows)


@dataclass(frozen=True)
class AMatrix:
    """An (n-2) x n integer grading matrix with A*B = 0 and columns spanning
    the full integer lattice of rank n-2."""

    n: int
    rows: IntMatrix

    def __post_init__(self):
        if len(self.rows) != self.n - 2:
            raise ValueError(f"expected {self.n - 2} rows, got {len(self.rows)}")
        if any(len(row) != self.n for row in self.rows):
            raise ValueError("every row must have length n")

    @classmethod
    def from_rows(cls, n: int, rows: Iterable[Iterable[int]]) -> "AMatrix":
        return cls(n, _freeze(rows))

    def column(self, k: int) -> tuple[int, ...]:
        """The k-th column (1-based), i.e. the degree of x_k."""
        return tuple(row[k - 1] for row in self.rows)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix-vector product A*vec (exact; vec entries int or Fraction)."""
        if len(vec) != self.n:
            raise ValueError("vector length must be n")
        return tuple(sum(a * x for a, x in zip(row, vec)) for row in self.rows)


def is_valid_grading(a: AMatrix, b: BMatrix) -> bool:
    """Check A*B = 0 exactly and that A's Smith form has all divisors 1."""
    if a.n != b.n:
        return False
    for row in a.rows:
        for col in range(2):
            if sum(x * b.rows[k][col] for k, x in enumerate(row)) != 0:
                return False
    expected = b.n - 2
    divisors = elementary_divisors(a.rows) if a.rows else ()
    return len(divisors) == expected and all(x == 1 for x in divisors)


def cokernel(b: BMatrix) -> AMatrix:
    """A grading matrix for B: rows form a basis of the saturated left kernel.

    Any valid A is acceptable; this one comes from the row transform of the
    Smith normal form of B (rows of U beyond the rank annihilate B).
    """
    u, d, _ = smith_normal_form(b.rows)
    zero_rows = [i for i in range(b.n) if all(x == 0 for x in mat_mul((u[i],), b.rows)[0])]
    if len(zero_rows) != b.n - 2:
        raise RankDeficient("matrix must have rank 2")
    return AMatrix.from_rows(b.n, (u[i] for i in zero_rows))


_OPPOSITE_QUADRANTS = {(1, 1): (-1, -1), (-1, -1): (1, 1), (1, -1): (-1, 1), (-1, 1): (1, -1)}


def _open_quadrant(row: tuple[int, int]) -> Optional[tuple[int, int]]:
    if row[0] == 0 or row[1] == 0:
        return None
    return (1 if row[0] > 0 else -1, 1 if row[1] > 0 else -1)


@dataclass(frozen=True)
class PairAnalysis:
    """Sign and dependence analysis of one unordered row pair {i, j}, i < j.

    When the rows are linearly dependent and lie in opposite open quadrants,
    ``lam`` is the ratio -b_j1/b_i1 > 0 and ``d`` is gcd(|b_i1|, |b_i2|);
    both are None otherwise.
    """

    i: int
    j: int
    opposite_open_quadrants: bool
    dependent: bool
    lam: Optional[Fraction] = None
    d: Optional[int] = None


def analyze_pairs(b: BMatrix) -> list[PairAnalysis]:
    """Analyze every unordered row pair of B, in lexicographic order."""
    out = []
    for i, j in combinations(range(1, b.n + 1), 2):
        ri, rj = b.row(i), b.row(j)
        qi, qj = _open_quadrant(ri), _open_quadrant(rj)
        opposite = qi is not None and _OPPOSITE_QUADRANTS[qi] == qj
        dependent = ri[0] * rj[1] - ri[1] * rj[0] == 0
        lam = d = None
        if opposite and dependent:
            lam = Fraction(-rj[0], ri[0])
            d = math.gcd(abs(ri[0]), abs(ri[1]))
        out.append(PairAnalysis(i, j, opposite, dependent, lam, d))
    return out


def _feasible_rays(b: BMatrix) -> list[tuple[int, int]]:
    """Rays (alpha, beta) on constraint boundaries with B @ (alpha, beta) >= 0.

    The feasible set {(alpha, beta) : alpha*B_1 + beta*B_2 >= 0} is an
    intersection of half-planes through the origin, so if it contains a
    nonzero point it contains a boundary ray of one of the constraints.
    """
    rays = []
    for row in b.rows:
        if row == (0, 0):
            continue
        for cand in ((row[1], -row[0]), (-row[1], row[0])):
            if all(r[0] * cand[0] + r[1] * cand[1] >= 0 for r in b.rows):
                rays.append(cand)
    return rays


def has_nonneg_column_span_direction(b: BMatrix) -> bool:
    """Whether the rational column span of B contains a nonzero vector that is
    componentwise nonnegative.  Decided exactly by testing the 2n boundary
    rays +/-(b_k2, -b_k1)."""
    return bool(_feasible_rays(b))


def zero_degree_coordinates(b: BMatrix) -> frozenset[int]:
    """Indices k (1-based) with e_k in the column span of B.

    These are exactly the coordinates where every valid grading matrix has a
    zero column, so the set does not depend on the choice of A.
    """
    pairs = analyze_pairs(b)
    dep = {(p.i, p.j): p.dependent for p in pairs}
    out = set()
    for k in range(1, b.n + 1):
        others = [m for m in range(1, b.n + 1) if m != k]
        if all(dep[tuple(sorted((m1, m2)))] for m1, m2 in combinations(others, 2)):
            out.add(k)
    return frozenset(out)


def horn_hypothesis_ok(b: BMatrix) -> bool:
    """Whether the cone over the columns of any valid grading matrix is
    pointed (contains no line).

    This is the applicability hypothesis of the finite-rank and holonomicity
    criteria.  It fails exactly when the column span of B contains a nonzero
    nonnegative vector supported outside the zero-degree coordinates.
    """
    rays = _feasible_rays(b)
    if not rays:
        return True
    support = set()
    for ray in rays:
        for k, row in enumerate(b.rows, start=1):
            if row[0] * ray[0] + row[1] * ray[1] > 0:
                support.add(k)
    return support <= zero_degree_coordinates(b)
