"""Primary-decomposition report of a codimension-two lattice basis ideal.

Associated primes split into one family of rescaling-isomorphic toric primes
(counted by the lattice saturation index) and the monomial primes <x_i, x_j>
of opposite-open-quadrant row pairs.  Monomial primes are toral when the rows
are independent and Andean when dependent; both kinds of primary component
are the unevaluated saturation of the ideal plus an explicit monomial
staircase, which this module computes in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import NotAndean, NotMonomialPrime, NotToral
from .graphs import SliceSpec, toral_infinite_generators
from .matrix_core import BMatrix, PairAnalysis, analyze_pairs, elementary_divisors
from .monomials import MonomialIdeal


@dataclass(frozen=True)
class AssociatedPrimes:
    """Associated primes of the ideal: the toric family with its multiplicity
    and the monomial primes, one per opposite-open-quadrant row pair."""

    toric_multiplicity: int
    monomial_primes: tuple[tuple[int, int], ...]
    andean_pairs: tuple[tuple[int, int], ...]

    @property
    def toral_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(p for p in self.monomial_primes if p not in self.andean_pairs)


def associated_primes(b: BMatrix) -> AssociatedPrimes:
    """Monomial primes from the sign patterns; toric multiplicity from the
    product of the elementary divisors of B (the index of the saturation of
    the column lattice)."""
    pairs = analyze_pairs(b)
    monomial = tuple((p.i, p.j) for p in pairs if p.opposite_open_quadrants)
    andean = tuple(
        (p.i, p.j) for p in pairs if p.opposite_open_quadrants and p.dependent
    )
    mult = 1
    for d in elementary_divisors(b.rows):
        mult *= d
    return AssociatedPrimes(mult, monomial, andean)


@dataclass(frozen=True)
class ComponentDescription:
    """One primary component: a symbolic saturation plus its monomial part.

    ``kind`` is "toric" for the non-monomial family (monomial part empty) or
    "monomial" with ``sigma`` the 1-based pair {i, j} and the toral/Andean
    flag set.
    """

    kind: str
    saturation: str
    sigma: Optional[tuple[int, int]] = None
    andean: Optional[bool] = None
    multiplicity: Optional[int] = None
    monomial_part: Optional[MonomialIdeal] = None

    def to_json_dict(self) -> dict:
        gens = list(self.monomial_part.generators) if self.monomial_part else []
        out = {
            "kind": self.kind,
            "saturation": self.saturation,
            "monomial_generators": [list(g) for g in gens],
        }
        if self.kind == "toric":
            out["multiplicity"] = self.multiplicity
        else:
            out["sigma"] = list(self.sigma)
            out["class"] = "andean" if self.andean else "toral"
        return out


def _saturation_token(n: int, sigma: Optional[tuple[int, int]] = None) -> str:
    keep = [k for k in range(1, n + 1) if sigma is None or k not in sigma]
    product = "*".join(f"x{k}" for k in keep) if keep else "1"
    return f"(I(B) : ({product})^inf)"


def binomial_generator_strings(b: BMatrix) -> list[str]:
    """The two binomials x^(col+) - x^(col-) generating the ideal."""
    out = []
    for col in range(2):
        plus, minus = [], []
        for k in range(1, b.n + 1):
            e = b.row(k)[col]
            if e > 0:
                plus.append(f"x{k}" if e == 1 else f"x{k}^{e}")
            elif e < 0:
                minus.append(f"x{k}" if e == -1 else f"x{k}^{-e}")
        out.append(f"{'*'.join(plus) or '1'} - {'*'.join(minus) or '1'}")
    return out


def _pair_info(b: BMatrix, pair: tuple[int, int]) -> PairAnalysis:
    i, j = sorted(pair)
    for p in analyze_pairs(b):
        if (p.i, p.j) == (i, j):
            return p
    raise NotMonomialPrime(f"rows must be between 1 and {b.n}")


def toral_component(b: BMatrix, pair: tuple[int, int], cap: Optional[int] = None) -> ComponentDescription:
    """Primary component of a toral monomial prime <x_i, x_j>.

    The monomial part comes from the quadrant graph of the 2x2 submatrix on
    rows i, j, oriented with the positive row first; exponents are reported
    on (x_i, x_j) in ascending index order.
    """
    info = _pair_info(b, pair)
    if not info.opposite_open_quadrants:
        raise NotMonomialPrime(f"rows {info.i}, {info.j} are not in opposite open quadrants")
    if info.dependent:
        raise NotToral(f"rows {info.i}, {info.j} are dependent (Andean, not toral)")
    i, j = info.i, info.j
    ri, rj = b.row(i), b.row(j)
    if ri[0] > 0 and ri[1] > 0:
        matrix, order = (ri, rj), (i, j)
    elif rj[0] > 0 and rj[1] > 0:
        matrix, order = (rj, ri), (j, i)
    else:
        # Quadrant II / IV pair: negating the first column of B preserves the
        # ideal and its graph and moves the pair into quadrants I / III.
        flip = lambda row: (-row[0], row[1])
        fi, fj = flip(ri), flip(rj)
        if fi[0] > 0 and fi[1] > 0:
            matrix, order = (fi, fj), (i, j)
        else:
            matrix, order = (fj, fi), (j, i)
    raw = toral_infinite_generators(matrix, cap)
    if order == (i, j):
        gens = raw.generators
    else:
        gens = tuple((ey, ex) for ex, ey in raw.generators)
    ideal = MonomialIdeal((i, j), gens)
    return ComponentDescription(
        kind="monomial",
        saturation=_saturation_token(b.n, (i, j)),
        sigma=(i, j),
        andean=False,
        monomial_part=ideal,
    )


def _andean_orientation(b: BMatrix, info: PairAnalysis) -> tuple[int, int, int, int, Fraction]:
    """Canonical data (pos, neg, |b_pos1|, |b_pos2|, lam) for a dependent
    opposite pair.

    ``pos`` is the row whose absolute entries drive the staircase; for a
    quadrant II / IV pair any single column negation makes row i positive, so
    absolute values implement the reduction uniformly.  Either choice of pos
    yields the same ideal; we take row i unless row i is the all-negative one.
    """
    ri = b.row(info.i)
    if ri[0] < 0 and ri[1] < 0:
        pos, neg = info.j, info.i
    else:
        pos, neg = info.i, info.j
    rp, rn = b.row(pos), b.row(neg)
    lam = Fraction(abs(rn[0]), abs(rp[0]))
    return pos, neg, abs(rp[0]), abs(rp[1]), lam


def andean_staircase(
    p1: int, p2: int, lam: Fraction
) -> tuple[tuple[int, int], ...]:
    """Exponent staircase (k*d, lam*(p1 + p2 - (k+1)*d)) for k = 0..(p1+p2)/d - 1,
    exponents on (x_pos, x_neg)."""
    d = math.gcd(p1, p2)
    beta = p1 + p2
    gens = []
    for k in range(beta // d):
        e_neg = lam * (beta - (k + 1) * d)
        if e_neg.denominator != 1:
            raise AssertionError("staircase exponents must be integral")
        gens.append((k * d, int(e_neg)))
    return tuple(gens)


def andean_monomial_part(b: BMatrix, pair: tuple[int, int]) -> MonomialIdeal:
    """Monomial part of the primary component of an Andean prime <x_i, x_j>."""
    info = _pair_info(b, pair)
    if not (info.opposite_open_quadrants and info.dependent):
        raise NotAndean(f"rows {info.i}, {info.j} are not dependent-opposite")
    pos, neg, p1, p2, lam = _andean_orientation(b, info)
    gens = andean_staircase(p1, p2, lam)
    if pos < neg:
        ordered = gens
    else:
        ordered = tuple((en, ep) for ep, en in gens)
    return MonomialIdeal(tuple(sorted((pos, neg))), ordered)


def andean_component(b: BMatrix, pair: tuple[int, int]) -> ComponentDescription:
    ideal = andean_monomial_part(b, pair)
    return ComponentDescription(
        kind="monomial",
        saturation=_saturation_token(b.n, ideal.variables),
        sigma=ideal.variables,
        andean=True,
        monomial_part=ideal,
    )


def three_variable_component(spec: SliceSpec) -> ComponentDescription:
    """The <x, y>-primary component for the 3 x 2 matrix with rows (r, s),
    (-lam*r, -lam*s), (a, b): the z-saturation plus the staircase
    <y^(lam*(r+s-d)), x^d y^(lam*(r+s-2d)), ..., x^(r+s-d)>."""
    b = BMatrix.from_rows(spec.bhat_rows)
    return andean_component(b, (1, 2))


def decomposition_report(b: BMatrix, cap: Optional[int] = None) -> list[ComponentDescription]:
    """All primary components: the toric family first, then one component per
    monomial prime in lexicographic pair order."""
    primes = associated_primes(b)
    report = [
        ComponentDescription(
            kind="toric",
            saturation=_saturation_token(b.n),
            multiplicity=primes.toric_multiplicity,
        )
    ]
    andean = set(primes.andean_pairs)
    for pair in primes.monomial_primes:
        if pair in andean:
            report.append(andean_component(b, pair))
        else:
            report.append(toral_component(b, pair, cap))
    return report
