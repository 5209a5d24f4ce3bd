"""
Facet complex, Stanley-Reisner (non-face) complex, f-vectors and the Hilbert series of S/I.

f_vector() counts faces by inclusion-exclusion over facet intersections;
f_vector_bruteforce() scans all 2^n subsets. The two are kept independent so
each checks the other.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Dict, Iterator, List, Optional, Sequence

import sympy as sp

from monomial.decomposition import BRUTEFORCE_MAX_N, minimal_transversals, nonface_facets_via_duality
from monomial.errors import InvariantError
from monomial.ideal import SquareFreeIdeal
from monomial.vertexset import (
    VertexSet,
    binomial,
    check_n,
    full_mask,
    is_antichain,
    maximal_masks,
    popcount,
    sort_key,
)

log = logging.getLogger("fideals.complexes")

DIRECT_CROSS_CHECK_MAX_N = 10


@dataclass(frozen=True)
class SimplicialComplex:
    """
    A complex given by its facets. An empty facet tuple is the complex {∅}
    whose only face is the empty set (dimension -1).
    """

    n: int
    facets: tuple[VertexSet, ...]

    def __post_init__(self) -> None:
        check_n(self.n)
        masks = [f.bits for f in self.facets]
        if any(f.n != self.n for f in self.facets):
            raise ValueError("facets must share the ambient vertex count")
        if any(m == 0 for m in masks):
            raise ValueError("the empty set is never listed as a facet; use an empty facet tuple for {∅}")
        if not is_antichain(masks):
            raise ValueError("facets must form an antichain without duplicates")
        if masks != sorted(masks, key=sort_key):
            raise ValueError("facets must be in canonical order; build complexes with from_masks()")

    @classmethod
    def from_masks(cls, n: int, masks: Sequence[int]) -> "SimplicialComplex":
        """Complex generated by arbitrary faces; only the maximal ones are kept."""
        return cls(n, tuple(VertexSet(m, n) for m in maximal_masks(m for m in masks if m)))

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(f.bits for f in self.facets)

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    @property
    def vertices(self) -> VertexSet:
        bits = 0
        for m in self.masks:
            bits |= m
        return VertexSet(bits, self.n)

    def is_full_simplex(self) -> bool:
        return self.masks == (full_mask(self.n),)

    def faces(self, k: int) -> List[VertexSet]:
        """Faces with k vertices (dimension k-1), canonical order."""
        if k == 0:
            return [VertexSet.empty(self.n)]
        seen: set[int] = set()
        for f in self.facets:
            for combo in combinations(f.members, k):
                seen.add(VertexSet.of(self.n, combo).bits)
        return [VertexSet(m, self.n) for m in sorted(seen, key=sort_key)]

    def __contains__(self, face: object) -> bool:
        return isinstance(face, VertexSet) and is_face(self, face)

    def render(self) -> str:
        if not self.facets:
            return "<{}>"
        return "<" + ", ".join(f.render() for f in self.facets) + ">"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class FVector:
    """(f_0, ..., f_dim); f_{-1} = 1 is implicit. Empty counts is the complex {∅}."""

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(c < 0 for c in self.counts):
            raise ValueError(f"f-vector entries must be non-negative: {self.counts}")

    @property
    def dim(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, i: int) -> int:
        """f_i, with f_{-1} = 1 and 0 above the dimension."""
        if i == -1:
            return 1
        return self.counts[i] if 0 <= i < len(self.counts) else 0

    def within_bounds(self, n: int) -> bool:
        return len(self.counts) <= n and all(c <= binomial(n, i + 1) for i, c in enumerate(self.counts))

    def render(self) -> str:
        return "(" + ", ".join(str(c) for c in self.counts) + ")"

    def __str__(self) -> str:
        return self.render()


def facet_complex(ideal: SquareFreeIdeal) -> SimplicialComplex:
    """δ_F(I): facets are the generator supports; vertices are supp(I)."""
    return SimplicialComplex(ideal.n, ideal.generators)


def nonface_facets_direct(ideal: SquareFreeIdeal) -> List[VertexSet]:
    """Maximal subsets of [n] containing no generator, by scanning all 2^n subsets."""
    n = ideal.n
    if n > BRUTEFORCE_MAX_N:
        raise ValueError(f"direct face search limited to n <= {BRUTEFORCE_MAX_N}, got {n}")
    gens = ideal.masks
    faces = [m for m in range(1 << n) if not any(g & ~m == 0 for g in gens)]
    face_set = set(faces)
    facets = [m for m in faces if m and not any((m | 1 << v) in face_set for v in range(n) if not m >> v & 1)]
    return [VertexSet(m, n) for m in sorted(facets, key=sort_key)]


def nonface_complex(ideal: SquareFreeIdeal, *, verify: Optional[bool] = None) -> SimplicialComplex:
    """δ_N(I): faces are the subsets F of [n] whose monomial is not in I."""
    facets = [f for f in nonface_facets_via_duality(ideal) if f]
    if verify is None:
        verify = ideal.n <= DIRECT_CROSS_CHECK_MAX_N
    if verify:
        direct = nonface_facets_direct(ideal)
        if direct != facets:
            raise InvariantError(f"Alexander dual facets {facets} differ from direct search {direct} for {ideal}")
    return SimplicialComplex(ideal.n, tuple(facets))


def is_face(complex_: SimplicialComplex, face: VertexSet) -> bool:
    if face.n != complex_.n:
        raise ValueError("face and complex live on different vertex sets")
    if not face:
        return True
    return any(face.bits & ~m == 0 for m in complex_.masks)


def _intersection_weights(facets: Sequence[int]) -> Dict[int, int]:
    """
    Signed inclusion-exclusion weights keyed by facet-subfamily intersection.

    Folding facets one at a time: every existing term meets the new facet with
    the opposite sign, and the facet itself enters with weight +1. Empty
    intersections only ever count the empty face, so they are dropped.
    """
    weights: Dict[int, int] = {}
    for f in facets:
        update: Dict[int, int] = defaultdict(int)
        update[f] += 1
        for m, w in weights.items():
            meet = m & f
            if meet:
                update[meet] -= w
        for m, w in update.items():
            total = weights.get(m, 0) + w
            if total:
                weights[m] = total
            else:
                weights.pop(m, None)
    return weights


def f_vector(complex_: SimplicialComplex) -> FVector:
    top = complex_.dim + 1
    weights = _intersection_weights(complex_.masks)
    counts = [0] * top
    for m, w in weights.items():
        size = popcount(m)
        for k in range(1, size + 1):
            counts[k - 1] += w * binomial(size, k)
    return FVector(tuple(counts))


def f_vector_bruteforce(complex_: SimplicialComplex) -> FVector:
    n = complex_.n
    if n > BRUTEFORCE_MAX_N:
        raise ValueError(f"exhaustive face scan limited to n <= {BRUTEFORCE_MAX_N}, got {n}")
    facets = complex_.masks
    counts = [0] * n
    for m in range(1, 1 << n):
        if any(m & ~f == 0 for f in facets):
            counts[popcount(m) - 1] += 1
    while counts and counts[-1] == 0:
        counts.pop()
    return FVector(tuple(counts))


def facet_ideal(complex_: SimplicialComplex) -> SquareFreeIdeal:
    if not complex_.facets:
        raise ValueError("the complex {∅} has no facets to generate an ideal")
    return SquareFreeIdeal(complex_.n, complex_.facets)


def nonface_ideal(complex_: SimplicialComplex) -> SquareFreeIdeal:
    """Stanley-Reisner ideal: generated by the minimal non-faces."""
    if complex_.is_full_simplex():
        raise ValueError("the full simplex has no non-faces; its Stanley-Reisner ideal is zero")
    full = full_mask(complex_.n)
    # F is a non-face iff it meets the complement of every facet
    complements = [full & ~m for m in complex_.masks] or [full]
    return SquareFreeIdeal.from_masks(complex_.n, minimal_transversals(complements))


_T = sp.Symbol("t")


@dataclass(frozen=True)
class HilbertSeries:
    """numerator(t) / (1 - t)^denominator_power, numerator coefficients ascending."""

    numerator: tuple[int, ...]
    denominator_power: int
    n: int

    def coefficient(self, j: int) -> int:
        """Hilbert function value: dimension of the degree-j piece of S/I."""
        if j < 0:
            return 0
        k = self.denominator_power
        if k == 0:
            return self.numerator[j] if j < len(self.numerator) else 0
        return sum(a * binomial(j - i + k - 1, k - 1) for i, a in enumerate(self.numerator) if i <= j)

    def expand(self, upto: int) -> List[int]:
        return [self.coefficient(j) for j in range(upto + 1)]

    def reduced(self) -> "HilbertSeries":
        """Cancel common factors of (1 - t); the power left is the Krull dimension of S/I."""
        num = sp.Poly(list(reversed(self.numerator)), _T, domain=sp.ZZ)
        power = self.denominator_power
        factor = sp.Poly(1 - _T, _T, domain=sp.ZZ)
        while power > 0:
            quotient, remainder = num.div(factor)
            if not remainder.is_zero:
                break
            num, power = quotient, power - 1
        return HilbertSeries(tuple(int(c) for c in reversed(num.all_coeffs())), power, self.n)

    def render(self) -> str:
        terms = []
        for i, c in enumerate(self.numerator):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = "t" if i == 1 else f"t^{i}"
                body = power if mag == 1 else f"{mag}*{power}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        return f"({' '.join(terms) or '0'}) / (1-t)^{self.denominator_power}"

    def __str__(self) -> str:
        return self.render()


def hilbert_series(fv: FVector, n: int) -> HilbertSeries:
    """
    H(t) = sum_{i=-1}^{dim} f_i t^{i+1} / (1-t)^{i+1}, with f_{-1} = 1,
    brought over the common denominator (1-t)^n.
    """
    check_n(n)
    if not fv.within_bounds(n):
        raise ValueError(f"f-vector {fv.render()} is impossible for a complex on {n} vertices")
    numerator = sum(
        fv[i] * _T ** (i + 1) * (1 - _T) ** (n - i - 1) for i in range(-1, fv.dim + 1)
    )
    coeffs = sp.Poly(numerator, _T, domain=sp.ZZ).all_coeffs()
    return HilbertSeries(tuple(int(c) for c in reversed(coeffs)), n, n)


def _monomial_supports(n: int, degree: int) -> Iterator[int]:
    for exps in combinations_with_replacement(range(n), degree):
        bits = 0
        for v in exps:
            bits |= 1 << v
        yield bits


def hilbert_function_bruteforce(ideal: SquareFreeIdeal, degree: int) -> int:
    """Number of degree-j monomials of S (any exponents) outside I."""
    gens = ideal.masks
    return sum(1 for m in _monomial_supports(ideal.n, degree) if not any(g & ~m == 0 for g in gens))
