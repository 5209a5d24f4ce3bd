"""
Candidate ideals at fixed (n, d) as bitmasks over the ranked d-subsets of [n].

The C(n, d) degree-d square-free monomials are ranked in colex order; a
candidate ideal with s generators is an s-bit mask over those ranks, and
candidates are visited in colex order of that mask with Gosper's next-subset
step. The lookup tables below let both f-ideal predicates run on raw masks.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional

from monomial.errors import EnumerationBoundsError
from monomial.ideal import SquareFreeIdeal
from monomial.vertexset import binomial, bits_of, popcount

MAX_N = 8


def gosper_next(x: int) -> int:
    """Next integer above x with the same popcount."""
    low = x & -x
    ripple = x + low
    return (((ripple ^ x) >> 2) // low) | ripple


def colex_unrank(rank: int, k: int) -> int:
    """The k-bit mask with the given colex rank (combinatorial number system)."""
    mask = 0
    for i in range(k, 0, -1):
        c = i - 1
        while binomial(c + 1, i) <= rank:
            c += 1
        mask |= 1 << c
        rank -= binomial(c, i)
    return mask


def colex_rank(mask: int) -> int:
    return sum(binomial(low.bit_length() - 1, i) for i, low in enumerate(bits_of(mask), start=1))


def fixed_popcount_masks(k: int, start: int, count: int) -> Iterator[int]:
    """`count` consecutive k-bit masks in colex order, beginning at colex rank `start`."""
    if count <= 0:
        return
    if k == 0:
        yield 0
        return
    x = colex_unrank(start, k)
    for _ in range(count):
        yield x
        x = gosper_next(x)


def check_bounds(n: int, d: int, s: Optional[int] = None) -> None:
    if not 2 <= d <= n <= MAX_N:
        raise EnumerationBoundsError(f"enumeration needs 2 <= d <= n <= {MAX_N}, got n={n}, d={d}")
    if s is not None and not 1 <= s <= binomial(n, d):
        raise EnumerationBoundsError(f"s must lie in 1..C({n},{d})={binomial(n, d)}, got {s}")


@dataclass(frozen=True)
class CandidateSpace:
    """
    Tables over all 2^n vertex masks m, each a mask over d-subset ranks:
    contained[m]: d-subsets inside m; meeting[m]: d-subsets meeting m;
    containing[m]: d-subsets containing m.
    """

    n: int
    d: int
    dsets: tuple[int, ...]
    touching: tuple[int, ...]
    contained: tuple[int, ...]
    meeting: tuple[int, ...]
    containing: tuple[int, ...]
    by_size: tuple[tuple[int, ...], ...]

    @property
    def width(self) -> int:
        return len(self.dsets)

    def generators(self, cand: int) -> List[int]:
        return [self.dsets[low.bit_length() - 1] for low in bits_of(cand)]

    def ideal(self, cand: int) -> SquareFreeIdeal:
        return SquareFreeIdeal.from_masks(self.n, self.generators(cand))

    def mask_of(self, ideal: SquareFreeIdeal) -> int:
        if ideal.n != self.n or not ideal.is_pure_of_degree(self.d):
            raise ValueError(f"{ideal} is not a pure degree-{self.d} ideal on {self.n} variables")
        index = {g: r for r, g in enumerate(self.dsets)}
        return sum(1 << index[g] for g in ideal.masks)

    def has_full_support(self, cand: int) -> bool:
        return all(cand & t for t in self.touching)

    def facet_fvector(self, cand: int) -> tuple[int, ...]:
        counts = [sum(1 for m in self.by_size[k] if self.containing[m] & cand) for k in range(1, self.d)]
        counts.append(popcount(cand))
        return tuple(counts)

    def nonface_fvector(self, cand: int) -> tuple[int, ...]:
        counts = [sum(1 for m in self.by_size[k] if not self.contained[m] & cand) for k in range(1, self.n + 1)]
        while counts and counts[-1] == 0:
            counts.pop()
        return tuple(counts)

    def cover_sizes(self, cand: int) -> List[int]:
        """Sizes of the minimal vertex covers, by scanning every vertex mask."""
        meeting = self.meeting
        sizes = []
        for m in range(1, 1 << self.n):
            if meeting[m] & cand != cand:
                continue
            if all(meeting[m ^ low] & cand != cand for low in bits_of(m)):
                sizes.append(popcount(m))
        return sizes

    def is_f_ideal(self, cand: int) -> bool:
        return self.facet_fvector(cand) == self.nonface_fvector(cand)

    def satisfies_characterization(self, cand: int) -> bool:
        n, d = self.n, self.d
        total = self.width
        s = popcount(cand)
        if total % 2 or 2 * s != total:
            return False
        sizes = self.cover_sizes(cand)
        if len(sizes) != s or any(size != n - d for size in sizes):
            return False
        skeleton = sum(1 for m in self.by_size[d - 1] if self.containing[m] & cand)
        return skeleton == binomial(n, d - 1)


@lru_cache(maxsize=None)
def candidate_space(n: int, d: int) -> CandidateSpace:
    check_bounds(n, d)
    dsets = tuple(fixed_popcount_masks(d, 0, binomial(n, d)))
    ranks = range(len(dsets))
    touching = tuple(sum(1 << r for r in ranks if dsets[r] >> v & 1) for v in range(n))
    contained, meeting, containing = [], [], []
    for m in range(1 << n):
        contained.append(sum(1 << r for r in ranks if dsets[r] & ~m == 0))
        meeting.append(sum(1 << r for r in ranks if dsets[r] & m))
        containing.append(sum(1 << r for r in ranks if m & ~dsets[r] == 0))
    by_size = tuple(tuple(m for m in range(1 << n) if popcount(m) == k) for k in range(n + 1))
    return CandidateSpace(
        n=n,
        d=d,
        dsets=dsets,
        touching=touching,
        contained=tuple(contained),
        meeting=tuple(meeting),
        containing=tuple(containing),
        by_size=by_size,
    )


def enumerate_candidates(n: int, d: int, s: int) -> Iterator[SquareFreeIdeal]:
    """Every full-support ideal generated by s distinct degree-d square-free monomials, colex order."""
    check_bounds(n, d, s)
    space = candidate_space(n, d)
    for cand in fixed_popcount_masks(s, 0, binomial(space.width, s)):
        if space.has_full_support(cand):
            yield space.ideal(cand)
