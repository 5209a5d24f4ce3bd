from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, List

MAX_VERTICES = 64


def popcount(bits: int) -> int:
    return bits.bit_count()


def bits_of(bits: int) -> Iterator[int]:
    """Yield the single-bit masks of `bits`, lowest first."""
    while bits:
        low = bits & -bits
        yield low
        bits ^= low


def members_of(bits: int) -> tuple[int, ...]:
    """1-indexed vertices of a mask (bit i-1 <-> vertex i)."""
    return tuple(low.bit_length() for low in bits_of(bits))


def full_mask(n: int) -> int:
    return (1 << n) - 1


def sort_key(bits: int) -> tuple[int, tuple[int, ...]]:
    # graded, then lexicographic on the ascending member tuple
    return popcount(bits), members_of(bits)


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def check_n(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"vertex count must be an int, got {n!r}")
    if not 1 <= n <= MAX_VERTICES:
        raise ValueError(f"vertex count must lie in 1..{MAX_VERTICES}, got {n}")
    return n


@dataclass(frozen=True)
class VertexSet:
    """A subset of [n]; doubles as a face and as the support of a square-free monomial."""

    bits: int
    n: int

    def __post_init__(self) -> None:
        check_n(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"vertex set {members_of(abs(self.bits))} leaves 1..{self.n}")

    @classmethod
    def of(cls, n: int, vertices: Iterable[int]) -> "VertexSet":
        bits = 0
        for v in vertices:
            if not 1 <= v <= n:
                raise ValueError(f"vertex {v} outside 1..{n}")
            bits |= 1 << (v - 1)
        return cls(bits, n)

    @classmethod
    def empty(cls, n: int) -> "VertexSet":
        return cls(0, n)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(full_mask(n), n)

    @property
    def members(self) -> tuple[int, ...]:
        return members_of(self.bits)

    def cardinality(self) -> int:
        return popcount(self.bits)

    def __len__(self) -> int:
        return popcount(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, vertex: object) -> bool:
        return isinstance(vertex, int) and 1 <= vertex <= self.n and bool(self.bits >> (vertex - 1) & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def _same_ambient(self, other: "VertexSet") -> None:
        if self.n != other.n:
            raise ValueError(f"vertex sets live on different ambient sets ({self.n} vs {other.n})")

    def issubset(self, other: "VertexSet") -> bool:
        self._same_ambient(other)
        return self.bits & ~other.bits == 0

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._same_ambient(other)
        return VertexSet(self.bits | other.bits, self.n)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._same_ambient(other)
        return VertexSet(self.bits & other.bits, self.n)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._same_ambient(other)
        return VertexSet(self.bits & ~other.bits, self.n)

    def complement(self) -> "VertexSet":
        return VertexSet(full_mask(self.n) & ~self.bits, self.n)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return sort_key(self.bits)

    def __lt__(self, other: "VertexSet") -> bool:
        return self.sort_key() < other.sort_key()

    def render(self) -> str:
        return "{" + ",".join(str(v) for v in self.members) + "}"

    def monomial(self) -> str:
        return "*".join(f"x{v}" for v in self.members)

    def __str__(self) -> str:
        return self.render()


def minimal_masks(masks: Iterable[int]) -> List[int]:
    """Inclusion-minimal members of a family of masks, canonical order, no duplicates."""
    kept: List[int] = []
    for m in sorted(set(masks), key=popcount):
        if not any(k & ~m == 0 for k in kept):
            kept.append(m)
    return sorted(kept, key=sort_key)


def maximal_masks(masks: Iterable[int]) -> List[int]:
    kept: List[int] = []
    for m in sorted(set(masks), key=popcount, reverse=True):
        if not any(m & ~k == 0 for k in kept):
            kept.append(m)
    return sorted(kept, key=sort_key)


def is_antichain(masks: Iterable[int]) -> bool:
    ms = list(masks)
    if len(set(ms)) != len(ms):
        return False
    return not any(a != b and a & ~b == 0 for a in ms for b in ms)
