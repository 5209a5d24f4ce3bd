"""
Minimal vertex covers of the generator hypergraph and the minimal primary decomposition.

For a square-free monomial ideal I the associated primes of S/I are exactly the
monomial primes (x_i : i in C) for C a minimal vertex cover of the generators,
so I = intersection of those primes. The facets of the Stanley-Reisner complex
are the complements of the same covers.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence

from monomial.errors import InvariantError
from monomial.ideal import SquareFreeIdeal
from monomial.vertexset import (
    VertexSet,
    bits_of,
    full_mask,
    members_of,
    minimal_masks,
    popcount,
    sort_key,
)

log = logging.getLogger("fideals.decomposition")

BRUTEFORCE_MAX_N = 24
EXHAUSTIVE_VALIDATION_MAX_N = 12
VALIDATION_SAMPLE = 10_000
VALIDATION_SEED = 0x5EED_F1DE


def _has_redundant_vertex(cover: int, incident: Dict[int, List[int]]) -> bool:
    """A vertex is redundant when no edge meets the cover in that vertex alone."""
    for v in bits_of(cover):
        if not any(e & cover == v for e in incident[v]):
            return True
    return False


def minimal_transversals(edges: Iterable[int]) -> List[int]:
    """
    All inclusion-minimal transversals of a family of non-empty masks.

    Branches on the first uncovered edge, adding one of its vertices per
    branch; vertices tried by earlier siblings stay excluded below, so each
    transversal is reached once. A branch is cut as soon as some vertex of its
    partial cover has no private edge, since adding vertices never creates one.
    """
    family = sorted(set(edges), key=sort_key)
    if any(e == 0 for e in family):
        raise ValueError("the empty edge has no transversal")
    incident: Dict[int, List[int]] = {}
    for e in family:
        for v in bits_of(e):
            incident.setdefault(v, []).append(e)
    found: List[int] = []

    def branch(cover: int, excluded: int) -> None:
        for e in family:
            if not e & cover:
                break
        else:
            found.append(cover)
            return
        for v in bits_of(e & ~excluded):
            grown = cover | v
            if not _has_redundant_vertex(grown, incident):
                branch(grown, excluded)
            excluded |= v

    branch(0, 0)
    return sorted(found, key=sort_key)


def minimal_transversals_bruteforce(edges: Sequence[int], n: int) -> List[int]:
    if n > BRUTEFORCE_MAX_N:
        raise ValueError(f"subset scan limited to n <= {BRUTEFORCE_MAX_N}, got {n}")
    covers = [m for m in range(1 << n) if all(e & m for e in edges)]
    return minimal_masks(covers)


def minimal_vertex_covers(ideal: SquareFreeIdeal) -> List[VertexSet]:
    return [VertexSet(c, ideal.n) for c in minimal_transversals(ideal.masks)]


def minimal_vertex_covers_bruteforce(ideal: SquareFreeIdeal) -> List[VertexSet]:
    return [VertexSet(c, ideal.n) for c in minimal_transversals_bruteforce(ideal.masks, ideal.n)]


@dataclass(frozen=True)
class PrimeComponent:
    """The monomial prime (x_i : i in variables)."""

    variables: VertexSet

    def __post_init__(self) -> None:
        if not self.variables:
            raise ValueError("a prime component needs at least one variable")

    @property
    def height(self) -> int:
        return len(self.variables)

    def render(self) -> str:
        return "(" + ",".join(f"x{v}" for v in self.variables) + ")"


@dataclass(frozen=True)
class Decomposition:
    components: tuple[PrimeComponent, ...]

    @property
    def height(self) -> int:
        return min(c.height for c in self.components)

    @property
    def unmixed(self) -> bool:
        return len({c.height for c in self.components}) == 1

    def __len__(self) -> int:
        return len(self.components)

    def render(self) -> str:
        return " ∩ ".join(c.render() for c in self.components)

    def to_json(self) -> Dict[str, object]:
        return {
            "components": [list(c.variables.members) for c in self.components],
            "height": self.height,
            "unmixed": self.unmixed,
        }


def _in_every_component(monomial: int, covers: Sequence[int]) -> bool:
    return all(monomial & c for c in covers)


def validate_decomposition(ideal: SquareFreeIdeal, covers: Sequence[int], *, seed: int = VALIDATION_SEED) -> int:
    """
    Check m in I  <=>  m in every component, over all square-free m when n is
    small and over a seeded sample otherwise. Returns the number of monomials checked.
    """
    n = ideal.n
    if n <= EXHAUSTIVE_VALIDATION_MAX_N:
        monomials: Iterable[int] = range(1 << n)
        checked = 1 << n
    else:
        rng = random.Random(seed)
        monomials = (rng.getrandbits(n) for _ in range(VALIDATION_SAMPLE))
        checked = VALIDATION_SAMPLE
    gens = ideal.masks
    for m in monomials:
        member = any(g & ~m == 0 for g in gens)
        if member != _in_every_component(m, covers):
            raise InvariantError(
                f"intersection of components disagrees with {ideal} on monomial {members_of(m)}"
            )
    return checked


def primary_decomposition(
    ideal: SquareFreeIdeal, *, validate: bool = True, seed: int = VALIDATION_SEED
) -> Decomposition:
    covers = minimal_transversals(ideal.masks)
    if validate:
        checked = validate_decomposition(ideal, covers, seed=seed)
        log.debug("decomposition of %s validated on %d monomials", ideal, checked)
    return Decomposition(tuple(PrimeComponent(VertexSet(c, ideal.n)) for c in covers))


def height(ideal: SquareFreeIdeal) -> int:
    return min(popcount(c) for c in minimal_transversals(ideal.masks))


def is_unmixed(ideal: SquareFreeIdeal) -> bool:
    return len({popcount(c) for c in minimal_transversals(ideal.masks)}) == 1


def nonface_facets_via_duality(ideal: SquareFreeIdeal) -> List[VertexSet]:
    """Facets of the Stanley-Reisner complex: complements of the minimal vertex covers."""
    full = full_mask(ideal.n)
    facets = [full & ~c for c in minimal_transversals(ideal.masks)]
    return [VertexSet(f, ideal.n) for f in sorted(facets, key=sort_key)]
