"""Ideal generators shared by the test modules: hypothesis strategies, a seeded corpus, exhaustive antichains."""
from __future__ import annotations

import random
from pathlib import Path
from typing import Iterator, List

from hypothesis import strategies as st

from monomial.ideal import SquareFreeIdeal, parse_ideal
from monomial.vertexset import full_mask, minimal_masks

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
CORPUS_SEED = 20240229
CORPUS_SIZE = 1000


def load_fixture(name: str) -> SquareFreeIdeal:
    return parse_ideal((FIXTURES / name).read_text(encoding="utf-8"))


@st.composite
def ideals(draw, min_n: int = 1, max_n: int = 8, max_generators: int = 10) -> SquareFreeIdeal:
    n = draw(st.integers(min_n, max_n))
    masks = draw(st.lists(st.integers(1, full_mask(n)), min_size=1, max_size=max_generators))
    return SquareFreeIdeal.from_masks(n, minimal_masks(masks))


@st.composite
def pure_ideals(draw, min_n: int = 2, max_n: int = 8) -> SquareFreeIdeal:
    n = draw(st.integers(min_n, max_n))
    d = draw(st.integers(1, n))
    pool = [m for m in range(1, 1 << n) if m.bit_count() == d]
    chosen = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=len(pool), unique=True))
    # extend to full support so the ideal is pure
    covered = 0
    for m in chosen:
        covered |= m
    for m in pool:
        if covered == full_mask(n):
            break
        if m & ~covered:
            chosen.append(m)
            covered |= m
    return SquareFreeIdeal.from_masks(n, set(chosen))


def random_ideal(rng: random.Random, n: int) -> SquareFreeIdeal:
    count = rng.randint(1, min(12, (1 << n) - 1))
    masks = [rng.randint(1, full_mask(n)) for _ in range(count)]
    return SquareFreeIdeal.from_masks(n, minimal_masks(masks))


def random_pure_ideal(rng: random.Random, n: int, d: int) -> SquareFreeIdeal:
    vertices = list(range(n))
    masks = set()
    while True:
        masks.add(sum(1 << v for v in rng.sample(vertices, d)))
        covered = 0
        for m in masks:
            covered |= m
        if covered == full_mask(n) and rng.random() < 0.3:
            return SquareFreeIdeal.from_masks(n, masks)


def random_corpus(size: int = CORPUS_SIZE, max_n: int = 12, seed: int = CORPUS_SEED) -> List[SquareFreeIdeal]:
    rng = random.Random(seed)
    corpus = []
    for i in range(size):
        n = rng.randint(1, max_n)
        if i % 2 and n >= 2:
            corpus.append(random_pure_ideal(rng, n, rng.randint(1, min(n, 4))))
        else:
            corpus.append(random_ideal(rng, n))
    return corpus


def all_ideals(n: int) -> Iterator[SquareFreeIdeal]:
    """Every square-free ideal on n variables: one per non-empty antichain of non-empty subsets."""
    masks = list(range(1, 1 << n))

    def extend(i: int, chosen: List[int]) -> Iterator[List[int]]:
        if i == len(masks):
            if chosen:
                yield chosen
            return
        m = masks[i]
        yield from extend(i + 1, chosen)
        if all(m & ~c and c & ~m for c in chosen):
            yield from extend(i + 1, chosen + [m])

    for family in extend(0, []):
        yield SquareFreeIdeal.from_masks(n, family)
