from __future__ import annotations

import pytest

from helpers import load_fixture, random_corpus
from monomial.ideal import SquareFreeIdeal


@pytest.fixture(scope="session")
def degree3_example() -> SquareFreeIdeal:
    return load_fixture("degree3_f_ideal.ideal")


@pytest.fixture(scope="session")
def five_variable_example() -> SquareFreeIdeal:
    return load_fixture("five_variable_nonexample.ideal")


@pytest.fixture(scope="session")
def corpus() -> list[SquareFreeIdeal]:
    return random_corpus()


@pytest.fixture(scope="session")
def pure_corpus(corpus) -> list[SquareFreeIdeal]:
    return [g for g in corpus if g.pure_degree() is not None]


@pytest.fixture(scope="session")
def mixed_cover_example() -> SquareFreeIdeal:
    return load_fixture("mixed_cover_f_ideal.ideal")
