"""Shared fixtures: catalog graphs and use cases wired as the CLI wires them"""
import pytest

from app.infrastructure.repositories import graph_catalog as catalog
from app.presentation.cli.dependencies import UseCases, get_use_cases


@pytest.fixture
def use_cases() -> UseCases:
    return get_use_cases()


@pytest.fixture
def graphs(use_cases):
    return use_cases.graphs


@pytest.fixture
def polynomials(use_cases):
    return use_cases.polynomials


@pytest.fixture
def counting(use_cases):
    return use_cases.counting


@pytest.fixture
def identities(use_cases):
    return use_cases.identities


@pytest.fixture
def congruences(use_cases):
    return use_cases.congruences


@pytest.fixture
def admissibility(use_cases):
    return use_cases.admissibility


@pytest.fixture
def search(use_cases):
    return use_cases.search


@pytest.fixture
def c3():
    return catalog.cycle(3)


@pytest.fixture
def c4():
    return catalog.cycle(4)


@pytest.fixture
def k4():
    return catalog.complete(4).with_name("k4")


@pytest.fixture
def k4e():
    return catalog.k4_plus_edge()


@pytest.fixture
def banana3():
    return catalog.banana(3)


@pytest.fixture
def wheel4():
    return catalog.wheel(4)


@pytest.fixture
def petersen():
    return catalog.petersen()


@pytest.fixture
def random_batch(graphs):
    return graphs.random_graphs(6, 7, seed=11, min_edges=3)
