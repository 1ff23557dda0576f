"""Exhaustive and seeded sweeps over small graphs"""
import itertools
import random
from typing import Iterator, List, Sequence, Tuple

import networkx as nx
import pytest

from app.application.use_cases.cycle_basis_use_cases import CycleBasisUseCases
from app.domain.entities.multigraph import MultiGraph
from app.presentation.cli.dependencies import UseCases, get_use_cases


@pytest.fixture(scope="module")
def sweep() -> UseCases:
    return get_use_cases()


@pytest.fixture(scope="module")
def multigraphs(sweep) -> List[MultiGraph]:
    return sweep.graphs.connected_multigraphs(8)


@pytest.fixture(scope="module")
def multigraphs_with_loops(sweep) -> List[MultiGraph]:
    return sweep.graphs.connected_multigraphs(6, loops=True)


def with_edges(graphs: Sequence[MultiGraph], count: int) -> List[MultiGraph]:
    batch = [g for g in graphs if g.edge_count == count]
    assert batch
    return batch


def disjoint_pairs(ids: Sequence[int], rng: random.Random, sampled: int = 8) -> Iterator[Tuple[List[int], List[int]]]:
    """Every (S, K) with |S| + |K| <= 2, then ``sampled`` random ones with |S| + |K| = 3"""
    for size in range(3):
        for chosen in itertools.combinations(ids, size):
            for mask in range(1 << size):
                yield (
                    [e for bit, e in enumerate(chosen) if mask >> bit & 1],
                    [e for bit, e in enumerate(chosen) if not mask >> bit & 1],
                )
    if len(ids) < 3:
        return
    for _ in range(sampled):
        chosen = rng.sample(list(ids), 3)
        mask = rng.randrange(8)
        yield (
            sorted(e for bit, e in enumerate(chosen) if mask >> bit & 1),
            sorted(e for bit, e in enumerate(chosen) if not mask >> bit & 1),
        )


@pytest.mark.slow
@pytest.mark.parametrize("edges", range(1, 7))
def test_phi_backends_on_every_small_multigraph(sweep, multigraphs_with_loops, edges) -> None:
    for graph in with_edges(multigraphs_with_loops, edges):
        assert sweep.polynomials.phi(graph, "determinant") == sweep.polynomials.phi(graph, "tree-sum"), graph.pairs()


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(4))
def test_phi_backends_on_random_graphs(sweep, seed) -> None:
    for graph in sweep.graphs.random_graphs(50, 10, seed=seed, loops=True):
        assert sweep.polynomials.phi(graph, "determinant") == sweep.polynomials.phi(graph, "tree-sum"), graph.pairs()


@pytest.mark.slow
@pytest.mark.parametrize("edges", range(1, 9))
def test_cycle_minors_are_units_exactly_on_trees(sweep, multigraphs, edges) -> None:
    basis = CycleBasisUseCases()
    for graph in with_edges(multigraphs, edges):
        matrix = basis.small_cycle_basis(graph)
        trees = set(sweep.graphs.spanning_trees(graph))
        for subset in itertools.combinations(graph.edge_ids, graph.vertex_rank):
            expected = 1 if subset in trees else 0
            assert abs(basis.cycle_minor_det(matrix, subset)) == expected, (graph.pairs(), subset)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(4))
def test_cremona_duality_on_random_graphs(sweep, seed) -> None:
    rng = random.Random(seed)
    for graph in sweep.graphs.random_graphs(25, 9, seed=100 + seed, min_edges=3):
        for s, k in disjoint_pairs(graph.edge_ids, rng):
            record = sweep.identities.cremona_duality(graph, s, k)
            assert record.passed, (graph.pairs(), s, k, record.counterexample)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(4))
def test_identity_suite_on_random_graphs(sweep, seed) -> None:
    for graph in sweep.graphs.random_graphs(25, 10, seed=200 + seed, min_edges=4):
        failed = [r.statement for r in sweep.suite.identity_records(graph) if not r.passed]
        assert not failed, (graph.pairs(), failed)


@pytest.mark.slow
@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_divisibility_on_every_small_multigraph(sweep, multigraphs, q) -> None:
    batch = [g for g in multigraphs if g.edge_count <= 6 and g.loop_number() >= 2]
    assert batch
    for graph in batch:
        report = sweep.congruences.dual_divisibility(graph, q)
        assert report.passed, (graph.pairs(), report.residues)


@pytest.mark.slow
@pytest.mark.parametrize("q", [2, 3])
def test_divisibility_on_random_graphs(sweep, q) -> None:
    batch = [g for g in sweep.graphs.random_graphs(40, 10, seed=300, min_edges=5) if g.loop_number() >= 2]
    assert batch
    for graph in batch:
        report = sweep.congruences.dual_divisibility(graph, q)
        assert report.passed, (graph.pairs(), report.residues)


def log_divergent_graphs(sweep: UseCases, multigraphs: Sequence[MultiGraph]) -> List[MultiGraph]:
    """Multigraphs up to 8 edges plus the simple graphs with 6 vertices and 10 edges, all with h >= 3"""
    found = [g for g in multigraphs if g.is_log_divergent() and g.loop_number() >= 3]
    for simple in nx.graph_atlas_g():
        if simple.number_of_nodes() == 6 and simple.number_of_edges() == 10 and nx.is_connected(simple):
            found.append(sweep.graphs.from_networkx(simple, name=f"atlas-{len(found)}"))
    return found


@pytest.mark.slow
@pytest.mark.parametrize("q", [2, 3, 5])
def test_c2_coincidence_on_log_divergent_graphs(sweep, multigraphs, q) -> None:
    batch = log_divergent_graphs(sweep, multigraphs)
    assert {g.edge_count for g in batch} == {6, 8, 10}
    for graph in batch:
        report = sweep.congruences.c2_coincidence(graph, q)
        assert report.passed, (graph.pairs(), report.counts)


@pytest.mark.slow
def test_deletion_and_contraction_commute_on_every_small_multigraph(multigraphs_with_loops) -> None:
    for graph in [g for g in multigraphs_with_loops if g.edge_count <= 5]:
        ids = graph.edge_ids
        for labels in itertools.product(range(3), repeat=len(ids)):
            deleted = [e for e, label in zip(ids, labels) if label == 1]
            contracted = [e for e, label in zip(ids, labels) if label == 2]
            assert graph.minor(deleted=deleted, contracted=contracted) == graph.contract_edges(
                contracted
            ).delete_edges(deleted)
