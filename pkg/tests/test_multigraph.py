"""Graph core: structure, invariants, minors and the text format"""
import itertools
import math
import random

import pytest

from app.domain.entities.multigraph import Edge, MultiGraph, edge_set
from app.domain.exceptions import GraphInputError, PreconditionError
from app.infrastructure.repositories import graph_catalog as catalog
from app.infrastructure.repositories.graph_repository_impl import GraphRepositoryImpl


def test_edge_set_sorts_and_rejects_duplicates() -> None:
    assert edge_set([3, 1, 2]) == (1, 2, 3)
    with pytest.raises(GraphInputError):
        edge_set([1, 1])


def test_unknown_edge_id_is_rejected(k4) -> None:
    with pytest.raises(GraphInputError):
        k4.edge(7)


@pytest.mark.parametrize(
    "graph, expected",
    [
        (catalog.cycle(3), 1),
        (catalog.complete(4), 3),
        (catalog.banana(3), 2),
        (catalog.petersen(), 6),
        (catalog.robertson_decompleted(), 17),
    ],
)
def test_loop_number(graph, expected) -> None:
    assert graph.loop_number() == expected


def test_loop_number_needs_connected_graph() -> None:
    two_pieces = MultiGraph.from_pairs(4, [(0, 1), (2, 3)])
    with pytest.raises(PreconditionError):
        two_pieces.loop_number()
    assert two_pieces.cycle_rank == 0
    assert two_pieces.vertex_rank == 2


@pytest.mark.parametrize(
    "graph, expected",
    [
        (catalog.complete(4), 3),
        (catalog.cycle(4), 4),
        (catalog.banana(2), 2),
        (MultiGraph.from_pairs(1, [(0, 0)]), 1),
        (catalog.petersen(), 5),
        (catalog.robertson(), 5),
        (MultiGraph.from_pairs(3, [(0, 1), (1, 2)]), math.inf),
    ],
)
def test_girth(graph, expected) -> None:
    assert graph.girth() == expected


def test_has_cycle_at_most(petersen) -> None:
    assert not petersen.has_cycle_at_most(4)
    assert petersen.has_cycle_at_most(5)


def test_log_divergence(k4, wheel4, k4e) -> None:
    assert k4.is_log_divergent()
    assert wheel4.is_log_divergent()
    assert not k4e.is_log_divergent()


class TestMinors:
    def test_deletion_keeps_ids_and_universe(self, k4) -> None:
        minor = k4.delete_edges([1])
        assert minor.edge_ids == (2, 3, 4, 5, 6)
        assert minor.nvars == 6
        assert minor.vertex_count == 4

    def test_contraction_merges_endpoints(self, k4) -> None:
        minor = k4.contract_edges([1])
        assert minor.vertex_count == 3
        assert minor.edge_ids == (2, 3, 4, 5, 6)
        assert minor.girth() == 2
        assert not minor.degenerate

    def test_contracting_a_self_loop_marks_degenerate(self) -> None:
        minor = catalog.banana(2).contract_edges([1, 2])
        assert minor.degenerate
        assert minor.vertex_count == 1

    def test_overlapping_sets_are_rejected(self, k4) -> None:
        with pytest.raises(PreconditionError):
            k4.minor(deleted=[1], contracted=[1, 2])

    def test_deletion_never_shortens_girth(self) -> None:
        rng = random.Random(5)
        for graph in [catalog.complete(5), catalog.petersen(), catalog.wheel(5), catalog.complete_bipartite(3, 3)]:
            for _ in range(5):
                removed = rng.sample(list(graph.edge_ids), 2)
                assert graph.delete_edges(removed).girth() >= graph.girth()

    def test_deletion_and_contraction_commute(self, random_batch) -> None:
        for graph in random_batch:
            ids = graph.edge_ids
            for labels in itertools.product(range(3), repeat=len(ids)):
                deleted = [e for e, label in zip(ids, labels) if label == 1]
                contracted = [e for e, label in zip(ids, labels) if label == 2]
                assert graph.delete_edges(deleted).contract_edges(contracted) == graph.contract_edges(
                    contracted
                ).delete_edges(deleted)


class TestSpanningTrees:
    @pytest.mark.parametrize("graph, expected", [(catalog.complete(4), 16), (catalog.petersen(), 2000)])
    def test_matrix_tree_count(self, graphs, graph, expected) -> None:
        assert graphs.count_spanning_trees(graph) == expected

    def test_enumeration_matches_matrix_tree_theorem(self, graphs, random_batch) -> None:
        for graph in random_batch:
            trees = list(graphs.spanning_trees(graph))
            assert len(trees) == graphs.count_spanning_trees(graph)
            assert all(len(tree) == graph.vertex_rank for tree in trees)


class TestCycles:
    def test_k4_cycles(self, graphs, k4) -> None:
        assert len(graphs.find_cycles(k4, 3)) == 4
        assert len(graphs.find_cycles(k4, 4)) == 3

    def test_loops_and_parallel_edges(self, graphs) -> None:
        graph = MultiGraph.from_pairs(2, [(0, 1), (0, 1), (1, 1)])
        assert graphs.find_cycles(graph, 1) == [(3,)]
        assert graphs.find_cycles(graph, 2) == [(1, 2)]

    def test_face_adaptation_relabels_the_cycle_first(self, graphs, k4) -> None:
        cycle = graphs.find_cycles(k4, 4)[0]
        face = graphs.face_adapted(k4, cycle)
        assert face.length == 4
        assert [face.labels[i] for i in range(1, 5)] == list(cycle)
        adapted = face.graph
        for i in range(1, 5):
            edge = adapted.edge(i)
            assert edge.source == face.vertices[i - 1]
            assert edge.target == face.vertices[i % 4]

    def test_face_adaptation_rejects_non_cycles(self, graphs, k4) -> None:
        with pytest.raises(PreconditionError):
            graphs.face_adapted(k4, [1, 2])


class TestGenerators:
    def test_connected_multigraph_classes(self, graphs) -> None:
        found = graphs.connected_multigraphs(4)
        by_edges = [sum(1 for g in found if g.edge_count == n) for n in range(1, 5)]
        assert by_edges == [1, 2, 5, 12]
        assert all(g.is_connected() and g.girth() >= 2 for g in found)

    def test_self_loops_on_request(self, graphs) -> None:
        found = graphs.connected_multigraphs(2, loops=True)
        assert [sum(1 for g in found if g.edge_count == n) for n in (1, 2)] == [2, 4]
        assert any(g.girth() == 1 for g in found)

    def test_edge_bound_is_checked(self, graphs) -> None:
        with pytest.raises(PreconditionError):
            graphs.connected_multigraphs(0)

    @pytest.mark.parametrize(
        "graph, vertices, edges, girth",
        [
            (catalog.complete_bipartite(3, 4), 7, 12, 4),
            (catalog.prism(), 6, 9, 3),
            (catalog.cube(), 8, 12, 4),
            (catalog.wagner(), 8, 12, 4),
            (catalog.house(), 5, 6, 3),
        ],
    )
    def test_catalog_shapes(self, graph, vertices, edges, girth) -> None:
        assert (graph.vertex_count, graph.edge_count, graph.girth()) == (vertices, edges, girth)
        assert graph.is_connected()


class TestTextFormat:
    def test_parse_reports_line_numbers(self) -> None:
        repository = GraphRepositoryImpl()
        with pytest.raises(GraphInputError, match="line 3"):
            repository.parse("graph 3 2\n0 1\n0 5\n")
        with pytest.raises(GraphInputError, match="line 2"):
            repository.parse("# comment\nedges 3\n")

    def test_empty_edge_list_is_rejected(self) -> None:
        with pytest.raises(GraphInputError):
            GraphRepositoryImpl().parse("graph 1 0\n")

    def test_saved_graph_loads_back(self, tmp_path, k4e) -> None:
        repository = GraphRepositoryImpl()
        path = repository.save(k4e, tmp_path / "k4e.graph")
        loaded = repository.get(str(path))
        assert loaded.pairs() == k4e.pairs()
        assert loaded.name == "k4e"

    def test_builtin_names_resolve_case_insensitively(self) -> None:
        assert GraphRepositoryImpl().get("K4").edge_count == 6


def test_robertson_graph_properties() -> None:
    graph = catalog.robertson()
    assert (graph.vertex_count, graph.edge_count, graph.girth()) == (19, 38, 5)
    assert all(graph.degree(v) == 4 for v in range(19))
    decompleted = catalog.robertson_decompleted()
    assert (decompleted.edge_count, decompleted.loop_number(), decompleted.vertex_rank) == (34, 17, 17)
    assert decompleted.is_log_divergent()
    assert decompleted.girth() == 5


def test_edges_are_sorted_by_id() -> None:
    graph = MultiGraph(2, (Edge(2, 0, 1), Edge(1, 1, 0)))
    assert graph.edge_ids == (1, 2)
    assert graph.nvars == 2
