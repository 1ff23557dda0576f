"""Exact polynomial identities among Dodgson minors"""
import pytest

from app.domain.exceptions import PreconditionError
from app.infrastructure.repositories import graph_catalog as catalog

IDENTITY_GRAPHS = [catalog.complete(4).with_name("k4"), catalog.k4_plus_edge(), catalog.wheel(4)]


def assert_passed(records) -> None:
    records = records if isinstance(records, list) else [records]
    for record in records:
        assert record.passed, f"{record.statement} on {record.graph}: {record.counterexample}"


@pytest.mark.parametrize("graph", IDENTITY_GRAPHS, ids=lambda g: g.name)
class TestOnCatalogGraphs:
    def test_contraction_deletion(self, identities, graph) -> None:
        for edge in graph.edge_ids:
            assert_passed(identities.contraction_deletion(graph, edge))

    def test_dodgson_identities(self, identities, graph) -> None:
        assert_passed(identities.dodgson_identity_check(graph, (), (), (1, 2, 3, 4)))
        assert_passed(identities.dodgson_identity_check(graph, (5,), (6,), (1, 2, 3, 4)))
        assert_passed(identities.dodgson_identity_check(graph, (), (4,), (1, 2, 3), "second"))

    def test_plucker(self, identities, graph) -> None:
        assert_passed(identities.plucker_check(graph, (1, 2, 3, 4), 2))

    def test_cremona_duality(self, identities, graph) -> None:
        assert_passed(identities.cremona_duality(graph, (1,), (2,)))
        assert_passed(identities.cremona_duality(graph, (), (), None))
        assert_passed(identities.cremona_duality(graph, (1,), (2,), (3, 4)))

    def test_support_containment(self, identities, graph) -> None:
        assert_passed(identities.support_containment(graph, (1,), (2,)))
        assert_passed(identities.support_containment(graph, (1, 3), (2, 4)))

    def test_face_identities(self, identities, graphs, graph) -> None:
        triangle = graphs.find_cycles(graph, 3)[0]
        face = graphs.find_cycles(graph, 4)[0]
        assert_passed(identities.triangle_checks(graph, triangle))
        assert_passed(identities.jacobi_row_relation(graph, triangle))
        assert_passed(identities.cycle_corolla_relations(graph, triangle, "cycle"))
        assert_passed(identities.fourface_checks(graph, face))
        assert_passed(identities.fourface_square_mod_a(graph, face, samples=8))
        assert_passed(identities.fourface_three_minor(graph, face))


def test_corolla_relation(identities, k4) -> None:
    star = sorted(e.id for e in k4.incidence[0])
    record = identities.cycle_corolla_relations(k4, star, "corolla")
    assert_passed(record)
    assert len(record.detail["signs"]) == len(star) - 1


def test_relations_reject_wrong_edge_sets(identities, k4, graphs) -> None:
    face = graphs.find_cycles(k4, 4)[0]
    with pytest.raises(PreconditionError):
        identities.cycle_corolla_relations(k4, face[:3], "cycle")
    with pytest.raises(PreconditionError):
        identities.cycle_corolla_relations(k4, face, "corolla")
    with pytest.raises(PreconditionError):
        identities.cycle_corolla_relations(k4, face, "spiral")


def test_dodgson_argument_checks(identities, k4) -> None:
    with pytest.raises(PreconditionError):
        identities.dodgson_identity_check(k4, (), (), (1, 2, 3))
    with pytest.raises(PreconditionError):
        identities.dodgson_identity_check(k4, (1,), (2,), (1, 3, 4, 5))
    with pytest.raises(PreconditionError):
        identities.dodgson_identity_check(k4, (), (), (1, 2, 3), "third")


def test_failing_identity_is_reported_not_raised(identities, k4) -> None:
    phi = identities.polynomials.phi(k4)
    record = identities._record("deliberate", k4, phi, phi.scale(2))
    assert not record.passed
    assert record.counterexample.startswith("-")
