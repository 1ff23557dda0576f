"""Full verification runs"""
import pytest

from app.infrastructure.repositories import graph_catalog as catalog


@pytest.fixture
def suite(use_cases):
    return use_cases.suite


def test_k4_passes_everything_that_applies(suite, k4) -> None:
    report = suite.run([k4], [2, 3])
    assert report.ok
    assert report.failed == 0
    assert report.passed > 0
    assert report.graphs == ["k4"] and report.qs == [2, 3]
    assert report.passed + report.skipped == len(report.identities) + len(report.congruences)


def test_statements_without_their_structure_are_skipped(suite, c3) -> None:
    records = {r.statement: r for r in suite.identity_records(c3)}
    assert records["fourface_relations"].skipped
    assert "4-cycle" in records["fourface_relations"].message
    assert not records["triangle_reconstruction"].skipped
    reports = {r.statement: r for r in suite.congruence_reports(c3, 2)}
    assert reports["dual_divisibility"].skipped
    assert not reports["single_edge_expansion"].skipped
    assert reports["single_edge_expansion"].passed


def test_congruences_repeat_per_field(suite, k4e) -> None:
    report = suite.run([k4e], [2, 3])
    assert {r.q for r in report.congruences} == {2, 3}
    identity_count = len(report.identities)
    assert identity_count == len(suite.identity_records(k4e))
    assert report.ok


def test_random_batch(suite, random_batch) -> None:
    report = suite.run(random_batch, [2], seed=11)
    assert report.ok, [r.statement for r in report.identities + report.congruences if not r.passed]


@pytest.mark.slow
def test_wheel_and_banana_at_three_fields(suite) -> None:
    report = suite.run([catalog.wheel(4), catalog.banana(3)], [2, 3, 4])
    assert report.ok
