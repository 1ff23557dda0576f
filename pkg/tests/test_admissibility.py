"""Sub-quotient sweeps and the Robertson graph"""
import pytest

from app.domain.entities.subquotient import SubquotientSpec
from app.domain.exceptions import PreconditionError
from app.infrastructure.config.settings import settings
from app.infrastructure.repositories import graph_catalog as catalog


class TestEnumeration:
    def test_k4_window(self, admissibility, k4) -> None:
        specs = list(admissibility.subquotients(k4))
        assert len(specs) == admissibility.total_specs(k4) == 63
        assert all(spec.in_window(k4.vertex_rank) for spec in specs)
        assert specs[0] == SubquotientSpec((), (1,))
        assert specs[-1] == SubquotientSpec((), (1, 2, 3, 4, 5, 6))

    def test_order_is_by_sizes_then_lexicographic(self, admissibility) -> None:
        specs = list(admissibility.subquotients(catalog.complete(5)))
        keys = [(len(s.deleted), len(s.contracted), s.deleted, s.contracted) for s in specs]
        assert keys == sorted(keys)
        assert len(specs) == admissibility.total_specs(catalog.complete(5))

    def test_small_loop_order_is_rejected(self, admissibility, c3) -> None:
        with pytest.raises(PreconditionError):
            list(admissibility.subquotients(c3))

    def test_sample_is_seeded(self, admissibility, k4) -> None:
        small = admissibility.sample_specs(k4, 1, 0)
        assert small == [SubquotientSpec((), (e,)) for e in k4.edge_ids]
        assert admissibility.sample_specs(k4, 1, 5) == admissibility.sample_specs(k4, 1, 5)

    def test_overlapping_spec_is_rejected(self) -> None:
        with pytest.raises(PreconditionError):
            SubquotientSpec((1,), (1, 2))


class TestCertificates:
    def test_k4_combinatorial(self, admissibility, k4) -> None:
        certificate = admissibility.check_admissible_combinatorial(k4)
        assert certificate.passed and certificate.exhaustive and not certificate.partial
        assert certificate.checked == 63
        assert certificate.flagged_degenerate
        assert len(certificate.verdicts) == 63

    def test_contracting_a_petersen_edge_leaves_a_four_cycle(self, admissibility, petersen) -> None:
        spec = SubquotientSpec((), (1,))
        verdict = admissibility._verdict(spec, spec.apply(petersen))
        assert verdict.witness_length == 4 and verdict.passed

    @pytest.mark.parametrize("qs", [[2], [2, 3]])
    def test_k4_pointcount(self, admissibility, k4, qs) -> None:
        certificate = admissibility.check_admissible_pointcount(k4, qs)
        assert certificate.passed
        assert certificate.mode == "pointcount"
        assert set(certificate.per_q) == {str(q) for q in qs}
        assert all(row["failed"] == 0 for row in certificate.per_q.values())
        checked = [v for v in certificate.verdicts if not v.degenerate]
        assert all(set(v.counts) == {str(q) for q in qs} for v in checked)

    def test_large_sweep_is_sampled(self, admissibility, monkeypatch, k4e) -> None:
        monkeypatch.setattr(settings, "ADMISSIBILITY_FULL_SWEEP_LIMIT", 10)
        monkeypatch.setattr(settings, "ADMISSIBILITY_RANDOM_SPECS", 4)
        certificate = admissibility.check_admissible_combinatorial(k4e)
        assert certificate.partial and not certificate.exhaustive
        assert certificate.checked < certificate.total_specs


class TestRobertson:
    def test_report(self, admissibility) -> None:
        report = admissibility.robertson_report()
        assert report.passed
        assert report.checksum == catalog.ROBERTSON_SHA256
        assert report.completed.regular_degree == 4
        assert report.decompleted.log_divergent

    def test_properties(self, admissibility) -> None:
        properties = admissibility.properties(catalog.cycle(5))
        assert (properties.vertices, properties.edges, properties.h, properties.n) == (5, 5, 1, 4)
        assert properties.girth == 5 and properties.regular_degree == 2
