"""Suite use cases: every applicable statement on a batch of graphs"""
import logging
from typing import Callable, List, Optional, Sequence, Tuple, Union

from app.application.dto.report_dto import CongruenceReportDTO, IdentityRecordDTO, SuiteReportDTO
from app.application.use_cases.congruence_use_cases import CongruenceUseCases
from app.application.use_cases.graph_use_cases import GraphUseCases
from app.application.use_cases.identity_use_cases import IdentityUseCases
from app.domain.entities.multigraph import MultiGraph
from app.domain.exceptions import BudgetExceededError, PolynomialError, PreconditionError
from app.infrastructure.config.settings import settings

logger = logging.getLogger(__name__)

Report = Union[IdentityRecordDTO, CongruenceReportDTO]

# Raised by a statement that does not apply; reported as skipped
_SKIPPABLE = (PreconditionError, PolynomialError, BudgetExceededError)


class SuiteUseCases:
    """Runs identities once per graph and congruences once per (graph, q)"""

    def __init__(self, identities: IdentityUseCases, congruences: CongruenceUseCases, graphs: GraphUseCases):
        self.identities = identities
        self.congruences = congruences
        self.graphs = graphs

    def _first_cycle(self, graph: MultiGraph, lengths: Sequence[int]) -> Optional[Tuple[int, ...]]:
        for length in lengths:
            found = self.graphs.find_cycles(graph, length)
            if found:
                return found[0]
        return None

    @staticmethod
    def _star(graph: MultiGraph) -> Optional[List[int]]:
        for v in range(graph.vertex_count):
            star = sorted({e.id for e in graph.incidence[v] if not e.is_loop})
            if len(star) >= 2:
                return star
        return None

    def _identity(self, statement: str, graph: MultiGraph, run: Callable[[], object]) -> List[IdentityRecordDTO]:
        try:
            result = run()
        except _SKIPPABLE as exc:
            logger.info("⚠️ %s skipped on %s: %s", statement, graph.name or "graph", exc)
            return [IdentityRecordDTO(statement=statement, graph=graph.name, passed=True, skipped=True, message=str(exc))]
        return result if isinstance(result, list) else [result]

    def _congruence(self, statement: str, graph: MultiGraph, q: int, run: Callable[[], object]) -> List[CongruenceReportDTO]:
        try:
            result = run()
        except _SKIPPABLE as exc:
            return [self.congruences.skipped(statement, graph, q, str(exc))]
        return result if isinstance(result, list) else [result]

    def identity_records(self, graph: MultiGraph, seed: int = settings.DEFAULT_SEED) -> List[IdentityRecordDTO]:
        ids = list(graph.edge_ids)
        cycle = self._first_cycle(graph, range(2, graph.edge_count + 1))
        triangle = self._first_cycle(graph, [3])
        face = self._first_cycle(graph, [4])
        star = self._star(graph)

        def need(value, what: str):
            if not value:
                raise PreconditionError(f"graph has no {what}")
            return value

        def first(count: int) -> List[int]:
            if len(ids) < count:
                raise PreconditionError(f"needs at least {count} edges")
            return ids[:count]

        checks: List[Tuple[str, Callable[[], object]]] = [
            ("contraction_deletion", lambda: [self.identities.contraction_deletion(graph, e) for e in ids[:2]]),
            ("row_relation", lambda: self.identities.jacobi_row_relation(graph, need(cycle, "cycle"))),
            ("cycle_relation", lambda: self.identities.cycle_corolla_relations(graph, need(cycle, "cycle"), "cycle")),
            ("corolla_relation", lambda: self.identities.cycle_corolla_relations(graph, need(star, "corolla"), "corolla")),
            ("plucker", lambda: self.identities.plucker_check(graph, first(4), 2)),
            ("dodgson_first", lambda: self.identities.dodgson_identity_check(graph, (), (), first(4))),
            (
                "dodgson_second",
                lambda: self.identities.dodgson_identity_check(graph, (), first(4)[3:], first(4)[:3], "second"),
            ),
            ("support_containment", lambda: self.identities.support_containment(graph, first(2)[:1], first(2)[1:])),
            ("cremona_duality", lambda: self.identities.cremona_duality(graph, first(2)[:1], first(2)[1:])),
            (
                "cremona_duality",
                lambda: self.identities.cremona_duality(graph, first(4)[:1], first(4)[1:2], tuple(first(4)[2:])),
            ),
            ("triangle_reconstruction", lambda: self.identities.triangle_checks(graph, need(triangle, "triangle"))),
            ("fourface_relations", lambda: self.identities.fourface_checks(graph, need(face, "4-cycle"))),
            (
                "fourface_square_mod_a",
                lambda: self.identities.fourface_square_mod_a(graph, need(face, "4-cycle"), seed=seed),
            ),
            ("fourface_three_minor", lambda: self.identities.fourface_three_minor(graph, need(face, "4-cycle"))),
        ]
        records: List[IdentityRecordDTO] = []
        for statement, run in checks:
            records.extend(self._identity(statement, graph, run))
        return records

    def congruence_reports(self, graph: MultiGraph, q: int) -> List[CongruenceReportDTO]:
        c = self.congruences
        ids = list(graph.edge_ids)
        triangle = self._first_cycle(graph, [3])
        face = self._first_cycle(graph, [4])
        short = self._first_cycle(graph, [1, 2, 3])

        def need(value, what: str):
            if not value:
                raise PreconditionError(f"graph has no {what}")
            return value

        def chevalley_warning() -> CongruenceReportDTO:
            phi = c.polynomials.phi(graph)
            upper, lower = phi.linear_split(ids[0])
            return c.cw_check([upper, lower], ids[1:], q, graph)

        checks: List[Tuple[str, Callable[[], object]]] = [
            ("single_edge_expansion", lambda: c.single_edge_expansion(graph, q)),
            ("two_edge_expansion", lambda: c.two_edge_expansion(graph, q)),
            ("dual_divisibility", lambda: c.dual_divisibility(graph, q)),
            ("chevalley_warning", chevalley_warning),
            ("triangle_congruence", lambda: c.verify_triangle(graph, need(triangle, "triangle"), q)),
            ("triangle_vanishing", lambda: c.triangle_vanishing(graph, need(short, "cycle of length <= 3"), q)),
            ("fourface_five_term", lambda: c.verify_fourface(graph, need(face, "4-cycle"), q)),
            ("c2_coincidence", lambda: c.c2_coincidence(graph, q)),
        ]
        reports: List[CongruenceReportDTO] = []
        for statement, run in checks:
            reports.extend(self._congruence(statement, graph, q, run))
        return reports

    def run(self, graphs: Sequence[MultiGraph], qs: Sequence[int], seed: int = settings.DEFAULT_SEED) -> SuiteReportDTO:
        logger.info("🚀 verifying %d graphs at q=%s", len(graphs), list(qs))
        identities: List[IdentityRecordDTO] = []
        congruences: List[CongruenceReportDTO] = []
        for graph in graphs:
            identities.extend(self.identity_records(graph, seed))
            for q in qs:
                congruences.extend(self.congruence_reports(graph, q))
        everything: List[Report] = [*identities, *congruences]
        skipped = sum(1 for r in everything if r.skipped)
        failed = sum(1 for r in everything if not r.skipped and not r.passed)
        report = SuiteReportDTO(
            graphs=[g.name for g in graphs],
            qs=list(qs),
            seed=seed,
            identities=identities,
            congruences=congruences,
            passed=len(everything) - skipped - failed,
            failed=failed,
            skipped=skipped,
        )
        logger.info(
            "%s %d passed, %d failed, %d skipped", "✅" if report.ok else "❌",
            report.passed, report.failed, report.skipped,
        )
        return report
