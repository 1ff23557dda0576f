"""Admissibility use cases: sub-quotient sweeps and the Robertson graph"""
import logging
import random
from itertools import combinations
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from app.application.dto.admissibility_dto import (
    AdmissibilityCertificateDTO,
    GraphPropertiesDTO,
    RobertsonReportDTO,
    SubquotientVerdictDTO,
)
from app.application.use_cases.counting_use_cases import CountingUseCases
from app.application.use_cases.polynomial_use_cases import PolynomialUseCases
from app.domain.entities.multigraph import MultiGraph, edge_set
from app.domain.entities.subquotient import SubquotientSpec
from app.domain.exceptions import BudgetExceededError, PreconditionError
from app.domain.repositories.graph_repository import GraphRepository
from app.infrastructure.config.settings import settings
from app.infrastructure.repositories.graph_catalog import edge_list_digest

logger = logging.getLogger(__name__)


class AdmissibilityUseCases:
    """Sub-quotients G \\ I // J with |J| > |I| >= 0 and |I| <= n - 3"""

    def __init__(
        self,
        repository: GraphRepository,
        polynomials: PolynomialUseCases,
        counting: CountingUseCases,
        seed: int = settings.DEFAULT_SEED,
    ):
        self.repository = repository
        self.polynomials = polynomials
        self.counting = counting
        self.seed = seed

    # Enumeration

    @staticmethod
    def _check(graph: MultiGraph) -> None:
        if graph.degenerate or not graph.is_connected():
            raise PreconditionError("sub-quotients need a connected graph")
        if graph.vertex_rank < 3:
            raise PreconditionError(f"sub-quotients need n >= 3, graph has n = {graph.vertex_rank}")

    @staticmethod
    def total_specs(graph: MultiGraph) -> int:
        n, size = graph.vertex_rank, graph.edge_count
        return sum(
            comb(size, i) * comb(size - i, j)
            for i in range(0, n - 2)
            for j in range(i + 1, size - i + 1)
        )

    def subquotients(self, graph: MultiGraph) -> Iterator[SubquotientSpec]:
        """All specs by |I|, then |J|, then lexicographically"""
        self._check(graph)
        ids = graph.edge_ids
        for i in range(0, graph.vertex_rank - 2):
            for j in range(i + 1, graph.edge_count - i + 1):
                for deleted in combinations(ids, i):
                    rest = [e for e in ids if e not in deleted]
                    for contracted in combinations(rest, j):
                        yield SubquotientSpec(edge_set(deleted), edge_set(contracted))

    def sample_specs(self, graph: MultiGraph, small: int, extra: int) -> List[SubquotientSpec]:
        """Every spec with |I| + |J| <= small plus seeded random specs"""
        self._check(graph)
        ids = graph.edge_ids
        n, size = graph.vertex_rank, graph.edge_count
        chosen = set()
        for i in range(0, min(n - 3, small) + 1):
            for j in range(i + 1, small - i + 1):
                for deleted in combinations(ids, i):
                    rest = [e for e in ids if e not in deleted]
                    for contracted in combinations(rest, j):
                        chosen.add(SubquotientSpec(edge_set(deleted), edge_set(contracted)))
        rng = random.Random(self.seed)
        for _ in range(extra):
            i = rng.randint(0, min(n - 3, (size - 1) // 2))
            j = rng.randint(i + 1, size - i)
            picked = rng.sample(list(ids), i + j)
            chosen.add(SubquotientSpec(edge_set(picked[:i]), edge_set(picked[i:])))
        return sorted(chosen, key=lambda s: (len(s.deleted), len(s.contracted), s.deleted, s.contracted))

    def _specs(self, graph: MultiGraph) -> Tuple[List[SubquotientSpec], int, bool]:
        total = self.total_specs(graph)
        if total <= settings.ADMISSIBILITY_FULL_SWEEP_LIMIT:
            return list(self.subquotients(graph)), total, True
        logger.warning(
            "⚠️ %s has %d sub-quotients, checking a sample", graph.name or "graph", total
        )
        specs = self.sample_specs(graph, settings.ADMISSIBILITY_SAMPLE_SIZE, settings.ADMISSIBILITY_RANDOM_SPECS)
        return specs, total, False

    # Certificates

    def _verdict(self, spec: SubquotientSpec, minor: MultiGraph) -> SubquotientVerdictDTO:
        girth = minor.girth()
        return SubquotientVerdictDTO(
            spec=spec.label(),
            deleted=list(spec.deleted),
            contracted=list(spec.contracted),
            passed=minor.has_cycle_at_most(4),
            witness_length=None if girth == float("inf") else int(girth),
            degenerate=minor.degenerate,
            disconnected=not minor.degenerate and not minor.is_connected(),
        )

    def check_admissible_combinatorial(self, graph: MultiGraph) -> AdmissibilityCertificateDTO:
        """Passes iff every non-degenerate sub-quotient has a cycle of length <= 4"""
        specs, total, exhaustive = self._specs(graph)
        verdicts, failures, degenerate, disconnected = [], [], [], []
        for spec in specs:
            verdict = self._verdict(spec, spec.apply(graph))
            verdicts.append(verdict)
            if verdict.degenerate:
                degenerate.append(verdict.spec)
                continue
            if verdict.disconnected:
                disconnected.append(verdict.spec)
            if not verdict.passed:
                failures.append(verdict.spec)
        passed = not failures
        logger.info(
            "%s combinatorial certificate for %s: %d specs, %d with girth >= 5",
            "✅" if passed else "❌", graph.name or "graph", len(specs), len(failures),
        )
        return AdmissibilityCertificateDTO(
            graph=graph.name,
            mode="combinatorial",
            total_specs=total,
            checked=len(specs),
            passed=passed,
            partial=not exhaustive,
            exhaustive=exhaustive,
            failures=failures,
            flagged_girth5=list(failures),
            flagged_degenerate=degenerate,
            flagged_disconnected=disconnected,
            verdicts=verdicts,
        )

    def check_admissible_pointcount(
        self, graph: MultiGraph, qs: Sequence[int], budget: Optional[int] = None
    ) -> AdmissibilityCertificateDTO:
        """[phi of each sub-quotient]_q = 0 mod q^3 at every q"""
        counting = self.counting if budget is None else CountingUseCases(self.polynomials, budget)
        specs, total, exhaustive = self._specs(graph)
        per_q: Dict[str, Dict[str, int]] = {str(q): {"checked": 0, "failed": 0} for q in qs}
        verdicts, failures, girth5, degenerate, disconnected = [], [], [], [], []
        message = None
        for spec in specs:
            minor = spec.apply(graph)
            verdict = self._verdict(spec, minor)
            if verdict.degenerate:
                degenerate.append(verdict.spec)
                verdicts.append(verdict)
                continue
            if verdict.disconnected:
                disconnected.append(verdict.spec)
            if not verdict.passed:
                girth5.append(verdict.spec)
            phi = self.polynomials.phi(minor)
            counts: Dict[str, int] = {}
            try:
                for q in qs:
                    counts[str(q)] = counting.count_affine_eliminated([phi], minor.edge_ids, q)
            except BudgetExceededError as exc:
                message = f"budget exhausted at {verdict.spec}: {exc}"
                logger.warning("⚠️ %s", message)
                break
            ok = True
            for q in qs:
                per_q[str(q)]["checked"] += 1
                if counts[str(q)] % q ** 3:
                    per_q[str(q)]["failed"] += 1
                    ok = False
            if not ok:
                failures.append(verdict.spec)
            verdicts.append(verdict.model_copy(update={"passed": ok, "counts": counts}))
        partial = message is not None or not exhaustive
        passed = not failures
        logger.info(
            "%s point-count certificate for %s at q=%s: %d specs checked",
            "✅" if passed else "❌", graph.name or "graph", list(qs), len(verdicts),
        )
        return AdmissibilityCertificateDTO(
            graph=graph.name,
            mode="pointcount",
            total_specs=total,
            checked=len(verdicts),
            passed=passed,
            partial=partial,
            exhaustive=exhaustive and message is None,
            failures=failures,
            flagged_girth5=girth5,
            flagged_degenerate=degenerate,
            flagged_disconnected=disconnected,
            per_q=per_q,
            message=message,
            verdicts=verdicts,
        )

    # Robertson graph

    @staticmethod
    def properties(graph: MultiGraph) -> GraphPropertiesDTO:
        degrees = {graph.degree(v) for v in range(graph.vertex_count)}
        girth = graph.girth()
        return GraphPropertiesDTO(
            name=graph.name,
            vertices=graph.vertex_count,
            edges=graph.edge_count,
            h=graph.loop_number(),
            n=graph.vertex_rank,
            girth=None if girth == float("inf") else int(girth),
            regular_degree=degrees.pop() if len(degrees) == 1 else None,
            log_divergent=graph.is_log_divergent(),
        )

    def robertson(self) -> Tuple[MultiGraph, MultiGraph]:
        return self.repository.get("robertson"), self.repository.get("robertson-decompleted")

    def robertson_report(self) -> RobertsonReportDTO:
        completed, decompleted = self.robertson()
        first, second = self.properties(completed), self.properties(decompleted)
        passed = (
            (first.vertices, first.edges, first.regular_degree, first.girth) == (19, 38, 4, 5)
            and (second.edges, second.h, second.n, second.girth) == (34, 17, 17, 5)
        )
        logger.info("%s Robertson graph properties", "✅" if passed else "❌")
        return RobertsonReportDTO(
            completed=first,
            decompleted=second,
            checksum=edge_list_digest(completed.pairs()),
            passed=passed,
        )
