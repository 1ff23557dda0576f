"""Congruence use cases: point-count identities, divisibility and vanishing statements"""
import logging
import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from app.application.dto.report_dto import CongruenceReportDTO
from app.application.use_cases.counting_use_cases import Ambient, CountingUseCases
from app.application.use_cases.graph_use_cases import GraphUseCases
from app.application.use_cases.polynomial_use_cases import PolynomialUseCases
from app.domain.entities.multigraph import MultiGraph
from app.domain.entities.sparse_poly import SparsePoly
from app.domain.exceptions import PreconditionError

logger = logging.getLogger(__name__)


class CongruenceUseCases:
    """Every statement returns a CongruenceReportDTO or raises PreconditionError"""

    def __init__(self, counting: CountingUseCases, polynomials: PolynomialUseCases, graphs: GraphUseCases):
        self.counting = counting
        self.polynomials = polynomials
        self.graphs = graphs

    # Helpers

    def _count(self, polys: Sequence[SparsePoly], ambient: Ambient, q: int) -> int:
        return self.counting.count_affine_eliminated(polys, ambient, q)

    @staticmethod
    def _without(graph: MultiGraph, *edges: int) -> List[int]:
        return [e for e in graph.edge_ids if e not in edges]

    def _report(
        self,
        statement: str,
        graph: Optional[MultiGraph],
        q: int,
        counts: Dict[str, int],
        modulus: int,
        residues: Dict[str, int],
        started: float,
    ) -> CongruenceReportDTO:
        name = graph.name if graph is not None else ""
        passed = all(value == 0 for value in residues.values())
        if passed:
            logger.debug("✅ %s on %s at q=%d", statement, name or "graph", q)
        else:
            logger.warning("❌ %s failed on %s at q=%d: %s", statement, name or "graph", q, residues)
        return CongruenceReportDTO(
            statement=statement,
            graph=name,
            q=q,
            counts=counts,
            modulus=modulus,
            residues=residues,
            passed=passed,
            millis=round((time.perf_counter() - started) * 1000, 3),
        )

    @staticmethod
    def skipped(statement: str, graph: MultiGraph, q: int, message: str) -> CongruenceReportDTO:
        logger.info("⚠️ %s skipped on %s: %s", statement, graph.name or "graph", message)
        return CongruenceReportDTO(
            statement=statement, graph=graph.name, q=q, passed=True, skipped=True, message=message
        )

    @staticmethod
    def _require_connected(graph: MultiGraph) -> None:
        if graph.degenerate or not graph.is_connected():
            raise PreconditionError("statement needs a connected graph")

    @staticmethod
    def _require_edges(graph: MultiGraph, count: int) -> None:
        if graph.edge_count < count:
            raise PreconditionError(f"statement needs at least {count} edges")

    # Expansions in the first edge variables

    def single_edge_expansion(self, graph: MultiGraph, q: int, edge: Optional[int] = None) -> CongruenceReportDTO:
        """[Z_G] = q[phi^1, phi_1] + q^{N-1} - [phi^1]"""
        started = time.perf_counter()
        self._require_edges(graph, 1)
        e = graph.edge_ids[0] if edge is None else graph.check_edges([edge])[0]
        phi = self.polynomials.phi(graph)
        upper, lower = phi.linear_split(e)
        rest = self._without(graph, e)
        z = self._count([phi], graph.edge_ids, q)
        pair = self._count([upper, lower], rest, q)
        single = self._count([upper], rest, q)
        rhs = q * pair + q ** (graph.edge_count - 1) - single
        return self._report(
            "single_edge_expansion", graph, q,
            {"Z": z, "phi^1,phi_1": pair, "phi^1": single}, 0, {"difference": z - rhs}, started,
        )

    def two_edge_expansion(
        self, graph: MultiGraph, q: int, first: Optional[int] = None, second: Optional[int] = None
    ) -> CongruenceReportDTO:
        """[Z_G] = q^{N-1} - [phi^1] + q^2[phi^12, phi^1_2, phi^2_1, phi_12] + q[phi^{1,2}] - q[phi^12, phi^2_1]"""
        started = time.perf_counter()
        self._require_edges(graph, 2)
        e1 = graph.edge_ids[0] if first is None else first
        e2 = graph.edge_ids[1] if second is None else second
        graph.check_edges([e1, e2])
        dd = self.polynomials.dual_dodgson
        phi = self.polynomials.phi(graph)
        z = self._count([phi], graph.edge_ids, q)
        single = self._count([dd(graph, (e1,), (e1,))], self._without(graph, e1), q)
        rest = self._without(graph, e1, e2)
        both = dd(graph, (e1, e2), (e1, e2))
        four = self._count(
            [both, dd(graph, (e1,), (e1,), (e2,)), dd(graph, (e2,), (e2,), (e1,)), dd(graph, (), (), (e1, e2))],
            rest, q,
        )
        mixed = self._count([dd(graph, (e1,), (e2,))], rest, q)
        pair = self._count([both, dd(graph, (e2,), (e2,), (e1,))], rest, q)
        rhs = q ** (graph.edge_count - 1) - single + q * q * four + q * mixed - q * pair
        return self._report(
            "two_edge_expansion", graph, q,
            {"Z": z, "phi^1": single, "four": four, "phi^{1,2}": mixed, "phi^12,phi^2_1": pair},
            0, {"difference": z - rhs}, started,
        )

    def dual_divisibility(self, graph: MultiGraph, q: int) -> CongruenceReportDTO:
        """q^2 | [Z_G], q | [phi^1, phi_1] and q | [phi^{1,2}] for h >= 2"""
        started = time.perf_counter()
        self._require_connected(graph)
        if graph.loop_number() < 2:
            raise PreconditionError("divisibility needs h >= 2")
        e1, e2 = graph.edge_ids[:2]
        dd = self.polynomials.dual_dodgson
        phi = self.polynomials.phi(graph)
        upper, lower = phi.linear_split(e1)
        z = self._count([phi], graph.edge_ids, q)
        pair = self._count([upper, lower], self._without(graph, e1), q)
        mixed = self._count([dd(graph, (e1,), (e2,))], self._without(graph, e1, e2), q)
        return self._report(
            "dual_divisibility", graph, q,
            {"Z": z, "phi^1,phi_1": pair, "phi^{1,2}": mixed}, q,
            {"Z mod q^2": z % (q * q), "phi^1,phi_1 mod q": pair % q, "phi^{1,2} mod q": mixed % q},
            started,
        )

    def cw_check(
        self, polys: Sequence[SparsePoly], ambient: Ambient, q: int, graph: Optional[MultiGraph] = None
    ) -> CongruenceReportDTO:
        """Total degree below the number of variables forces q | count"""
        started = time.perf_counter()
        nvars = ambient if isinstance(ambient, int) else len(set(ambient))
        total = sum(max(p.degree(), 0) for p in polys)
        if total >= nvars:
            raise PreconditionError(f"total degree {total} is not below the {nvars} variables")
        count = self._count(polys, ambient, q)
        return self._report(
            "chevalley_warning", graph, q, {"count": count, "degree": total, "variables": nvars},
            q, {"count mod q": count % q}, started,
        )

    # Triangles

    def triangle_congruence(self, graph: MultiGraph, triangle: Sequence[int], q: int) -> CongruenceReportDTO:
        """[Z_G] = q^2 [phi^{1,2}_3, phi^{13,23}] mod q^3 (h >= 3, N >= 4)"""
        started = time.perf_counter()
        self._require_connected(graph)
        if graph.loop_number() < 3 or graph.edge_count < 4:
            raise PreconditionError("triangle congruence needs h >= 3 and N >= 4")
        g = self.graphs.face_adapted(graph, self._triangle(triangle)).graph
        dd = self.polynomials.dual_dodgson
        z = self._count([self.polynomials.phi(g)], g.edge_ids, q)
        pair = self._count([dd(g, (1,), (2,), (3,)), dd(g, (1, 3), (2, 3))], self._without(g, 1, 2, 3), q)
        modulus = q ** 3
        return self._report(
            "triangle_congruence", graph, q, {"Z": z, "pair": pair}, modulus,
            {"Z - q^2 pair mod q^3": (z - q * q * pair) % modulus}, started,
        )

    def triangle_stratification(self, graph: MultiGraph, triangle: Sequence[int], q: int) -> CongruenceReportDTO:
        """[Z_G] = q^{N-1} - q^2 [g0, g1, g2, g3] + q^3 [g0, g1, g2, g3, g123]"""
        started = time.perf_counter()
        self._require_connected(graph)
        data = self.polynomials.triangle_data(graph, self._triangle(triangle))
        g = data.face.graph
        rest = self._without(g, 1, 2, 3)
        z = self._count([self.polynomials.phi(g)], g.edge_ids, q)
        four = self._count([data.g0, data.g1, data.g2, data.g3], rest, q)
        five = self._count(list(data.as_list()), rest, q)
        rhs = q ** (g.edge_count - 1) - q * q * four + q ** 3 * five
        return self._report(
            "triangle_stratification", graph, q, {"Z": z, "g0..g3": four, "g0..g123": five},
            0, {"difference": z - rhs}, started,
        )

    def triangle_vanishing(self, graph: MultiGraph, cycle: Sequence[int], q: int) -> CongruenceReportDTO:
        """N > 2n and a triangle, double edge or self-loop: q^3 | [Z_G] and q^2 | [phi^1, phi_1]"""
        started = time.perf_counter()
        self._require_connected(graph)
        if not 1 <= len(cycle) <= 3:
            raise PreconditionError("need a self-loop, a double edge or a triangle")
        if graph.edge_count <= 2 * graph.vertex_rank:
            raise PreconditionError("triangle vanishing needs N > 2n")
        g = self.graphs.face_adapted(graph, cycle).graph
        phi = self.polynomials.phi(g)
        upper, lower = phi.linear_split(1)
        z = self._count([phi], g.edge_ids, q)
        pair = self._count([upper, lower], self._without(g, 1), q)
        return self._report(
            "triangle_vanishing", graph, q, {"Z": z, "phi^1,phi_1": pair}, q ** 3,
            {"Z mod q^3": z % q ** 3, "phi^1,phi_1 mod q^2": pair % (q * q)}, started,
        )

    def verify_triangle(self, graph: MultiGraph, triangle: Sequence[int], q: int) -> List[CongruenceReportDTO]:
        return self._collect(
            graph, q,
            [
                ("triangle_congruence", lambda: self.triangle_congruence(graph, triangle, q)),
                ("triangle_stratification", lambda: self.triangle_stratification(graph, triangle, q)),
            ],
        )

    def verify_triangle_vanishing(self, graph: MultiGraph, cycle: Sequence[int], q: int) -> CongruenceReportDTO:
        return self.triangle_vanishing(graph, cycle, q)

    @staticmethod
    def _triangle(triangle: Sequence[int]) -> List[int]:
        if len(triangle) != 3:
            raise PreconditionError("a triangle has three edges")
        return list(triangle)

    # 4-faces

    def fourface_five_term(self, graph: MultiGraph, face: Sequence[int], q: int) -> CongruenceReportDTO:
        """[phi^12, phi^1_2, phi^2_1, phi_12] = [phi^{12,34}] - [a, phi^{12,34}] + [a, b^1_3] - [a, b^1_4]
        + [phi^st_{G'}, phi^{s,t}_{G'}] mod q"""
        started = time.perf_counter()
        self._require_connected(graph)
        data = self.polynomials.fourface_data(graph, face)
        g = data.face.graph
        dd = self.polynomials.dual_dodgson
        outer = self._without(g, 1, 2, 3, 4)
        lhs = self._count(
            [dd(g, (1, 2), (1, 2)), dd(g, (1,), (1,), (2,)), dd(g, (2,), (2,), (1,)), dd(g, (), (), (1, 2))],
            self._without(g, 1, 2), q,
        )
        cross = dd(g, (1, 2), (3, 4))
        surgery = self.graphs.fourface_surgery(data.face)
        counts = {
            "lhs": lhs,
            "phi^{12,34}": self._count([cross], outer, q),
            "a,phi^{12,34}": self._count([data.a, cross], outer, q),
            "a,b^1_3": self._count([data.a, data.b_of(1, 3)], outer, q),
            "a,b^1_4": self._count([data.a, data.b_of(1, 4)], outer, q),
            "G'": self._count([dd(surgery, (1, 2), (1, 2)), dd(surgery, (1,), (2,))], outer, q),
        }
        rhs = counts["phi^{12,34}"] - counts["a,phi^{12,34}"] + counts["a,b^1_3"] - counts["a,b^1_4"] + counts["G'"]
        return self._report(
            "fourface_five_term", graph, q, counts, q, {"lhs - rhs mod q": (lhs - rhs) % q}, started
        )

    def fourface_surgery_isomorphism(self, graph: MultiGraph, face: Sequence[int], q: int) -> CongruenceReportDTO:
        """[a, phi^12_34 phi^34_12] = [phi^st_{G'}, phi^{s,t}_{G'}] exactly"""
        started = time.perf_counter()
        self._require_connected(graph)
        data = self.polynomials.fourface_data(graph, face)
        g = data.face.graph
        dd = self.polynomials.dual_dodgson
        outer = self._without(g, 1, 2, 3, 4)
        product = dd(g, (1, 2), (1, 2), (3, 4)) * dd(g, (3, 4), (3, 4), (1, 2))
        surgery = self.graphs.fourface_surgery(data.face)
        left = self._count([data.a, product], outer, q)
        right = self._count([dd(surgery, (1, 2), (1, 2)), dd(surgery, (1,), (2,))], outer, q)
        return self._report(
            "fourface_surgery_isomorphism", graph, q, {"G": left, "G'": right}, 0,
            {"difference": left - right}, started,
        )

    def fourface_pair_vanishing(self, graph: MultiGraph, face: Sequence[int], q: int) -> CongruenceReportDTO:
        """N >= 2n: q | [phi^12, phi^1_2, phi^2_1, phi_12]"""
        started = time.perf_counter()
        self._require_connected(graph)
        if graph.edge_count < 2 * graph.vertex_rank:
            raise PreconditionError("needs N >= 2n")
        g = self.graphs.face_adapted(graph, face).graph
        dd = self.polynomials.dual_dodgson
        count = self._count(
            [dd(g, (1, 2), (1, 2)), dd(g, (1,), (1,), (2,)), dd(g, (2,), (2,), (1,)), dd(g, (), (), (1, 2))],
            self._without(g, 1, 2), q,
        )
        return self._report(
            "fourface_pair_vanishing", graph, q, {"four": count}, q, {"four mod q": count % q}, started
        )

    def fourface_minor_vanishing(self, graph: MultiGraph, face: Sequence[int], q: int) -> CongruenceReportDTO:
        """N > 2n: q^2 | [phi^{1,2}] for adjacent face edges 1, 2"""
        started = time.perf_counter()
        self._require_connected(graph)
        if graph.edge_count <= 2 * graph.vertex_rank:
            raise PreconditionError("needs N > 2n")
        g = self.graphs.face_adapted(graph, face).graph
        count = self._count([self.polynomials.dual_dodgson(g, (1,), (2,))], self._without(g, 1, 2), q)
        return self._report(
            "fourface_minor_vanishing", graph, q, {"phi^{1,2}": count}, q * q,
            {"phi^{1,2} mod q^2": count % (q * q)}, started,
        )

    def fourface_vanishing(self, graph: MultiGraph, face: Sequence[int], q: int) -> CongruenceReportDTO:
        """N > 2n and a 4-face: q^3 | [Z_G]"""
        started = time.perf_counter()
        self._require_connected(graph)
        if graph.edge_count <= 2 * graph.vertex_rank:
            raise PreconditionError("needs N > 2n")
        self.graphs.face_adapted(graph, face)
        z = self._count([self.polynomials.phi(graph)], graph.edge_ids, q)
        return self._report(
            "fourface_vanishing", graph, q, {"Z": z}, q ** 3, {"Z mod q^3": z % q ** 3}, started
        )

    def c2_dual_fourface(self, graph: MultiGraph, face: Sequence[int], q: int) -> int:
        """-[phi^{13,24}, phi^{14,23}]_q mod q for a log-divergent graph"""
        self._require_connected(graph)
        if not graph.is_log_divergent():
            raise PreconditionError("the 4-face formula needs a log-divergent graph (N = 2n)")
        g = self.graphs.face_adapted(graph, face).graph
        dd = self.polynomials.dual_dodgson
        count = self._count([dd(g, (1, 3), (2, 4)), dd(g, (1, 4), (2, 3))], self._without(g, 1, 2, 3, 4), q)
        return -count % q

    def fourface_c2_formula(self, graph: MultiGraph, face: Sequence[int], q: int) -> CongruenceReportDTO:
        started = time.perf_counter()
        formula = self.c2_dual_fourface(graph, face, q)
        direct = self.counting.c2_dual(graph, q)
        return self._report(
            "fourface_c2_formula", graph, q, {"c2_dual": direct, "fourface": formula}, q,
            {"difference mod q": (direct - formula) % q}, started,
        )

    def verify_fourface(self, graph: MultiGraph, face: Sequence[int], q: int) -> List[CongruenceReportDTO]:
        return self._collect(
            graph, q,
            [
                ("fourface_five_term", lambda: self.fourface_five_term(graph, face, q)),
                ("fourface_surgery_isomorphism", lambda: self.fourface_surgery_isomorphism(graph, face, q)),
                ("fourface_pair_vanishing", lambda: self.fourface_pair_vanishing(graph, face, q)),
                ("fourface_minor_vanishing", lambda: self.fourface_minor_vanishing(graph, face, q)),
                ("fourface_vanishing", lambda: self.fourface_vanishing(graph, face, q)),
                ("fourface_c2_formula", lambda: self.fourface_c2_formula(graph, face, q)),
            ],
        )

    # c2 in both representations

    def c2_coincidence(self, graph: MultiGraph, q: int) -> CongruenceReportDTO:
        started = time.perf_counter()
        self._require_connected(graph)
        if not graph.is_log_divergent():
            raise PreconditionError("c2 coincidence is stated for log-divergent graphs")
        parametric = self.counting.c2_parametric(graph, q)
        dual = self.counting.c2_dual(graph, q)
        return self._report(
            "c2_coincidence", graph, q, {"c2_parametric": parametric, "c2_dual": dual}, q,
            {"difference mod q": (parametric - dual) % q}, started,
        )

    def _collect(
        self, graph: MultiGraph, q: int, checks: Sequence[Tuple[str, Callable[[], CongruenceReportDTO]]]
    ) -> List[CongruenceReportDTO]:
        reports = []
        for statement, run in checks:
            try:
                reports.append(run())
            except PreconditionError as exc:
                reports.append(self.skipped(statement, graph, q, str(exc)))
        return reports
