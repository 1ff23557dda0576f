"""Identity use cases: exact checks of the Dodgson-type polynomial identities"""
import logging
import random
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from app.application.dto.report_dto import IdentityRecordDTO
from app.application.use_cases.graph_use_cases import GraphUseCases
from app.application.use_cases.polynomial_use_cases import PolynomialUseCases, sign_power
from app.domain.entities.multigraph import MultiGraph
from app.domain.entities.sparse_poly import SparsePoly
from app.domain.exceptions import PreconditionError
from app.infrastructure.config.settings import settings

logger = logging.getLogger(__name__)

# Terms of a failing difference quoted in a record
_COUNTEREXAMPLE_TERMS = 5


def _counterexample(difference: SparsePoly) -> Optional[str]:
    if difference.is_zero():
        return None
    shown = SparsePoly(difference.nvars, difference.terms[:_COUNTEREXAMPLE_TERMS])
    suffix = " ..." if len(difference) > _COUNTEREXAMPLE_TERMS else ""
    return shown.to_text() + suffix


class IdentityUseCases:
    """Each check returns a record; a failing identity never raises"""

    def __init__(self, polynomials: PolynomialUseCases, graphs: GraphUseCases):
        self.polynomials = polynomials
        self.graphs = graphs

    def _record(
        self, statement: str, graph: MultiGraph, lhs: SparsePoly, rhs: SparsePoly, **detail
    ) -> IdentityRecordDTO:
        difference = lhs - rhs
        passed = difference.is_zero()
        if passed:
            logger.debug("✅ %s on %s", statement, graph.name or "graph")
        else:
            logger.warning("❌ %s failed on %s: %s", statement, graph.name or "graph", _counterexample(difference))
        return IdentityRecordDTO(
            statement=statement,
            graph=graph.name,
            passed=passed,
            detail=detail,
            counterexample=_counterexample(difference),
        )

    def _search_signs(
        self, target: SparsePoly, parts: Sequence[SparsePoly]
    ) -> Optional[Tuple[int, ...]]:
        """First sign vector s in {1,-1}^k with target == sum s_i parts_i"""
        for signs in product((1, -1), repeat=len(parts)):
            total = SparsePoly.zero(target.nvars)
            for sign, part in zip(signs, parts):
                total = total + part.scale(sign)
            if total == target:
                return signs
        return None

    # Row relations from the adjugate

    def jacobi_row_relation(self, graph: MultiGraph, cycle: Sequence[int]) -> IdentityRecordDTO:
        """sum_j (-1)^j phi^{a,j} = 0 over the face edges j, for every face row a"""
        face = self.graphs.face_adapted(graph, cycle)
        g = face.graph
        zero = SparsePoly.zero(g.nvars)
        worst = zero
        for a in range(1, face.length + 1):
            total = zero
            for j in range(1, face.length + 1):
                total = total + self.polynomials.dual_dodgson(g, (a,), (j,)).scale(sign_power(j))
            if not total.is_zero():
                worst = total
                break
        return self._record("row_relation", graph, worst, zero, face=list(cycle))

    def plucker_check(self, graph: MultiGraph, indices: Sequence[int], n: int) -> IdentityRecordDTO:
        """sum_{k=n}^{2n} (-1)^k phi^{{i_1..i_{n-1}, i_k}, {i_n..i_2n} - i_k} = 0"""
        ordered = sorted(graph.check_edges(indices))
        if n < 1 or len(ordered) != 2 * n:
            raise PreconditionError(f"Plücker relation needs 2n = {2 * n} distinct edges")
        head = ordered[: n - 1]
        tail = ordered[n - 1:]
        total = SparsePoly.zero(graph.nvars)
        for k in range(n, 2 * n + 1):
            chosen = ordered[k - 1]
            rows = head + [chosen]
            cols = [e for e in tail if e != chosen]
            total = total + self.polynomials.dual_dodgson(graph, rows, cols).scale(sign_power(k))
        return self._record("plucker", graph, total, SparsePoly.zero(graph.nvars), indices=ordered, n=n)

    def dodgson_identity_check(
        self,
        graph: MultiGraph,
        rows: Sequence[int],
        cols: Sequence[int],
        extra: Sequence[int],
        which: str = "first",
    ) -> IdentityRecordDTO:
        """First identity with (a,b,c,d), second identity with (a,b,c)"""
        rows, cols = graph.check_edges(rows), graph.check_edges(cols)
        extra = list(extra)
        graph.check_edges(extra)
        if set(extra) & (set(rows) | set(cols)):
            raise PreconditionError("the extra edges must avoid I and J")
        zeroed = tuple(sorted(set(rows) | set(cols) | set(extra)))

        def dd(i: Sequence[int], j: Sequence[int]) -> SparsePoly:
            return self.polynomials.dual_dodgson(graph, i, j, zeroed)

        I, J = list(rows), list(cols)
        if which == "first":
            if len(extra) != 4 or len(I) != len(J):
                raise PreconditionError("first identity needs |I| = |J| and edges a, b, c, d")
            a, b, c, d = extra
            if a == c or b == d:
                raise PreconditionError("first identity needs a != c and b != d")
            lhs = dd(I + [a], J + [b]) * dd(I + [c], J + [d]) - dd(I + [a], J + [d]) * dd(I + [c], J + [b])
            sign = 1 if (a - c) * (b - d) > 0 else -1
            rhs = (dd(I, J) * dd(I + [a, c], J + [b, d])).scale(sign)
            return self._record("dodgson_first", graph, lhs, rhs, I=I, J=J, abcd=extra, sign=sign)
        if which == "second":
            if len(extra) != 3 or len(J) != len(I) + 1 or len(set(extra)) != 3:
                raise PreconditionError("second identity needs |J| = |I| + 1 and distinct a, b, c")
            a, b, c = extra
            middle = -1 if (a - c) * (b - c) > 0 else 1
            lhs = dd(I + [a], J) * dd(I + [b, c], J + [c]) + (dd(I + [a, c], J + [c]) * dd(I + [b], J)).scale(middle)
            rhs = dd(I + [c], J) * dd(I + [a, b], J + [c])
            signs = self._search_signs(lhs, [rhs])
            record = self._record(
                "dodgson_second", graph, lhs, rhs.scale(signs[0]) if signs else rhs,
                I=I, J=J, abc=extra, middle_sign=middle, sign=signs[0] if signs else None,
            )
            return record
        raise PreconditionError(f"unknown Dodgson identity '{which}'")

    # Cycle and corolla relations

    def _forms_cycle(self, graph: MultiGraph, edges: Sequence[int]) -> bool:
        chosen = [graph.edge(e) for e in edges]
        degree: Dict[int, int] = {}
        for e in chosen:
            degree[e.source] = degree.get(e.source, 0) + 1
            degree[e.target] = degree.get(e.target, 0) + 1
        if any(d != 2 for d in degree.values()):
            return False
        sub = MultiGraph(graph.vertex_count, tuple(chosen), graph.nvars)
        touched = set(degree)
        return sum(1 for block in sub.components if touched & set(block)) == 1

    def cycle_corolla_relations(self, graph: MultiGraph, edges: Sequence[int], mode: str = "cycle") -> IdentityRecordDTO:
        """phi^1 = sum lambda_j phi^{1,j} (cycle) or phi_1 = sum lambda_j a_j phi^{1,j} (corolla)"""
        edges = list(edges)
        graph.check_edges(edges)
        if len(edges) < 2:
            raise PreconditionError("a relation needs at least two edges")
        first, rest = edges[0], edges[1:]
        dd = self.polynomials.dual_dodgson
        if mode == "cycle":
            if not self._forms_cycle(graph, edges):
                raise PreconditionError(f"edges {edges} do not form a cycle")
            target = dd(graph, (first,), (first,))
            parts = [dd(graph, (first,), (j,)) for j in rest]
        elif mode == "corolla":
            stars = [
                v for v in range(graph.vertex_count)
                if {e.id for e in graph.incidence[v] if not e.is_loop} == set(edges)
            ]
            if not stars:
                raise PreconditionError(f"edges {edges} are not the full star of a vertex")
            target = self.polynomials.phi(graph).substitute_zero(first)
            parts = [SparsePoly.variable(j, graph.nvars) * dd(graph, (first,), (j,)) for j in rest]
        else:
            raise PreconditionError(f"unknown relation mode '{mode}'")
        signs = self._search_signs(target, parts)
        statement = "cycle_relation" if mode == "cycle" else "corolla_relation"
        if signs is None:
            total = SparsePoly.zero(graph.nvars)
            for part in parts:
                total = total + part
            return self._record(statement, graph, target, total, edges=edges, signs=None)
        return self._record(statement, graph, target, target, edges=edges, signs=list(signs))

    # Structural identities

    def contraction_deletion(self, graph: MultiGraph, edge: int) -> IdentityRecordDTO:
        """phi_G = phi_{G//e} a_e + phi_{G\\e}"""
        graph.check_edges([edge])
        phi = self.polynomials.phi(graph)
        upper, lower = phi.linear_split(edge)
        contracted = self.polynomials.phi(graph.contract_edges([edge]))
        deleted = self.polynomials.phi(graph.delete_edges([edge]))
        lhs = upper * SparsePoly.variable(edge, graph.nvars) + lower
        rhs = contracted * SparsePoly.variable(edge, graph.nvars) + deleted
        return self._record("contraction_deletion", graph, lhs, rhs, edge=edge)

    def support_containment(
        self, graph: MultiGraph, rows: Sequence[int], cols: Sequence[int], zeroed: Sequence[int] = ()
    ) -> IdentityRecordDTO:
        """Monomials of phi^{I,J}_K also occur in phi^{I,I}_{J+K} and phi^{J,J}_{I+K}"""
        rows, cols, zeroed = graph.check_edges(rows), graph.check_edges(cols), graph.check_edges(zeroed)
        dd = self.polynomials.dual_dodgson
        mixed = dd(graph, rows, cols, zeroed)
        left = dd(graph, rows, rows, sorted(set(cols) | set(zeroed)))
        right = dd(graph, cols, cols, sorted(set(rows) | set(zeroed)))
        missing = mixed.support() - (left.support() & right.support())
        extra = SparsePoly.from_dict({m: 1 for m in missing}, graph.nvars)
        return self._record(
            "support_containment", graph, extra, SparsePoly.zero(graph.nvars),
            I=list(rows), J=list(cols), K=list(zeroed), monomials=len(mixed),
        )

    def cremona_duality(
        self,
        graph: MultiGraph,
        s: Sequence[int],
        k: Sequence[int],
        pair: Optional[Tuple[int, int]] = None,
    ) -> IdentityRecordDTO:
        """phi^S_K = iota(Psi^K_S); with a pair (i, j), phi^{Si,Sj}_K = +-iota(Psi^{Ki,Kj}_S)"""
        s, k = graph.check_edges(s), graph.check_edges(k)
        if set(s) & set(k):
            raise PreconditionError("S and K must be disjoint")
        if not graph.is_connected() or graph.degenerate:
            raise PreconditionError("Cremona duality needs a connected graph")
        used = set(s) | set(k)
        if pair is None:
            lhs = self.polynomials.dual_dodgson(graph, s, s, k)
            psi = self.polynomials.psi_dodgson(graph, k, k, s)
            variables = [e for e in graph.edge_ids if e not in used]
            return self._record(
                "cremona_duality", graph, lhs, psi.cremona(variables), S=list(s), K=list(k)
            )
        i, j = pair
        graph.check_edges([i, j] if i != j else [i])
        if {i, j} & used:
            raise PreconditionError("i and j must avoid S and K")
        lhs = self.polynomials.dual_dodgson(graph, list(s) + [i], list(s) + [j], k)
        psi = self.polynomials.psi_dodgson(graph, list(k) + [i], list(k) + [j], s)
        variables = [e for e in graph.edge_ids if e not in used | {i, j}]
        dual = psi.cremona(variables)
        sign = 1 if lhs == dual else -1
        return self._record(
            "cremona_duality", graph, lhs, dual.scale(sign), S=list(s), K=list(k), pair=[i, j], sign=sign
        )

    # Triangles

    def triangle_checks(self, graph: MultiGraph, triangle: Sequence[int]) -> List[IdentityRecordDTO]:
        data = self.polynomials.triangle_data(graph, triangle)
        adapted = data.face.graph
        phi = self.polynomials.phi(adapted)
        reconstruction = self._record(
            "triangle_reconstruction", graph, data.reconstruct(), phi, triangle=list(triangle)
        )
        product_check = self._record(
            "triangle_product",
            graph,
            data.g0 * data.g123,
            data.g1 * data.g2 + data.g2 * data.g3 + data.g1 * data.g3,
            triangle=list(triangle),
        )
        return [reconstruction, product_check]

    # 4-faces

    def fourface_checks(self, graph: MultiGraph, face_edges: Sequence[int]) -> List[IdentityRecordDTO]:
        """Relations tying a, b, c to the face minors, and the phi^{12,34} expansion"""
        data = self.polynomials.fourface_data(graph, face_edges)
        g = data.face.graph
        dd = self.polynomials.dual_dodgson
        face = {1, 2, 3, 4}
        failures = SparsePoly.zero(g.nvars)
        for i in range(1, 5):
            for j in range(1, 5):
                if i == j:
                    continue
                k, t = sorted(face - {i, j})
                checks = [
                    (dd(g, (i, j, k), (i, j, t)), data.a),
                    (dd(g, (i, j, k), (i, j, k), (t,)), data.a),
                    (dd(g, (i, j), (i, j), (k, t)), data.b_of(i, k) + data.b_of(i, t)),
                    (dd(g, (i,), (i,), (j, k, t)), data.c_of(i, j) + data.c_of(i, k) + data.c_of(i, t)),
                ]
                for lhs, rhs in checks:
                    if lhs != rhs:
                        failures = lhs - rhs
                        break
                if not failures.is_zero():
                    break
            if not failures.is_zero():
                break
        relations = self._record(
            "fourface_relations", graph, failures, SparsePoly.zero(g.nvars), face=list(face_edges)
        )
        expansion = self._record(
            "fourface_expansion",
            graph,
            dd(g, (1, 2), (3, 4)),
            data.b_of(2, 4) - data.b_of(1, 4),
            face=list(face_edges),
        )
        return [relations, expansion]

    def fourface_square_mod_a(
        self,
        graph: MultiGraph,
        face_edges: Sequence[int],
        samples: int = settings.EVAL_SAMPLES,
        prime: int = settings.EVAL_PRIME,
        seed: int = settings.DEFAULT_SEED,
    ) -> IdentityRecordDTO:
        """(b^i_t)^2 - phi^{ij}_{kt} phi^{ik}_{jt} vanishes on V(a)

        Checked at random points of V(a) mod ``prime`` and in the exact form
        difference = -a * phi^i_{jkt}.
        """
        data = self.polynomials.fourface_data(graph, face_edges)
        g = data.face.graph
        dd = self.polynomials.dual_dodgson
        rng = random.Random(seed)
        points = self._points_on(data.a, samples, prime, rng)
        sampled_failures = 0
        exact = SparsePoly.zero(g.nvars)
        for i in range(1, 5):
            for t in range(1, 5):
                if i == t:
                    continue
                j, k = sorted({1, 2, 3, 4} - {i, t})
                difference = data.b_of(i, t) ** 2 - dd(g, (i, j), (i, j), (k, t)) * dd(g, (i, k), (i, k), (j, t))
                sampled_failures += sum(1 for point in points if difference.evaluate_mod(point, prime))
                residual = difference + data.a * dd(g, (i,), (i,), (j, k, t))
                if exact.is_zero() and not residual.is_zero():
                    exact = residual
        record = self._record(
            "fourface_square_mod_a", graph, exact, SparsePoly.zero(g.nvars),
            face=list(face_edges), points=len(points), prime=prime, sampled_failures=sampled_failures,
        )
        if sampled_failures:
            record.passed = False
        return record

    def _points_on(self, a: SparsePoly, samples: int, prime: int, rng: random.Random) -> List[Dict[int, int]]:
        """Random points of V(a) mod prime, solving a for its first variable"""
        variables = a.variables()
        if not variables:
            if a.constant_term() % prime:
                return []
            return [{v: rng.randrange(prime) for v in range(1, a.nvars + 1)} for _ in range(samples)]
        pivot = variables[0]
        upper, lower = a.linear_split(pivot)
        points = []
        attempts = 0
        while len(points) < samples and attempts < 20 * samples:
            attempts += 1
            point = {v: rng.randrange(prime) for v in range(1, a.nvars + 1)}
            slope = upper.evaluate_mod(point, prime)
            if not slope:
                continue
            point[pivot] = -lower.evaluate_mod(point, prime) * pow(slope, -1, prime) % prime
            points.append(point)
        return points

    def fourface_three_minor(self, graph: MultiGraph, face_edges: Sequence[int]) -> IdentityRecordDTO:
        """phi^{24}_{13} phi^1_{234} - a phi_{1234} = e1 phi^{14,24}_3 phi^{1,2}_{34} + e2 phi^{12,24}_3 phi^{1,4}_{23}

        The signs e1, e2 are searched and reported.
        """
        data = self.polynomials.fourface_data(graph, face_edges)
        g = data.face.graph
        dd = self.polynomials.dual_dodgson
        lhs = dd(g, (2, 4), (2, 4), (1, 3)) * dd(g, (1,), (1,), (2, 3, 4)) - data.a * dd(g, (), (), (1, 2, 3, 4))
        first = dd(g, (1, 4), (2, 4), (3,)) * dd(g, (1,), (2,), (3, 4))
        second = dd(g, (1, 2), (2, 4), (3,)) * dd(g, (1,), (4,), (2, 3))
        signs = self._search_signs(lhs, [first, second])
        if signs is None:
            return self._record("fourface_three_minor", graph, lhs, first - second, face=list(face_edges), signs=None)
        return self._record("fourface_three_minor", graph, lhs, lhs, face=list(face_edges), signs=list(signs))
