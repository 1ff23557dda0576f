"""Point-count expansions, congruences and vanishing statements"""
import pytest

from app.domain.entities.multigraph import MultiGraph
from app.domain.entities.sparse_poly import SparsePoly
from app.domain.exceptions import PreconditionError
from app.infrastructure.repositories import graph_catalog as catalog


def assert_all_passed(reports) -> None:
    for report in reports:
        assert report.passed, f"{report.statement} on {report.graph} at q={report.q}: {report.residues}"


@pytest.mark.parametrize("q", [2, 3])
def test_edge_expansions_are_exact(congruences, random_batch, q) -> None:
    for graph in random_batch:
        assert_all_passed([congruences.single_edge_expansion(graph, q)])
        if graph.edge_count >= 2:
            assert_all_passed([congruences.two_edge_expansion(graph, q)])


def test_two_edge_expansion_on_triangle(congruences, c3) -> None:
    report = congruences.two_edge_expansion(c3, 2)
    assert report.counts["Z"] == 4
    assert report.passed


@pytest.mark.parametrize("q", [2, 3, 4])
def test_dual_divisibility(congruences, k4, k4e, banana3, q) -> None:
    assert_all_passed([congruences.dual_divisibility(g, q) for g in (k4, k4e, banana3)])


def test_dual_divisibility_needs_two_loops(congruences, c3) -> None:
    with pytest.raises(PreconditionError):
        congruences.dual_divisibility(c3, 2)


def test_chevalley_warning(congruences, k4) -> None:
    x = SparsePoly.variable
    report = congruences.cw_check([x(1, 3) * x(2, 3) + x(3, 3) ** 2], 3, 3)
    assert report.passed and report.graph == ""
    with pytest.raises(PreconditionError):
        congruences.cw_check([x(1, 2) * x(2, 2)], 2, 3)


@pytest.mark.parametrize("q", [2, 3])
class TestTriangles:
    def test_k4(self, congruences, graphs, k4, q) -> None:
        triangle = graphs.find_cycles(k4, 3)[0]
        reports = congruences.verify_triangle(k4, triangle, q)
        assert [r.statement for r in reports] == ["triangle_congruence", "triangle_stratification"]
        assert not any(r.skipped for r in reports)
        assert_all_passed(reports)

    def test_vanishing_above_the_log_divergent_edge_count(self, congruences, graphs, k4e, q) -> None:
        triangle = graphs.find_cycles(k4e, 3)[0]
        assert_all_passed([congruences.verify_triangle_vanishing(k4e, triangle, q)])

    def test_vanishing_with_a_double_edge(self, congruences, banana3, q) -> None:
        assert_all_passed([congruences.triangle_vanishing(banana3, (1, 2), q)])

    def test_vanishing_preconditions(self, congruences, graphs, k4, q) -> None:
        triangle = graphs.find_cycles(k4, 3)[0]
        with pytest.raises(PreconditionError):
            congruences.triangle_vanishing(k4, triangle, q)
        with pytest.raises(PreconditionError):
            congruences.triangle_vanishing(k4, graphs.find_cycles(k4, 4)[0], q)


@pytest.mark.parametrize("q", [2, 3])
class TestFourFaces:
    def test_k4_skips_the_vanishing_statements(self, congruences, graphs, k4, q) -> None:
        face = graphs.find_cycles(k4, 4)[0]
        reports = {r.statement: r for r in congruences.verify_fourface(k4, face, q)}
        assert reports["fourface_minor_vanishing"].skipped
        assert reports["fourface_vanishing"].skipped
        assert not reports["fourface_c2_formula"].skipped
        assert_all_passed(reports.values())

    def test_k4_plus_edge(self, congruences, graphs, k4e, q) -> None:
        face = graphs.find_cycles(k4e, 4)[0]
        reports = {r.statement: r for r in congruences.verify_fourface(k4e, face, q)}
        assert not reports["fourface_vanishing"].skipped
        assert reports["fourface_c2_formula"].skipped
        assert_all_passed(reports.values())

    def test_wheel(self, congruences, graphs, wheel4, q) -> None:
        face = graphs.find_cycles(wheel4, 4)[0]
        assert_all_passed(congruences.verify_fourface(wheel4, face, q))

    def test_c2_from_the_face(self, congruences, graphs, k4, q) -> None:
        face = graphs.find_cycles(k4, 4)[0]
        assert congruences.c2_dual_fourface(k4, face, q) == q - 1


@pytest.mark.parametrize("q", [2, 3])
def test_c2_coincidence(congruences, k4, wheel4, q) -> None:
    for graph in (k4, wheel4):
        report = congruences.c2_coincidence(graph, q)
        assert report.passed
        assert report.counts["c2_dual"] == q - 1


def test_skipped_report_is_not_a_failure(congruences, c3) -> None:
    report = congruences.skipped("c2_coincidence", c3, 2, "not log-divergent")
    assert report.skipped and report.passed
    assert report.model_dump(by_alias=True)["pass"] is True


@pytest.mark.slow
def test_octahedron_fourface_vanishing(congruences, graphs) -> None:
    octahedron = catalog.octahedron()
    face = graphs.find_cycles(octahedron, 4)[0]
    assert_all_passed([congruences.fourface_vanishing(octahedron, face, 2)])


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_house_breaks_the_five_term_congruence(congruences, q) -> None:
    # h = 2: the triangle left after deleting e4 and contracting e1, e2 has [a, phi^12_34] = 1
    report = congruences.fourface_five_term(catalog.house(), (1, 2, 3, 4), q)
    assert not report.passed and not report.skipped
    assert report.counts == {
        "lhs": 2 * q * q - q,
        "phi^{12,34}": q * q,
        "a,phi^{12,34}": q,
        "a,b^1_3": 1,
        "a,b^1_4": q,
        "G'": q,
    }
    assert report.residues == {"lhs - rhs mod q": q - 1}


def doubled(graph: MultiGraph, *pairs) -> MultiGraph:
    name = graph.name + "".join(f"+{u}{v}" for u, v in pairs)
    return MultiGraph.from_pairs(graph.vertex_count, graph.pairs() + list(pairs), name=name)


def without(graph: MultiGraph, *pairs) -> MultiGraph:
    kept = [p for p in graph.pairs() if p not in pairs]
    return MultiGraph.from_pairs(graph.vertex_count, kept, name=graph.name + "".join(f"-{u}{v}" for u, v in pairs))


K4 = catalog.complete(4).with_name("k4")
K5 = catalog.complete(5)
K33 = catalog.complete_bipartite(3, 3)
WHEEL4 = catalog.wheel(4)
PRISM = catalog.prism()

FOURFACE_GRAPHS = [
    K4,
    catalog.k4_plus_edge(),
    doubled(K4, (0, 1), (2, 3)),
    doubled(K4, (0, 1), (0, 1)),
    doubled(K4, (0, 1), (0, 2)),
    doubled(K4, (0, 1), (2, 3), (0, 2)),
    WHEEL4,
    doubled(WHEEL4, (0, 1)),
    doubled(WHEEL4, (1, 2)),
    doubled(WHEEL4, (0, 1), (2, 3)),
    catalog.wheel(5),
    K33,
    without(K33, (0, 3)),
    doubled(K33, (0, 3)),
    PRISM,
    doubled(PRISM, (0, 3)),
    doubled(PRISM, (0, 1)),
    K5,
    without(K5, (0, 1)),
    without(K5, (0, 1), (2, 3)),
    without(K5, (0, 1), (0, 2)),
]


def test_fourface_set_is_in_range() -> None:
    assert len(FOURFACE_GRAPHS) >= 20
    for graph in FOURFACE_GRAPHS:
        assert graph.is_connected() and graph.loop_number() >= 3
        assert graph.edge_count <= 13


@pytest.mark.slow
@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("graph", FOURFACE_GRAPHS, ids=lambda g: g.name)
def test_fourface_statements_on_curated_graphs(congruences, graphs, graph, q) -> None:
    face = graphs.find_cycles(graph, 4)[0]
    reports = congruences.verify_fourface(graph, face, q)
    assert not any(r.skipped for r in reports if r.statement == "fourface_five_term")
    assert_all_passed(reports)
