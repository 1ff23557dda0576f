"""Graph use cases: spanning trees, cycles, face relabeling, random graphs"""
import logging
import random
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from sympy import Matrix

from app.domain.entities.face_data import FaceAdapted
from app.domain.entities.multigraph import Edge, EdgeSet, MultiGraph
from app.domain.exceptions import GraphInputError, PreconditionError

logger = logging.getLogger(__name__)


class GraphUseCases:
    """Combinatorial operations on MultiGraph values"""

    # Spanning trees

    def spanning_trees(self, graph: MultiGraph) -> Iterator[EdgeSet]:
        """Stream the spanning trees of a connected graph

        Contraction-deletion on the smallest remaining edge: trees containing
        it come first, then trees avoiding it. Disconnected or degenerate
        graphs produce nothing.
        """
        if graph.degenerate or graph.vertex_count == 0 or not graph.is_connected():
            return
        yield from self._trees(graph, ())

    def _trees(self, graph: MultiGraph, chosen: EdgeSet) -> Iterator[EdgeSet]:
        loops = [e.id for e in graph.edges if e.is_loop]
        if loops:
            graph = graph.delete_edges(loops)
        if graph.vertex_count == 1:
            yield tuple(sorted(chosen))
            return
        edge = graph.edges[0]
        yield from self._trees(graph.contract_edges([edge.id]), chosen + (edge.id,))
        rest = graph.delete_edges([edge.id])
        if rest.is_connected():
            yield from self._trees(rest, chosen)

    def count_spanning_trees(self, graph: MultiGraph) -> int:
        """Matrix-tree theorem: any cofactor of the Laplacian (loops ignored)"""
        if graph.degenerate or not graph.is_connected():
            return 0
        size = graph.vertex_count
        if size == 1:
            return 1
        laplacian = [[0] * size for _ in range(size)]
        for e in graph.edges:
            if e.is_loop:
                continue
            u, v = e.source, e.target
            laplacian[u][u] += 1
            laplacian[v][v] += 1
            laplacian[u][v] -= 1
            laplacian[v][u] -= 1
        reduced = Matrix([row[1:] for row in laplacian[1:]])
        return int(reduced.det())

    # Cycles

    def find_cycles(self, graph: MultiGraph, length: int) -> List[Tuple[int, ...]]:
        """Simple cycles with ``length`` edges as cyclic edge sequences

        Each cycle is listed once, starting at its smallest edge and running
        from that edge's target back to its source.
        """
        if length < 1:
            raise PreconditionError("cycle length must be positive")
        if length == 1:
            return [(e.id,) for e in graph.edges if e.is_loop]
        found: List[Tuple[int, ...]] = []
        for first in graph.edges:
            if first.is_loop:
                continue
            start, head = first.source, first.target

            def extend(vertex: int, path: List[int], visited: set) -> None:
                if len(path) == length:
                    return
                for e in graph.incidence[vertex]:
                    if e.id <= first.id or e.is_loop or e.id in path:
                        continue
                    w = e.other(vertex)
                    if len(path) == length - 1:
                        if w == start:
                            found.append(tuple(path) + (e.id,))
                    elif w not in visited:
                        visited.add(w)
                        path.append(e.id)
                        extend(w, path, visited)
                        path.pop()
                        visited.discard(w)

            extend(head, [first.id], {start, head})
        return found

    def face_adapted(self, graph: MultiGraph, cycle: Sequence[int]) -> FaceAdapted:
        """Relabel ``cycle`` (in cyclic order) to edges 1..k oriented v_{i-1} -> v_i

        The other edges follow as k+1..N in their original order and keep
        their orientation.
        """
        cycle = list(cycle)
        graph.check_edges(cycle)
        vertices = self._cycle_vertices(graph, cycle)
        if vertices is None:
            raise PreconditionError(f"edges {cycle} do not form a cycle in this order")
        k = len(cycle)
        edges = [Edge(i + 1, vertices[i], vertices[(i + 1) % k]) for i in range(k)]
        labels = {i + 1: cycle[i] for i in range(k)}
        next_id = k + 1
        for e in graph.edges:
            if e.id in labels.values():
                continue
            edges.append(Edge(next_id, e.source, e.target))
            labels[next_id] = e.id
            next_id += 1
        adapted = MultiGraph(graph.vertex_count, tuple(edges), len(edges), graph.degenerate, graph.name)
        return FaceAdapted(graph=adapted, labels=labels, vertices=tuple(vertices))

    def _cycle_vertices(self, graph: MultiGraph, cycle: List[int]) -> Optional[List[int]]:
        first = graph.edge(cycle[0])
        if len(cycle) == 1:
            return [first.source] if first.is_loop else None
        if len(set(cycle)) != len(cycle):
            return None
        for v0 in (first.source, first.target):
            vertices = [v0]
            current = first.other(v0)
            ok = not first.is_loop
            for edge_id in cycle[1:]:
                e = graph.edge(edge_id)
                if not ok or e.is_loop or current not in (e.source, e.target) or current in vertices:
                    ok = False
                    break
                vertices.append(current)
                current = e.other(current)
            if ok and current == v0:
                return vertices
        return None

    def fourface_surgery(self, face: FaceAdapted) -> MultiGraph:
        """G -> G': drop the face edges, identify v0 with v2, add e_s = 1 and e_t = 2

        e_s runs from the merged vertex to v1 and e_t from the merged vertex to
        v3. The result keeps the variable universe of the adapted graph.
        """
        if face.length != 4:
            raise PreconditionError("surgery needs a 4-face")
        graph = face.graph
        v0, v1, v2, v3 = face.vertices
        keep, gone = min(v0, v2), max(v0, v2)

        def relabel(x: int) -> int:
            if x == gone:
                x = keep
            return x - 1 if x > gone else x

        edges = [Edge(1, relabel(keep), relabel(v1)), Edge(2, relabel(keep), relabel(v3))]
        edges.extend(
            Edge(e.id, relabel(e.source), relabel(e.target)) for e in graph.edges if e.id > 4
        )
        return MultiGraph(graph.vertex_count - 1, tuple(edges), graph.nvars, graph.degenerate, graph.name)

    # Generators

    def random_graph(
        self,
        rng: random.Random,
        vertex_count: int,
        edge_count: int,
        loops: bool = False,
        parallel: bool = True,
        name: str = "",
    ) -> MultiGraph:
        """Connected random multigraph: a random tree plus extra random edges"""
        if vertex_count < 1:
            raise GraphInputError("need at least one vertex")
        if edge_count < vertex_count - 1:
            raise GraphInputError(f"{edge_count} edges cannot connect {vertex_count} vertices")
        pairs = [(rng.randrange(v), v) for v in range(1, vertex_count)]
        present = {frozenset(p) for p in pairs}
        attempts = 0
        while len(pairs) < edge_count:
            attempts += 1
            if attempts > 100 * edge_count + 100:
                raise GraphInputError(f"cannot place {edge_count} edges on {vertex_count} vertices")
            u, v = rng.randrange(vertex_count), rng.randrange(vertex_count)
            if u == v and not loops:
                continue
            if not parallel and frozenset((u, v)) in present:
                continue
            present.add(frozenset((u, v)))
            pairs.append((u, v))
        pairs = [(v, u) if rng.random() < 0.5 else (u, v) for u, v in pairs]
        rng.shuffle(pairs)
        return MultiGraph.from_pairs(vertex_count, pairs, name=name)

    def random_graphs(
        self, count: int, max_edges: int, seed: int = 0, loops: bool = False, min_edges: int = 1
    ) -> List[MultiGraph]:
        """Seeded batch of connected multigraphs with min_edges..max_edges edges"""
        rng = random.Random(seed)
        result = []
        for index in range(count):
            edges = rng.randint(min_edges, max_edges)
            vertices = rng.randint(1 if loops else 2, edges + 1)
            result.append(
                self.random_graph(rng, vertices, edges, loops=loops, name=f"random-{seed}-{index}")
            )
        logger.debug("🎲 generated %d random graphs (seed %d)", count, seed)
        return result

    def connected_multigraphs(self, max_edges: int, loops: bool = False) -> List[MultiGraph]:
        """One connected multigraph per isomorphism class, 1..max_edges edges

        Each level adds one edge to the classes of the level below, between
        present vertices or to a new pendant vertex. Dropping a cycle edge (or
        a leaf edge of a tree) goes back down, so every class is reached.
        Duplicates are removed by invariant buckets checked with
        ``networkx.is_isomorphic``.
        """
        if max_edges < 1:
            raise PreconditionError("need at least one edge")
        start = nx.MultiGraph()
        start.add_node(0)
        level = [start]
        found: List[nx.MultiGraph] = []
        for _ in range(max_edges):
            buckets: Dict[Tuple, List[nx.MultiGraph]] = {}
            for parent in level:
                n = parent.number_of_nodes()
                candidates = [(u, n) for u in range(n)]
                candidates += [(u, v) for u in range(n) for v in range(u, n) if loops or u != v]
                for u, v in candidates:
                    child = parent.copy()
                    child.add_edge(u, v)
                    bucket = buckets.setdefault(self._multigraph_key(child), [])
                    if not any(nx.is_isomorphic(child, other) for other in bucket):
                        bucket.append(child)
            level = [g for key in sorted(buckets) for g in buckets[key]]
            found.extend(level)
        logger.debug("🧮 %d connected multigraphs with at most %d edges", len(found), max_edges)
        return [
            MultiGraph.from_pairs(
                g.number_of_nodes(), sorted((min(u, v), max(u, v)) for u, v in g.edges()), name=f"multigraph-{i}"
            )
            for i, g in enumerate(found)
        ]

    @staticmethod
    def _multigraph_key(graph: nx.MultiGraph) -> Tuple:
        multiplicities = sorted(graph.number_of_edges(u, v) for u, v in set(graph.edges()))
        return (
            graph.number_of_edges(),
            graph.number_of_nodes(),
            nx.number_of_selfloops(graph),
            tuple(sorted(d for _, d in graph.degree())),
            tuple(multiplicities),
        )

    # Interop

    def from_networkx(self, simple: nx.Graph, name: str = "") -> MultiGraph:
        """Simple graph with nodes relabeled 0..V-1 in sorted order, edges sorted"""
        order = {node: i for i, node in enumerate(sorted(simple.nodes))}
        pairs = sorted(tuple(sorted((order[u], order[v]))) for u, v in simple.edges)
        return MultiGraph.from_pairs(len(order), pairs, name=name)
