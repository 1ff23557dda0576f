"""Cycle basis use cases: fundamental cycles, cycle minors and block matrices"""
import logging
import threading
from collections import deque
from typing import Dict, Iterable, List, Sequence, Tuple

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from app.domain.entities.cycle_matrix import BlockMatrix, CycleMatrix
from app.domain.entities.multigraph import MultiGraph
from app.domain.exceptions import GraphInputError, PreconditionError

logger = logging.getLogger(__name__)


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination over the integers"""
    m = [list(row) for row in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    previous = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - factor * row_k[j]) // previous
            row_i[k] = 0
        previous = pivot
    return sign * m[n - 1][n - 1]


class CycleBasisUseCases:
    """Canonical cycle basis of a graph and the matrices built on it"""

    def __init__(self, cache_size: int = 512):
        self.cache_size = cache_size
        self._bases: Dict[MultiGraph, CycleMatrix] = {}
        self._lock = threading.Lock()

    def small_cycle_basis(self, graph: MultiGraph) -> CycleMatrix:
        with self._lock:
            found = self._bases.get(graph)
        if found is not None:
            return found
        matrix = self._fundamental_cycles(graph)
        with self._lock:
            if len(self._bases) >= self.cache_size:
                self._bases.clear()
            self._bases[graph] = matrix
        return matrix

    def _fundamental_cycles(self, graph: MultiGraph) -> CycleMatrix:
        """Fundamental cycles of the BFS tree from vertex 0

        Edges are scanned in increasing id order. Each non-tree edge e = u -> v
        gives one row: +1 at e, then the tree path from v back to u with +1
        where the path runs along an edge's orientation and -1 against it.
        """
        if graph.degenerate:
            raise PreconditionError("degenerate graphs have no cycle basis")
        if graph.vertex_count == 0 or not graph.is_connected():
            raise PreconditionError("cycle basis needs a connected graph")
        size = graph.vertex_count
        parent = [-1] * size
        parent_edge = [None] * size
        depth = [0] * size
        seen = [False] * size
        seen[0] = True
        tree = set()
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for e in graph.incidence[u]:
                if e.is_loop:
                    continue
                w = e.other(u)
                if not seen[w]:
                    seen[w] = True
                    parent[w] = u
                    parent_edge[w] = e
                    depth[w] = depth[u] + 1
                    tree.add(e.id)
                    queue.append(w)

        column = {e.id: i for i, e in enumerate(graph.edges)}
        rows: List[Tuple[int, ...]] = []
        for e in graph.edges:
            if e.id in tree:
                continue
            row = [0] * graph.edge_count
            row[column[e.id]] = 1
            if not e.is_loop:
                x, y = e.target, e.source
                descent = []
                while depth[x] > depth[y]:
                    step = parent_edge[x]
                    row[column[step.id]] = 1 if step.source == x else -1
                    x = parent[x]
                while depth[y] > depth[x]:
                    descent.append(y)
                    y = parent[y]
                while x != y:
                    step = parent_edge[x]
                    row[column[step.id]] = 1 if step.source == x else -1
                    x = parent[x]
                    descent.append(y)
                    y = parent[y]
                for child in descent:
                    step = parent_edge[child]
                    row[column[step.id]] = 1 if step.target == child else -1
            rows.append(tuple(row))
        matrix = CycleMatrix(edge_ids=graph.edge_ids, rows=tuple(rows), tree=tuple(sorted(tree)))
        logger.debug("cycle basis: h=%d N=%d tree=%s", matrix.h, matrix.n_cols, matrix.tree)
        return matrix

    def cycle_minor_det(self, matrix: CycleMatrix, removed: Iterable[int]) -> int:
        """det of the cycle matrix with the columns of ``removed`` deleted"""
        removed = tuple(removed)
        if len(set(removed)) != len(removed):
            raise GraphInputError(f"duplicate edge ids in {list(removed)}")
        if len(removed) != matrix.n_cols - matrix.h:
            raise GraphInputError(
                f"need {matrix.n_cols - matrix.h} columns removed, got {len(removed)}"
            )
        return bareiss_det(matrix.without_columns(removed))

    def build_L(self, graph: MultiGraph, matrix: CycleMatrix) -> BlockMatrix:
        """[[diag(a), F^t], [-F, 0]] with edge rows/columns first, in id order"""
        if matrix.edge_ids != graph.edge_ids:
            raise GraphInputError("cycle matrix was not built from this graph")
        return self._block(graph, matrix.rows)

    def build_kirchhoff(self, graph: MultiGraph) -> BlockMatrix:
        """Same layout with the reduced incidence matrix (vertex 0 dropped) in place of F

        Its minors are the Kirchhoff-side Dodgson polynomials.
        """
        if graph.degenerate or graph.vertex_count == 0 or not graph.is_connected():
            raise PreconditionError("Kirchhoff matrix needs a connected graph")
        rows = []
        for vertex in range(1, graph.vertex_count):
            row = []
            for e in graph.edges:
                if e.is_loop:
                    row.append(0)
                elif e.source == vertex:
                    row.append(1)
                elif e.target == vertex:
                    row.append(-1)
                else:
                    row.append(0)
            rows.append(tuple(row))
        return self._block(graph, tuple(rows))

    def _block(self, graph: MultiGraph, rows: Tuple[Tuple[int, ...], ...]) -> BlockMatrix:
        n_edges = graph.edge_count
        size = n_edges + len(rows)
        constants = [[0] * size for _ in range(size)]
        variables = [[0] * size for _ in range(size)]
        for i, e in enumerate(graph.edges):
            variables[i][i] = e.id
        for r, row in enumerate(rows):
            for c, value in enumerate(row):
                constants[c][n_edges + r] = value
                constants[n_edges + r][c] = -value
        labels = graph.edge_ids + (None,) * len(rows)
        return BlockMatrix(
            row_edges=labels,
            col_edges=labels,
            constants=tuple(tuple(row) for row in constants),
            variables=tuple(tuple(row) for row in variables),
            nvars=graph.nvars,
        )

    def invariant_factors(self, matrix: CycleMatrix) -> List[int]:
        """Diagonal of the Smith normal form over Z"""
        if matrix.h == 0:
            return []
        form = smith_normal_form(Matrix(matrix.rows), domain=ZZ)
        return [abs(int(form[i, i])) for i in range(min(form.shape))]

    def is_unimodular_basis(self, matrix: CycleMatrix) -> bool:
        """All invariant factors equal 1, so the rows span a saturated lattice"""
        return all(x == 1 for x in self.invariant_factors(matrix))

