"""Polynomial use cases: graph polynomials, Dodgson minors, face coefficients"""
import logging
import multiprocessing as mp
import threading
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from app.application.use_cases.cycle_basis_use_cases import CycleBasisUseCases, bareiss_det
from app.application.use_cases.graph_use_cases import GraphUseCases
from app.domain.entities.cycle_matrix import BlockMatrix
from app.domain.entities.face_data import FaceAdapted, FourFaceData, TriangleData
from app.domain.entities.multigraph import EdgeSet, MultiGraph
from app.domain.entities.sparse_poly import Monomial, SparsePoly, resultant
from app.domain.exceptions import PolynomialError, PreconditionError
from app.infrastructure.config.settings import settings

logger = logging.getLogger(__name__)

BACKENDS = ("determinant", "tree-sum")

_CACHE_LIMIT = 8192

Grid = List[List[int]]
Cells = List[Tuple[int, int]]


def _grid_det(base: Grid, cells: Cells, mask: int) -> int:
    grid = [row[:] for row in base]
    for bit, (r, c) in enumerate(cells):
        if mask >> bit & 1:
            grid[r][c] = 1
    return bareiss_det(grid)


def _grid_chunk(task: Tuple[Grid, Cells, int, int]) -> List[int]:
    base, cells, start, stop = task
    return [_grid_det(base, cells, mask) for mask in range(start, stop)]


def grid_values(
    base: Grid, cells: Cells, workers: int = settings.WORKERS, parallel_from: int = settings.PARALLEL_MIN_TASKS
) -> List[int]:
    """Determinant at every 0/1 point of the cells, indexed by bit mask

    With several workers the masks are cut into contiguous chunks for a
    process pool; chunks come back in mask order.
    """
    points = 1 << len(cells)
    if workers <= 1 or points < parallel_from:
        return _grid_chunk((base, cells, 0, points))
    step = -(-points // (4 * workers))
    tasks = [(base, cells, start, min(start + step, points)) for start in range(0, points, step)]
    logger.debug("⚙️ %d grid points in %d chunks on %d workers", points, len(tasks), workers)
    with mp.Pool(processes=workers) as pool:
        chunks = pool.map(_grid_chunk, tasks)
    return [value for chunk in chunks for value in chunk]


def multilinear_det(
    matrix: BlockMatrix,
    max_vars: int = settings.MULTILINEAR_MAX_VARS,
    workers: int = settings.WORKERS,
    parallel_from: int = settings.PARALLEL_MIN_TASKS,
) -> SparsePoly:
    """Symbolic determinant of a matrix whose variables each occur once

    The determinant is then multilinear, so its values on the 0/1 grid of the
    variables determine it: coefficient of prod_{e in S} a_e is the
    inclusion-exclusion sum over subsets of S.
    """
    nvars = matrix.nvars
    if matrix.size == 0:
        return SparsePoly.constant(1, nvars)
    positions: Dict[int, Tuple[int, int]] = {}
    for r, row in enumerate(matrix.variables):
        for c, var in enumerate(row):
            if not var:
                continue
            if var in positions:
                raise PolynomialError(f"variable a{var} occurs twice; determinant is not multilinear")
            positions[var] = (r, c)
    variables = sorted(positions)
    if len(variables) > max_vars:
        raise PolynomialError(
            f"{len(variables)} variables exceed the 0/1-grid limit of {max_vars}"
        )
    base = [list(row) for row in matrix.constants]
    values = grid_values(base, [positions[var] for var in variables], workers, parallel_from)
    for bit in range(len(variables)):
        step = 1 << bit
        for mask in range(1 << len(variables)):
            if mask & step:
                values[mask] -= values[mask ^ step]
    terms: Dict[Monomial, int] = {}
    for mask, coeff in enumerate(values):
        if not coeff:
            continue
        exps = [0] * nvars
        for bit, var in enumerate(variables):
            if mask >> bit & 1:
                exps[var - 1] = 1
        terms[tuple(exps)] = coeff
    return SparsePoly.from_dict(terms, nvars)


def sign_power(exponent: int) -> int:
    """(-1)^exponent for any integer exponent"""
    return -1 if exponent % 2 else 1


class PolynomialUseCases:
    """Dual graph polynomials and their Dodgson minors"""

    def __init__(
        self,
        cycle_basis: CycleBasisUseCases,
        graphs: GraphUseCases,
        max_vars: int = settings.MULTILINEAR_MAX_VARS,
        workers: int = settings.WORKERS,
    ):
        self.cycle_basis = cycle_basis
        self.graphs = graphs
        self.max_vars = max_vars
        self.workers = workers
        self._minors: Dict[Tuple[str, MultiGraph, EdgeSet, EdgeSet, EdgeSet], SparsePoly] = {}
        self._lock = threading.Lock()

    def _cached(self, key: Tuple[str, MultiGraph, EdgeSet, EdgeSet, EdgeSet], build: Callable[[], SparsePoly]) -> SparsePoly:
        with self._lock:
            found = self._minors.get(key)
        if found is not None:
            return found
        value = build()
        with self._lock:
            if len(self._minors) >= _CACHE_LIMIT:
                self._minors.clear()
            self._minors[key] = value
        return value

    # Whole-graph polynomials

    def phi(self, graph: MultiGraph, backend: str = "determinant") -> SparsePoly:
        """phi_G = sum over spanning trees of the product of tree edges"""
        if backend not in BACKENDS:
            raise PreconditionError(f"unknown backend '{backend}', expected one of {BACKENDS}")
        if backend == "tree-sum":
            terms = {}
            for tree in self.graphs.spanning_trees(graph):
                terms[self._exponents(tree, graph.nvars)] = 1
            return SparsePoly.from_dict(terms, graph.nvars)
        return self.dual_dodgson(graph, (), (), ())

    def psi(self, graph: MultiGraph, backend: str = "tree-sum") -> SparsePoly:
        """Psi_G = sum over spanning trees of the product of the other edges"""
        if backend not in BACKENDS:
            raise PreconditionError(f"unknown backend '{backend}', expected one of {BACKENDS}")
        if backend == "determinant":
            return self.psi_dodgson(graph, (), (), ())
        ids = set(graph.edge_ids)
        terms = {}
        for tree in self.graphs.spanning_trees(graph):
            terms[self._exponents(ids.difference(tree), graph.nvars)] = 1
        return SparsePoly.from_dict(terms, graph.nvars)

    @staticmethod
    def _exponents(ids: Iterable[int], nvars: int) -> Monomial:
        exps = [0] * nvars
        for e in ids:
            exps[e - 1] = 1
        return tuple(exps)

    def det_multilinear(self, matrix: BlockMatrix) -> SparsePoly:
        return multilinear_det(matrix, self.max_vars, self.workers)

    def block_matrix(self, graph: MultiGraph) -> BlockMatrix:
        return self.cycle_basis.build_L(graph, self.cycle_basis.small_cycle_basis(graph))

    # Dodgson minors

    def dual_dodgson(
        self, graph: MultiGraph, rows: Iterable[int], cols: Iterable[int], zeroed: Iterable[int] = ()
    ) -> SparsePoly:
        """phi^{I,J}_{G,K}: det L_G without rows I and columns J, a_K = 0"""
        rows, cols, zeroed = graph.check_edges(rows), graph.check_edges(cols), graph.check_edges(zeroed)
        if len(rows) != len(cols):
            raise PreconditionError(f"|I|={len(rows)} and |J|={len(cols)} differ")
        return self._cached(("phi", graph, rows, cols, zeroed), lambda: self._dual_dodgson(graph, rows, cols, zeroed))

    def _dual_dodgson(self, graph: MultiGraph, rows: EdgeSet, cols: EdgeSet, zeroed: EdgeSet) -> SparsePoly:
        if graph.degenerate or graph.vertex_count == 0 or not graph.is_connected():
            return SparsePoly.zero(graph.nvars)
        matrix = self.block_matrix(graph).minor(rows, cols).with_zero(zeroed)
        return self.det_multilinear(matrix)

    def psi_dodgson(
        self, graph: MultiGraph, rows: Iterable[int], cols: Iterable[int], zeroed: Iterable[int] = ()
    ) -> SparsePoly:
        """Psi^{I,J}_{G,K} from the Kirchhoff block matrix"""
        rows, cols, zeroed = graph.check_edges(rows), graph.check_edges(cols), graph.check_edges(zeroed)
        if len(rows) != len(cols):
            raise PreconditionError(f"|I|={len(rows)} and |J|={len(cols)} differ")
        return self._cached(("psi", graph, rows, cols, zeroed), lambda: self._psi_dodgson(graph, rows, cols, zeroed))

    def _psi_dodgson(self, graph: MultiGraph, rows: EdgeSet, cols: EdgeSet, zeroed: EdgeSet) -> SparsePoly:
        if graph.degenerate or graph.vertex_count == 0 or not graph.is_connected():
            return SparsePoly.zero(graph.nvars)
        matrix = self.cycle_basis.build_kirchhoff(graph).minor(rows, cols).with_zero(zeroed)
        return self.det_multilinear(matrix)

    def minor_transfer(
        self,
        graph: MultiGraph,
        rows: Iterable[int],
        cols: Iterable[int],
        zeroed: Iterable[int],
        contracted: Iterable[int],
        deleted: Iterable[int],
    ) -> SparsePoly:
        """phi^{I,J}_{G \\ B // A, K}; equals phi^{I+A,J+A}_{G,K+B} up to sign"""
        rows, cols, zeroed = graph.check_edges(rows), graph.check_edges(cols), graph.check_edges(zeroed)
        contracted, deleted = graph.check_edges(contracted), graph.check_edges(deleted)
        used = set(rows) | set(cols) | set(zeroed)
        if used & set(contracted) or used & set(deleted) or set(contracted) & set(deleted):
            raise PreconditionError("A and B must be disjoint from each other and from I, J, K")
        minor = graph.minor(deleted=deleted, contracted=contracted)
        return self.dual_dodgson(minor, rows, cols, zeroed)

    def cremona(self, poly: SparsePoly, variables: Optional[Sequence[int]] = None) -> SparsePoly:
        return poly.cremona(variables)

    def resultant(self, f: SparsePoly, g: SparsePoly, var: int) -> SparsePoly:
        return resultant(f, g, var)

    # Face coefficients

    def triangle_data(self, graph: MultiGraph, triangle: Sequence[int]) -> TriangleData:
        """g0..g3, g123 of a triangle, on the face-adapted relabeling"""
        if len(triangle) != 3:
            raise PreconditionError("a triangle has three edges")
        face = self.graphs.face_adapted(graph, triangle)
        g = face.graph
        dd = self.dual_dodgson
        return TriangleData(
            face=face,
            g0=dd(g, (1, 2), (1, 2), (3,)),
            g1=dd(g, (2,), (3,), (1,)),
            g2=-dd(g, (1,), (3,), (2,)),
            g3=dd(g, (1,), (2,), (3,)),
            g123=dd(g, (), (), (1, 2, 3)),
        )

    def fourface_data(self, graph: MultiGraph, face_edges: Sequence[int]) -> FourFaceData:
        """a, b^i_j and c^{i,j} of a 4-face given in cyclic order (e1 opposite e3)"""
        if len(face_edges) != 4:
            raise PreconditionError("a 4-face has four edges")
        face = self.graphs.face_adapted(graph, face_edges)
        return FourFaceData(
            face=face,
            a=self.dual_dodgson(face.graph, (1, 2, 3), (1, 2, 3), (4,)),
            b={(i, j): self.b_coefficient(face, i, j) for i in range(1, 5) for j in range(1, 5) if i != j},
            c={(i, j): self.c_coefficient(face, i, j) for i in range(1, 5) for j in range(1, 5) if i != j},
        )

    def b_coefficient(self, face: FaceAdapted, i: int, j: int) -> SparsePoly:
        """b^i_j = (-1)^r phi^{ki,it}_j with {k,t} the other two face edges

        r = k - t when i lies strictly between k and t, else k - t - 1.
        """
        k, t = sorted({1, 2, 3, 4} - {i, j})
        r = k - t if (k - i) * (t - i) < 0 else k - t - 1
        return self.dual_dodgson(face.graph, (k, i), (i, t), (j,)).scale(sign_power(r))

    def c_coefficient(self, face: FaceAdapted, i: int, j: int) -> SparsePoly:
        """c^{i,j} = (-1)^{i-j-1} phi^{i,j} with the other two face variables at 0"""
        rest = tuple(sorted({1, 2, 3, 4} - {i, j}))
        return self.dual_dodgson(face.graph, (i,), (j,), rest).scale(sign_power(i - j - 1))
