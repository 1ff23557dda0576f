"""Triangle and 4-face coefficient data"""
from dataclasses import dataclass
from typing import Dict, Tuple

from app.domain.entities.multigraph import MultiGraph
from app.domain.entities.sparse_poly import SparsePoly


@dataclass(frozen=True)
class FaceAdapted:
    """A graph relabeled so that a chosen cycle is edges 1..k, coherently oriented

    ``labels[new_id]`` is the edge id in the graph the cycle was taken from,
    ``vertices`` the cycle vertices v0..v_{k-1} with edge i running v_{i-1} -> v_i.
    """
    graph: MultiGraph
    labels: Dict[int, int]
    vertices: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class TriangleData:
    """Coefficients of phi in the three triangle variables"""
    face: FaceAdapted
    g0: SparsePoly
    g1: SparsePoly
    g2: SparsePoly
    g3: SparsePoly
    g123: SparsePoly

    def reconstruct(self) -> SparsePoly:
        """g0(a1a2+a2a3+a1a3) + (g2+g3)a1 + (g1+g3)a2 + (g1+g2)a3 + g123"""
        nvars = self.g0.nvars

        def a(*ids: int) -> SparsePoly:
            return SparsePoly.monomial(ids, nvars)

        return (
            self.g0 * (a(1, 2) + a(2, 3) + a(1, 3))
            + (self.g2 + self.g3) * a(1)
            + (self.g1 + self.g3) * a(2)
            + (self.g1 + self.g2) * a(3)
            + self.g123
        )

    def as_list(self) -> Tuple[SparsePoly, ...]:
        return (self.g0, self.g1, self.g2, self.g3, self.g123)


@dataclass(frozen=True)
class FourFaceData:
    """a, b^i_j and c^{i,j} of a coherently oriented 4-face on edges 1..4"""
    face: FaceAdapted
    a: SparsePoly
    b: Dict[Tuple[int, int], SparsePoly]
    c: Dict[Tuple[int, int], SparsePoly]

    def b_of(self, i: int, j: int) -> SparsePoly:
        return self.b[(i, j)]

    def c_of(self, i: int, j: int) -> SparsePoly:
        return self.c[(i, j)]
