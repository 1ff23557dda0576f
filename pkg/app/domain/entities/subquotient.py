"""Sub-quotient specification entity"""
from dataclasses import dataclass

from app.domain.entities.multigraph import EdgeSet, MultiGraph
from app.domain.exceptions import PreconditionError


@dataclass(frozen=True, order=True)
class SubquotientSpec:
    """G \\ I // J with I deleted and J contracted"""
    deleted: EdgeSet
    contracted: EdgeSet

    def __post_init__(self):
        if set(self.deleted) & set(self.contracted):
            raise PreconditionError("deleted and contracted sets must be disjoint")

    def in_window(self, vertex_rank: int) -> bool:
        """|J| > |I| >= 0 and |I| <= n - 3"""
        return len(self.contracted) > len(self.deleted) and len(self.deleted) <= vertex_rank - 3

    def apply(self, graph: MultiGraph) -> MultiGraph:
        return graph.minor(deleted=self.deleted, contracted=self.contracted)

    def label(self) -> str:
        deleted = ",".join(map(str, self.deleted))
        contracted = ",".join(map(str, self.contracted))
        return f"I={{{deleted}}} J={{{contracted}}}"
