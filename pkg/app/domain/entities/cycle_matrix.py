"""Cycle matrices and the symbolic block matrices built from them"""
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from app.domain.entities.multigraph import EdgeSet
from app.domain.exceptions import GraphInputError, PolynomialError


@dataclass(frozen=True)
class CycleMatrix:
    """h x N signed cycle-edge matrix; columns follow ``edge_ids``"""
    edge_ids: EdgeSet
    rows: Tuple[Tuple[int, ...], ...]
    tree: EdgeSet

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.edge_ids):
                raise GraphInputError("cycle row length does not match the edge count")
            if any(x not in (-1, 0, 1) for x in row):
                raise GraphInputError("cycle rows must have entries in {-1, 0, 1}")

    @property
    def h(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.edge_ids)

    def column_index(self, edge_id: int) -> int:
        try:
            return self.edge_ids.index(edge_id)
        except ValueError:
            raise GraphInputError(f"edge {edge_id} is not a column of this cycle matrix") from None

    def without_columns(self, removed: Iterable[int]) -> List[List[int]]:
        """Integer grid with the listed edge columns deleted"""
        gone = {self.column_index(e) for e in removed}
        return [[x for j, x in enumerate(row) if j not in gone] for row in self.rows]


@dataclass(frozen=True)
class BlockMatrix:
    """Square matrix whose entries are integer constants or single variables

    ``constants[r][c]`` holds the integer part, ``variables[r][c]`` the id of
    the variable sitting there (0 for none). Rows and columns carry the edge
    they belong to (``None`` for the auxiliary cycle/vertex block), so minors
    can be taken by edge id.
    """
    row_edges: Tuple[Optional[int], ...]
    col_edges: Tuple[Optional[int], ...]
    constants: Tuple[Tuple[int, ...], ...]
    variables: Tuple[Tuple[int, ...], ...]
    nvars: int

    def __post_init__(self):
        size = len(self.row_edges)
        if len(self.col_edges) != size or len(self.constants) != size or len(self.variables) != size:
            raise PolynomialError("block matrix must be square")
        for r in range(size):
            if len(self.constants[r]) != size or len(self.variables[r]) != size:
                raise PolynomialError("block matrix rows must have full length")
            for c in range(size):
                const, var = self.constants[r][c], self.variables[r][c]
                if const not in (-1, 0, 1):
                    raise PolynomialError(f"entry ({r}, {c}) = {const} outside {{-1, 0, 1}}")
                if var and const:
                    raise PolynomialError(f"entry ({r}, {c}) mixes a constant and a variable")
                if var < 0 or var > self.nvars:
                    raise PolynomialError(f"entry ({r}, {c}) uses unknown variable a{var}")

    @property
    def size(self) -> int:
        return len(self.row_edges)

    def _positions(self, labels: Tuple[Optional[int], ...], edges: Iterable[int], kind: str) -> set:
        positions = set()
        for e in edges:
            try:
                positions.add(labels.index(e))
            except ValueError:
                raise GraphInputError(f"edge {e} has no {kind} in this matrix") from None
        return positions

    def minor(self, rows: Iterable[int] = (), cols: Iterable[int] = ()) -> "BlockMatrix":
        """Delete the rows and columns belonging to the given edges, keeping natural order"""
        rgone = self._positions(self.row_edges, rows, "row")
        cgone = self._positions(self.col_edges, cols, "column")
        if len(rgone) != len(cgone):
            raise PolynomialError("a minor needs as many rows as columns removed")
        rkeep = [r for r in range(self.size) if r not in rgone]
        ckeep = [c for c in range(self.size) if c not in cgone]
        return BlockMatrix(
            row_edges=tuple(self.row_edges[r] for r in rkeep),
            col_edges=tuple(self.col_edges[c] for c in ckeep),
            constants=tuple(tuple(self.constants[r][c] for c in ckeep) for r in rkeep),
            variables=tuple(tuple(self.variables[r][c] for c in ckeep) for r in rkeep),
            nvars=self.nvars,
        )

    def with_zero(self, variables: Iterable[int]) -> "BlockMatrix":
        """Set the listed variables to 0"""
        zeroed = set(variables)
        if not zeroed:
            return self
        return BlockMatrix(
            row_edges=self.row_edges,
            col_edges=self.col_edges,
            constants=self.constants,
            variables=tuple(tuple(0 if v in zeroed else v for v in row) for row in self.variables),
            nvars=self.nvars,
        )

    def negate_rows(self, count: int) -> "BlockMatrix":
        """Negate the last ``count`` rows"""
        cut = self.size - count
        if any(v for row in self.variables[cut:] for v in row):
            raise PolynomialError("only constant rows can be negated")
        constants = tuple(
            row if r < cut else tuple(-x for x in row) for r, row in enumerate(self.constants)
        )
        return BlockMatrix(self.row_edges, self.col_edges, constants, self.variables, self.nvars)

    def is_symmetric(self) -> bool:
        n = self.size
        return all(
            self.constants[r][c] == self.constants[c][r] and self.variables[r][c] == self.variables[c][r]
            for r in range(n)
            for c in range(r + 1, n)
        )

