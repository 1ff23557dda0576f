"""Oriented multigraph domain entity"""
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from app.domain.exceptions import GraphInputError, PreconditionError


# Sorted tuple of edge ids (the index sets I, J, K, ... of the minors)
EdgeSet = Tuple[int, ...]


def edge_set(ids: Iterable[int]) -> EdgeSet:
    """Normalize an iterable of edge ids into a sorted duplicate-free EdgeSet"""
    ids = list(ids)
    result = tuple(sorted(set(ids)))
    if len(result) != len(ids):
        raise GraphInputError(f"duplicate edge ids in {ids}")
    return result


@dataclass(frozen=True)
class Edge:
    """Oriented edge source -> target with a stable id"""
    id: int
    source: int
    target: int

    @property
    def is_loop(self) -> bool:
        return self.source == self.target

    def other(self, vertex: int) -> int:
        """Endpoint opposite to vertex"""
        return self.target if vertex == self.source else self.source


@dataclass(frozen=True)
class MultiGraph:
    """Oriented multigraph with labeled edges

    Edge ids are stable across deletion and contraction, so minors keep the
    variable universe of the graph they come from (``nvars``). Parallel edges
    and self-loops are allowed. ``degenerate`` is set once a self-loop has been
    contracted; every polynomial of a degenerate graph is zero.
    """
    vertex_count: int
    edges: Tuple[Edge, ...]
    nvars: int = 0
    degenerate: bool = False
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphInputError("vertex count must be nonnegative")
        seen = set()
        for edge in self.edges:
            if edge.id < 1:
                raise GraphInputError(f"edge id {edge.id} must be positive")
            if edge.id in seen:
                raise GraphInputError(f"duplicate edge id {edge.id}")
            seen.add(edge.id)
            for vertex in (edge.source, edge.target):
                if not 0 <= vertex < self.vertex_count:
                    raise GraphInputError(
                        f"edge {edge.id} uses vertex {vertex} outside 0..{self.vertex_count - 1}"
                    )
        if list(self.edges) != sorted(self.edges, key=lambda e: e.id):
            object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.id)))
        largest = max(seen, default=0)
        if self.nvars == 0:
            object.__setattr__(self, "nvars", largest)
        elif self.nvars < largest:
            raise GraphInputError(f"nvars={self.nvars} smaller than largest edge id {largest}")

    @classmethod
    def from_pairs(
        cls, vertex_count: int, pairs: Sequence[Tuple[int, int]], name: str = ""
    ) -> "MultiGraph":
        """Build a graph whose edge ids are 1..N in list order"""
        edges = tuple(Edge(i + 1, u, v) for i, (u, v) in enumerate(pairs))
        return cls(vertex_count=vertex_count, edges=edges, nvars=len(edges), name=name)

    # Basic structure

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def edge_ids(self) -> EdgeSet:
        return tuple(e.id for e in self.edges)

    @cached_property
    def _by_id(self) -> Dict[int, Edge]:
        return {e.id: e for e in self.edges}

    def edge(self, edge_id: int) -> Edge:
        try:
            return self._by_id[edge_id]
        except KeyError:
            raise GraphInputError(f"unknown edge id {edge_id}") from None

    def check_edges(self, ids: Iterable[int]) -> EdgeSet:
        """Validate ids against this graph and return them as an EdgeSet"""
        result = edge_set(ids)
        for edge_id in result:
            self.edge(edge_id)
        return result

    def pairs(self) -> List[Tuple[int, int]]:
        return [(e.source, e.target) for e in self.edges]

    @cached_property
    def incidence(self) -> Tuple[Tuple[Edge, ...], ...]:
        """Incident edges per vertex, by increasing edge id; a loop is listed once"""
        table: List[List[Edge]] = [[] for _ in range(self.vertex_count)]
        for e in self.edges:
            table[e.source].append(e)
            if not e.is_loop:
                table[e.target].append(e)
        return tuple(tuple(row) for row in table)

    def degree(self, vertex: int) -> int:
        return sum(2 if e.is_loop else 1 for e in self.incidence[vertex])

    # Invariants

    @cached_property
    def components(self) -> Tuple[Tuple[int, ...], ...]:
        seen = [False] * self.vertex_count
        result = []
        for root in range(self.vertex_count):
            if seen[root]:
                continue
            seen[root] = True
            block = [root]
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for e in self.incidence[u]:
                    w = e.other(u)
                    if not seen[w]:
                        seen[w] = True
                        block.append(w)
                        queue.append(w)
            result.append(tuple(sorted(block)))
        return tuple(result)

    def is_connected(self) -> bool:
        return len(self.components) == 1

    @property
    def cycle_rank(self) -> int:
        """h = N - |V| + #components, defined for any graph"""
        return self.edge_count - self.vertex_count + len(self.components)

    @property
    def vertex_rank(self) -> int:
        """n = |V| - #components; equals |V| - 1 for connected graphs"""
        return self.vertex_count - len(self.components)

    def loop_number(self) -> int:
        """h_G = N - |V| + 1 of a connected graph"""
        if not self.is_connected():
            raise PreconditionError("loop number needs a connected graph")
        return self.edge_count - self.vertex_count + 1

    def is_log_divergent(self) -> bool:
        return self.is_connected() and self.edge_count == 2 * self.vertex_rank

    def girth(self) -> Union[int, float]:
        """Length of a shortest cycle; math.inf for a forest"""
        best: Union[int, float] = math.inf
        for e in self.edges:
            if e.is_loop:
                return 1
        for root in range(self.vertex_count):
            dist = [-1] * self.vertex_count
            parent_edge = [0] * self.vertex_count
            dist[root] = 0
            queue = deque([root])
            while queue:
                u = queue.popleft()
                if 2 * dist[u] >= best:
                    break
                for e in self.incidence[u]:
                    if e.id == parent_edge[u]:
                        continue
                    w = e.other(u)
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        parent_edge[w] = e.id
                        queue.append(w)
                    else:
                        best = min(best, dist[u] + dist[w] + 1)
        return best

    def has_cycle_at_most(self, k: int) -> bool:
        return self.girth() <= k

    # Minors

    def delete_edges(self, ids: Iterable[int]) -> "MultiGraph":
        """G \\ I: drop the edges, keep vertices and remaining ids"""
        removed = set(self.check_edges(ids))
        if not removed:
            return self
        edges = tuple(e for e in self.edges if e.id not in removed)
        return MultiGraph(self.vertex_count, edges, self.nvars, self.degenerate, self.name)

    def contract_edges(self, ids: Iterable[int]) -> "MultiGraph":
        """G // J: identify endpoints edge by edge in increasing id order

        The larger endpoint is merged into the smaller one and vertex ids above
        it shift down by one. Contracting an edge that has become a self-loop
        marks the result degenerate.
        """
        contracted = self.check_edges(ids)
        if not contracted:
            return self
        current = {e.id: (e.source, e.target) for e in self.edges}
        vertex_count = self.vertex_count
        degenerate = self.degenerate
        for edge_id in contracted:
            u, v = current.pop(edge_id)
            if u == v:
                degenerate = True
                continue
            keep, gone = min(u, v), max(u, v)

            def relabel(x: int) -> int:
                if x == gone:
                    x = keep
                return x - 1 if x > gone else x

            current = {i: (relabel(s), relabel(t)) for i, (s, t) in current.items()}
            vertex_count -= 1
        edges = tuple(Edge(i, s, t) for i, (s, t) in sorted(current.items()))
        return MultiGraph(vertex_count, edges, self.nvars, degenerate, self.name)

    def minor(self, deleted: Iterable[int] = (), contracted: Iterable[int] = ()) -> "MultiGraph":
        """G \\ I // J"""
        deleted, contracted = edge_set(deleted), edge_set(contracted)
        if set(deleted) & set(contracted):
            raise PreconditionError("deleted and contracted edge sets must be disjoint")
        return self.delete_edges(deleted).contract_edges(contracted)

    def with_name(self, name: str) -> "MultiGraph":
        return MultiGraph(self.vertex_count, self.edges, self.nvars, self.degenerate, name)

    def to_text(self) -> str:
        """Serialize in the `graph V N` text format (edge ids become file positions)"""
        lines = [f"graph {self.vertex_count} {self.edge_count}"]
        lines.extend(f"{e.source} {e.target}" for e in self.edges)
        return "\n".join(lines) + "\n"
