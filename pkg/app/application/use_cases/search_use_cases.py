"""Search use cases: isomorphism-free generation of girth >= 5 graphs"""
import logging
from itertools import combinations
from math import isqrt
from typing import Dict, List, Optional, Tuple

import networkx as nx
from networkx.algorithms.graph_hashing import weisfeiler_lehman_graph_hash

from app.application.dto.admissibility_dto import SearchLevelDTO, SearchResultDTO
from app.application.use_cases.graph_use_cases import GraphUseCases
from app.domain.exceptions import ConsistencyError, PreconditionError
from app.infrastructure.config.settings import settings

logger = logging.getLogger(__name__)


def graph6(graph: nx.Graph) -> str:
    return nx.to_graph6_bytes(graph, header=False).decode("ascii").strip()


class _ClassBuckets:
    """Isomorphism classes keyed by Weisfeiler-Lehman hash"""

    def __init__(self):
        self.buckets: Dict[str, List[nx.Graph]] = {}
        self.size = 0

    def add(self, graph: nx.Graph) -> bool:
        key = weisfeiler_lehman_graph_hash(graph, iterations=3)
        bucket = self.buckets.setdefault(key, [])
        if any(nx.is_isomorphic(graph, other) for other in bucket):
            return False
        bucket.append(graph)
        self.size += 1
        return True

    def graphs(self) -> List[nx.Graph]:
        return [g for key in sorted(self.buckets) for g in self.buckets[key]]


class SearchUseCases:
    """Girth >= 5 graphs by vertex augmentation

    A child adds one vertex whose neighbours are pairwise at distance >= 3 in
    the parent, so no 3- or 4-cycle appears, and whose degree is minimal in the
    child. Every girth >= 5 graph arises this way: deleting a vertex of minimum
    degree gives a girth >= 5 parent.
    """

    def __init__(self, graphs: GraphUseCases, max_graphs: int = settings.SEARCH_MAX_GRAPHS):
        self.graphs = graphs
        self.max_graphs = max_graphs

    @staticmethod
    def moore_degree(vertices: int) -> int:
        """Largest minimum degree of a girth >= 5 graph on this many vertices"""
        return isqrt(vertices - 1) if vertices > 0 else 0

    def remaining_edges(self, current: int, final: int) -> int:
        return sum(self.moore_degree(j) for j in range(current + 1, final + 1))

    @staticmethod
    def _children(parent: nx.Graph) -> List[nx.Graph]:
        k = parent.number_of_nodes()
        lengths = dict(nx.all_pairs_shortest_path_length(parent, cutoff=2))
        nodes = sorted(parent.nodes)
        min_degree = min((d for _, d in parent.degree), default=0)
        children = []
        for size in range(0, min_degree + 2):
            for hood in combinations(nodes, size):
                if any(b in lengths[a] for a, b in combinations(hood, 2)):
                    continue
                degrees = [parent.degree(u) + (u in hood) for u in nodes]
                if degrees and size > min(degrees):
                    continue
                child = parent.copy()
                child.add_node(k)
                child.add_edges_from((u, k) for u in hood)
                children.append(child)
        return children

    def _grow(self, v: int, target: Optional[int], cap: Optional[int]) -> Tuple[List[nx.Graph], bool]:
        """Classes on v vertices, pruned to those that can still reach target edges"""
        level = [nx.empty_graph(1)]
        truncated = False
        for k in range(2, v + 1):
            buckets = _ClassBuckets()
            for parent in level:
                for child in self._children(parent):
                    if target is not None and child.number_of_edges() + self.remaining_edges(k, v) < target:
                        continue
                    buckets.add(child)
                if cap is not None and buckets.size > cap:
                    truncated = True
                    break
            level = buckets.graphs()
            logger.debug("🔍 level %d of %d: %d classes", k, v, len(level))
        if target is not None:
            level = [g for g in level if g.number_of_edges() >= target]
        return level, truncated

    def census(self, v: int) -> List[nx.Graph]:
        """Every girth >= 5 graph on v vertices up to isomorphism"""
        if v < 1:
            raise PreconditionError("census needs at least one vertex")
        return self._grow(v, None, None)[0]

    def _verify(self, graph: nx.Graph) -> None:
        if self.graphs.from_networkx(graph).girth() < 5:
            raise ConsistencyError(f"search produced {graph6(graph)} with girth below 5")

    def search_level(self, v: int, exhaustive_limit: int = settings.GIRTH_EXHAUSTIVE_LIMIT) -> SearchLevelDTO:
        if v < 4:
            raise PreconditionError("girth search needs v >= 4")
        bound = 2 * (v - 1)
        exhaustive = v <= exhaustive_limit
        survivors, truncated = self._grow(v, bound + 1, None if exhaustive else self.max_graphs)
        for graph in survivors:
            self._verify(graph)
        witnesses = [graph6(g) for g in survivors if g.number_of_edges() > bound]
        if witnesses:
            logger.info("🎯 %d girth-5 graphs on %d vertices exceed %d edges", len(witnesses), v, bound)
        return SearchLevelDTO(
            v=v,
            classes=len(survivors),
            max_edges=max((g.number_of_edges() for g in survivors), default=0),
            edge_bound=bound,
            witnesses=witnesses,
            exhaustive=exhaustive and not truncated,
        )

    def girth5_search(
        self, vmin: int = 4, vmax: int = settings.GIRTH_EXHAUSTIVE_LIMIT,
        exhaustive_limit: int = settings.GIRTH_EXHAUSTIVE_LIMIT,
    ) -> SearchResultDTO:
        if vmin < 4 or vmax < vmin:
            raise PreconditionError(f"need 4 <= vmin <= vmax, got {vmin}..{vmax}")
        logger.info("🚀 girth-5 search on %d..%d vertices", vmin, vmax)
        levels = [self.search_level(v, exhaustive_limit) for v in range(vmin, vmax + 1)]
        return SearchResultDTO(
            vmin=vmin,
            vmax=vmax,
            levels=levels,
            witnesses=[w for level in levels for w in level.witnesses],
            exhaustive=all(level.exhaustive for level in levels),
        )

    def brute_force_classes(self, v: int) -> List[nx.Graph]:
        """Edge-by-edge backtracking over labelled graphs, deduplicated afterwards"""
        pairs = list(combinations(range(v), 2))
        buckets = _ClassBuckets()
        graph = nx.empty_graph(v)

        def extend(start: int) -> None:
            buckets.add(graph.copy())
            for index in range(start, len(pairs)):
                u, w = pairs[index]
                try:
                    if nx.shortest_path_length(graph, u, w) <= 3:
                        continue
                except nx.NetworkXNoPath:
                    pass
                graph.add_edge(u, w)
                extend(index + 1)
                graph.remove_edge(u, w)

        extend(0)
        return buckets.graphs()
