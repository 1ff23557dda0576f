"""Graph repository implementation (text files plus built-in catalog)"""
import logging
from pathlib import Path
from typing import List, Union

from app.domain.entities.multigraph import MultiGraph
from app.domain.exceptions import GraphInputError
from app.domain.repositories.graph_repository import GraphRepository
from app.infrastructure.repositories.graph_catalog import CATALOG

logger = logging.getLogger(__name__)


class GraphRepositoryImpl(GraphRepository):
    """Resolves built-in names first, then paths in the `graph V N` format"""

    def get(self, reference: str) -> MultiGraph:
        """Resolve a built-in graph name or a graph file path"""
        key = reference.strip().lower()
        if key in CATALOG:
            graph = CATALOG[key]()
            logger.debug("📥 built-in graph %s: V=%d N=%d", key, graph.vertex_count, graph.edge_count)
            return graph.with_name(key)
        path = Path(reference)
        if not path.is_file():
            raise GraphInputError(
                f"'{reference}' is neither a graph file nor one of: {', '.join(self.builtin_names())}"
            )
        graph = self.parse(path.read_text(encoding="utf-8"), name=path.stem)
        logger.info("📥 loaded %s: V=%d N=%d", path, graph.vertex_count, graph.edge_count)
        return graph

    def parse(self, text: str, name: str = "") -> MultiGraph:
        """Parse the text format

        Blank lines and lines starting with '#' are ignored. The first other
        line is `graph <V> <N>`, followed by exactly N lines `<u> <v>`.
        """
        header = None
        pairs = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if header is None:
                if len(fields) != 3 or fields[0] != "graph":
                    raise GraphInputError("expected header 'graph <V> <N>'", line=number)
                vertex_count = self._integer(fields[1], number, "vertex count")
                edge_count = self._integer(fields[2], number, "edge count")
                header = (vertex_count, edge_count)
                continue
            if len(fields) != 2:
                raise GraphInputError("expected an edge line '<u> <v>'", line=number)
            u = self._integer(fields[0], number, "vertex id")
            v = self._integer(fields[1], number, "vertex id")
            for vertex in (u, v):
                if vertex >= header[0]:
                    raise GraphInputError(
                        f"vertex {vertex} outside 0..{header[0] - 1}", line=number
                    )
            if len(pairs) == header[1]:
                raise GraphInputError(f"more than the declared {header[1]} edges", line=number)
            pairs.append((u, v))
        if header is None:
            raise GraphInputError("missing header 'graph <V> <N>'")
        if len(pairs) != header[1]:
            raise GraphInputError(f"declared {header[1]} edges, found {len(pairs)}")
        if not pairs:
            raise GraphInputError("graph has no edges")
        return MultiGraph.from_pairs(header[0], pairs, name=name)

    def save(self, graph: MultiGraph, path: Union[str, Path]) -> Path:
        """Write a graph in the text format"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        body = graph.to_text()
        if graph.name:
            body = f"# {graph.name}\n" + body
        path.write_text(body, encoding="utf-8")
        return path

    def builtin_names(self) -> List[str]:
        return sorted(CATALOG)

    @staticmethod
    def _integer(token: str, line: int, what: str) -> int:
        try:
            value = int(token)
        except ValueError:
            raise GraphInputError(f"{what} '{token}' is not an integer", line=line) from None
        if value < 0:
            raise GraphInputError(f"{what} {value} is negative", line=line)
        return value
