"""Built-in graphs"""
import hashlib
from typing import Callable, Dict, List, Tuple

from app.domain.entities.multigraph import MultiGraph
from app.domain.exceptions import ConsistencyError

# 19-cycle 0..18 plus one chord i -> i + s_i (mod 19) per vertex,
# shifts 8 4 7 4 8 5 7 4 7 8 4 5 7 8 4 8 4 8 4
ROBERTSON_EDGES: Tuple[Tuple[int, int], ...] = (
    (0, 1), (0, 8), (1, 2), (1, 5), (2, 3), (2, 9), (3, 4), (3, 7),
    (4, 5), (4, 12), (5, 6), (5, 10), (6, 7), (6, 13), (7, 8), (7, 11),
    (8, 9), (8, 15), (9, 10), (9, 17), (10, 11), (10, 14), (11, 12), (11, 16),
    (12, 13), (0, 12), (13, 14), (2, 13), (14, 15), (14, 18), (15, 16), (4, 15),
    (16, 17), (1, 16), (17, 18), (6, 17), (0, 18), (3, 18),
)

# sha256 of the edge list as "u v" lines joined by newlines
ROBERTSON_SHA256 = "b8b4bbc5382f68233e21091d2f83b6485975e439177d9ff8f6cadc45d3a89612"


def edge_list_digest(pairs: List[Tuple[int, int]]) -> str:
    text = "\n".join(f"{u} {v}" for u, v in pairs)
    return hashlib.sha256(text.encode("ascii")).hexdigest()


def robertson() -> MultiGraph:
    """The 4-regular girth-5 graph on 19 vertices, properties checked at load"""
    pairs = list(ROBERTSON_EDGES)
    if edge_list_digest(pairs) != ROBERTSON_SHA256:
        raise ConsistencyError("Robertson edge list does not match its checksum")
    graph = MultiGraph.from_pairs(19, pairs, name="robertson")
    if graph.vertex_count != 19 or graph.edge_count != 38:
        raise ConsistencyError("Robertson graph must have 19 vertices and 38 edges")
    if any(graph.degree(v) != 4 for v in range(19)):
        raise ConsistencyError("Robertson graph must be 4-regular")
    if graph.girth() != 5:
        raise ConsistencyError("Robertson graph must have girth 5")
    return graph


def robertson_decompleted() -> MultiGraph:
    """Robertson graph minus vertex 0, vertices 1..18 renumbered 0..17"""
    pairs = [(u - 1, v - 1) for u, v in ROBERTSON_EDGES if u != 0 and v != 0]
    return MultiGraph.from_pairs(18, pairs, name="robertson-decompleted")


def cycle(length: int) -> MultiGraph:
    pairs = [(i, (i + 1) % length) for i in range(length)]
    return MultiGraph.from_pairs(length, pairs, name=f"c{length}")


def banana(multiplicity: int) -> MultiGraph:
    return MultiGraph.from_pairs(2, [(0, 1)] * multiplicity, name=f"banana{multiplicity}")


def complete(size: int) -> MultiGraph:
    pairs = [(u, v) for u in range(size) for v in range(u + 1, size)]
    return MultiGraph.from_pairs(size, pairs, name=f"k{size}")


def wheel(spokes: int) -> MultiGraph:
    """Hub 0 joined to a rim cycle 1..spokes; wheel(3) is K4"""
    rim = [(i, i % spokes + 1) for i in range(1, spokes + 1)]
    hub = [(0, i) for i in range(1, spokes + 1)]
    return MultiGraph.from_pairs(spokes + 1, rim + hub, name=f"wheel{spokes}")


def petersen() -> MultiGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return MultiGraph.from_pairs(10, outer + spokes + inner, name="petersen")


def k4_plus_edge() -> MultiGraph:
    """K4 with edge 0-1 doubled"""
    return MultiGraph.from_pairs(4, complete(4).pairs() + [(0, 1)], name="k4+e")


def octahedron() -> MultiGraph:
    """K6 without the perfect matching 0-3, 1-4, 2-5"""
    pairs = [(u, v) for u in range(6) for v in range(u + 1, 6) if v - u != 3]
    return MultiGraph.from_pairs(6, pairs, name="octahedron")


def complete_bipartite(left: int, right: int) -> MultiGraph:
    pairs = [(u, v) for u in range(left) for v in range(left, left + right)]
    return MultiGraph.from_pairs(left + right, pairs, name=f"k{left}{right}")


def prism() -> MultiGraph:
    """Two triangles 0-1-2 and 3-4-5 joined by 0-3, 1-4, 2-5"""
    pairs = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    return MultiGraph.from_pairs(6, pairs, name="prism")


def cube() -> MultiGraph:
    pairs = [(u, u ^ bit) for u in range(8) for bit in (1, 2, 4) if u < u ^ bit]
    return MultiGraph.from_pairs(8, pairs, name="cube")


def wagner() -> MultiGraph:
    """8-cycle with its four long diagonals"""
    pairs = [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)]
    return MultiGraph.from_pairs(8, pairs, name="wagner")


def house() -> MultiGraph:
    """Square 2-1-0-4 (edges 1..4) with the triangle 0-4-3 on edge 3"""
    pairs = [(2, 1), (1, 0), (0, 4), (4, 2), (3, 4), (0, 3)]
    return MultiGraph.from_pairs(5, pairs, name="house")


CATALOG: Dict[str, Callable[[], MultiGraph]] = {
    "c3": lambda: cycle(3),
    "c4": lambda: cycle(4),
    "c5": lambda: cycle(5),
    "banana2": lambda: banana(2),
    "banana3": lambda: banana(3),
    "k4": lambda: complete(4).with_name("k4"),
    "k4+e": k4_plus_edge,
    "k5": lambda: complete(5),
    "k33": lambda: complete_bipartite(3, 3),
    "k34": lambda: complete_bipartite(3, 4),
    "prism": prism,
    "cube": cube,
    "wagner": wagner,
    "wheel4": lambda: wheel(4),
    "wheel5": lambda: wheel(5),
    "octahedron": octahedron,
    "house": house,
    "petersen": petersen,
    "robertson": robertson,
    "robertson-decompleted": robertson_decompleted,
}

