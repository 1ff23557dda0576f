"""Graph repository interface"""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import List, Union

from app.domain.entities.multigraph import MultiGraph


class GraphRepository(ABC):
    """Interface for loading and storing graphs"""

    @abstractmethod
    def get(self, reference: str) -> MultiGraph:
        """Resolve a built-in graph name or a graph file path"""
        pass

    @abstractmethod
    def parse(self, text: str, name: str = "") -> MultiGraph:
        """Parse the `graph V N` text format"""
        pass

    @abstractmethod
    def save(self, graph: MultiGraph, path: Union[str, Path]) -> Path:
        """Write a graph in the text format"""
        pass

    @abstractmethod
    def builtin_names(self) -> List[str]:
        """Names accepted by get() without touching the filesystem"""
        pass
