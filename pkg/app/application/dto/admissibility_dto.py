"""Admissibility, search and Robertson DTOs"""
from typing import Dict, List, Optional

from pydantic import BaseModel


class SubquotientVerdictDTO(BaseModel):
    """DTO for the verdict on one sub-quotient G \\ I // J"""
    spec: str
    deleted: List[int]
    contracted: List[int]
    passed: bool
    witness_length: Optional[int] = None
    degenerate: bool = False
    disconnected: bool = False
    counts: Dict[str, int] = {}

    model_config = {"from_attributes": True}


class AdmissibilityCertificateDTO(BaseModel):
    """DTO for a duality-admissibility certificate"""
    graph: str
    mode: str
    total_specs: int
    checked: int
    passed: bool
    partial: bool = False
    exhaustive: bool = True
    failures: List[str] = []
    flagged_girth5: List[str] = []
    flagged_degenerate: List[str] = []
    flagged_disconnected: List[str] = []
    per_q: Dict[str, Dict[str, int]] = {}
    verdicts: List[SubquotientVerdictDTO] = []
    message: Optional[str] = None


class SearchLevelDTO(BaseModel):
    """DTO for the girth >= 5 classes on one vertex count"""
    v: int
    classes: int
    max_edges: int
    edge_bound: int
    witnesses: List[str] = []
    exhaustive: bool = True


class SearchResultDTO(BaseModel):
    """DTO for a girth-5 search run"""
    vmin: int
    vmax: int
    levels: List[SearchLevelDTO]
    witnesses: List[str] = []
    exhaustive: bool = True


class GraphPropertiesDTO(BaseModel):
    """DTO for the structural data of one graph"""
    name: str
    vertices: int
    edges: int
    h: int
    n: int
    girth: Optional[int] = None
    regular_degree: Optional[int] = None
    log_divergent: bool = False


class RobertsonReportDTO(BaseModel):
    """DTO for the Robertson graph property table"""
    completed: GraphPropertiesDTO
    decompleted: GraphPropertiesDTO
    checksum: str
    passed: bool
