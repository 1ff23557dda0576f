"""Verification report DTOs"""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class IdentityRecordDTO(BaseModel):
    """DTO for one exact polynomial identity check"""
    statement: str
    graph: str
    passed: bool = Field(alias="pass")
    skipped: bool = False
    detail: Dict[str, Any] = {}
    counterexample: Optional[str] = None
    message: Optional[str] = None

    model_config = {"from_attributes": True, "populate_by_name": True}


class CongruenceReportDTO(BaseModel):
    """DTO for a point-count congruence or divisibility check"""
    statement: str
    graph: str
    q: int
    counts: Dict[str, int] = {}
    modulus: int = 1
    residues: Dict[str, int] = {}
    passed: bool = Field(alias="pass")
    skipped: bool = False
    message: Optional[str] = None
    millis: float = 0.0

    model_config = {"from_attributes": True, "populate_by_name": True}


class C2RowDTO(BaseModel):
    """DTO for one (graph, q) row of the c2 table"""
    graph: str
    q: int
    c2_parametric: int
    c2_dual: int
    equal: bool
    fourface: Optional[int] = None
    fourface_equal: Optional[bool] = None


class SuiteReportDTO(BaseModel):
    """DTO for a full verification run"""
    graphs: List[str]
    qs: List[int]
    seed: int
    identities: List[IdentityRecordDTO] = []
    congruences: List[CongruenceReportDTO] = []
    passed: int = 0
    failed: int = 0
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return self.failed == 0
