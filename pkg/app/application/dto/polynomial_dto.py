"""Polynomial DTOs"""
from typing import List, Optional

from pydantic import BaseModel

from app.domain.entities.sparse_poly import SparsePoly


class PolynomialDTO(BaseModel):
    """DTO for a named polynomial"""
    label: str
    text: str
    degree: int
    terms: List[list]

    model_config = {"from_attributes": True}

    @classmethod
    def from_poly(cls, label: str, poly: SparsePoly) -> "PolynomialDTO":
        return cls(label=label, text=poly.to_text(), degree=poly.degree(), terms=poly.to_json())


class PolynomialReportDTO(BaseModel):
    """DTO for the `poly` command output of one graph"""
    graph: str
    vertices: int
    edges: int
    connected: bool
    polynomials: List[PolynomialDTO]
    backends_agree: Optional[bool] = None
