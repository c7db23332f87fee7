"""
Poset configuration schema
"""
from typing import List, Tuple

from pydantic import BaseModel, Field


class PosetConfig(BaseModel):
    """Schema for a security poset file: labels plus generator pairs [lower, higher]"""
    labels: List[str] = Field(..., min_length=1, description="Security labels")
    order: List[Tuple[str, str]] = Field(default_factory=list, description="Generator pairs [lower, higher]")


DEFAULT_POSET = PosetConfig(labels=["L", "H"], order=[("L", "H")])
