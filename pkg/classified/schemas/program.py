"""
Program file header schemas
"""
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field


class ProgramHeader(BaseModel):
    """Judgement metadata carried in ``--`` header comments"""
    hole: Optional[Tuple[str, str]] = Field(None, description="Hole variable and its type text")
    ctx: List[Tuple[str, str]] = Field(default_factory=list, description="Ordinary assumptions")
    modal: List[Tuple[str, str]] = Field(default_factory=list, description="Modal assumptions")
    observers: List[str] = Field(default_factory=list, description="Observer labels")
    expect: Optional[str] = Field(None, description="Expected type text")
