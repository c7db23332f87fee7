"""
Command line configuration schema
"""
from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, field_validator


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class CliConfig(BaseModel):
    """Settings overridden by command line flags"""
    poset_path: Optional[str] = Field(None, description="Poset JSON file")
    seed: int = Field(..., ge=0, lt=2**64, description="Master seed")
    trials: int = Field(..., gt=0, description="Trials per law")
    fuel: int = Field(..., gt=0, description="Normalization step budget")
    cap: int = Field(..., gt=0, description="Enumeration cap")
    format: OutputFormat = Field(OutputFormat.TEXT, description="Report format")

    @field_validator("poset_path")
    @classmethod
    def poset_path_readable(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and not Path(value).is_file():
            raise ValueError(f"poset file {value} is not readable")
        return value
