"""
Check report schemas shared by the harness and the command line
"""
from enum import Enum
from typing import Any, Dict, List

from pydantic import BaseModel, Field, computed_field


class FailureKind(str, Enum):
    """What kind of check produced a failure"""
    LAW = "law"
    SYNTACTIC = "syntactic"
    SEMANTIC = "semantic"
    DISAGREEMENT = "disagreement"
    ERROR = "error"


class ReportStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    VACUOUS = "vacuous"


class Failure(BaseModel):
    """One failed case with enough input to replay it"""
    law: str = Field(..., description="Law or check identifier")
    inputs: Dict[str, Any] = Field(default_factory=dict, description="Serialized case inputs")
    witness: Any = Field(None, description="Counterexample, such as a morphism table")
    kind: FailureKind = Field(FailureKind.LAW, description="Failure class")


class CheckReport(BaseModel):
    """Outcome of one suite or check"""
    suite: str = Field(..., description="Suite name")
    seed: int = Field(0, ge=0, description="Master seed")
    cases: int = Field(0, ge=0, description="Cases run")
    failures: List[Failure] = Field(default_factory=list, description="Failures in case order")
    elapsed_ms: float = Field(0.0, ge=0.0, description="Wall time; excluded from comparisons")
    vacuous: bool = Field(False, description="Preconditions unmet or no cases run")
    notes: List[str] = Field(default_factory=list, description="Skipped cases and remarks")
    details: Dict[str, Any] = Field(default_factory=dict, description="Suite specific counters")

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.failures

    @computed_field
    @property
    def status(self) -> ReportStatus:
        if self.failures:
            return ReportStatus.FAIL
        if self.vacuous or self.cases == 0:
            return ReportStatus.VACUOUS
        return ReportStatus.PASS

    def body(self) -> Dict[str, Any]:
        """Serialized report without timing, for reproducibility checks"""
        data = self.model_dump(mode="json")
        data.pop("elapsed_ms", None)
        return data
