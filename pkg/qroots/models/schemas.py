"""
Pydantic schemas for verification reports.
"""

import json
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, computed_field

SCHEMA_VERSION = "1"


class CheckStatus(str, Enum):
    """Check status enumeration."""
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class RootDatumInfo(BaseModel):
    """Schema for the root datum block of a report."""
    type: str
    w0_word: List[int]
    positive_roots: List[List[int]] = Field(default_factory=list)


class CheckRecord(BaseModel):
    """Schema for one named check."""
    name: str
    status: CheckStatus
    detail: str = ""
    witness: Dict[str, Any] = Field(default_factory=dict)
    duration_ms: float = 0.0


class SuiteReport(BaseModel):
    """Schema for a suite run."""
    schema_version: str = SCHEMA_VERSION
    suite: str
    config: Dict[str, Any] = Field(default_factory=dict)
    root_datum: Optional[RootDatumInfo] = None
    seed: int = 0
    checks: List[CheckRecord] = Field(default_factory=list)
    wall_time_s: float = 0.0

    @computed_field  # type: ignore[misc]
    @property
    def passed(self) -> bool:
        return all(c.status != CheckStatus.FAIL for c in self.checks)

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2, sort_keys=True)

    def canonical_json(self) -> str:
        """JSON without timing fields; identical for identical runs."""
        data = self.model_dump(mode="json", exclude={"wall_time_s"})
        for check in data["checks"]:
            check.pop("duration_ms", None)
        return json.dumps(data, indent=2, sort_keys=True)
