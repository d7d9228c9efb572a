"""
Report models for qroots.
"""

from .schemas import (
    # Enums
    CheckStatus,
    # Report schemas
    CheckRecord,
    RootDatumInfo,
    SuiteReport,
    SCHEMA_VERSION,
)

__all__ = [
    # Enums
    "CheckStatus",
    # Report schemas
    "CheckRecord",
    "RootDatumInfo",
    "SuiteReport",
    "SCHEMA_VERSION",
]
