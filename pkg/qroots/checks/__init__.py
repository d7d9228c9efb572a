"""
Verification suites: each registers named checks that certify one family of
statements at the configured root of unity.
"""

from .base import (
    BaseSuite,
    CheckResult,
    CheckSkipped,
    SuiteContext,
    check,
    passed,
    require,
    skipped,
    verdict,
)
from .collection import SuiteCollection, default_collection

__all__ = [
    "BaseSuite",
    "CheckResult",
    "CheckSkipped",
    "SuiteContext",
    "SuiteCollection",
    "default_collection",
    "check",
    "passed",
    "require",
    "skipped",
    "verdict",
]
