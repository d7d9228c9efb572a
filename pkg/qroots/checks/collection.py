"""Collection classes for running named suites."""

import time
from typing import Dict, List, Optional

from ..config import RunConfig
from ..errors import CheckError, ConfigError, QrootsError, UnknownSuiteError
from ..logging_config import get_logger, log_check_event, log_suite_event
from ..models.schemas import CheckRecord, CheckStatus, SuiteReport
from .base import BaseSuite, CheckResult, SuiteContext, require_supported

logger = get_logger(__name__)


class SuiteCollection:
    """A collection of verification suites keyed by name."""

    def __init__(self, *suites: BaseSuite):
        self.suites = suites
        self.suite_map: Dict[str, BaseSuite] = {suite.name: suite for suite in suites}

    def to_params(self) -> List[dict]:
        return [suite.to_params() for suite in self.suites]

    def get(self, name: str) -> BaseSuite:
        suite = self.suite_map.get(name)
        if suite is None:
            known = ", ".join(self.suite_map)
            raise UnknownSuiteError(f"unknown suite {name!r}; registered suites: {known}")
        return suite

    def run(self, name: str, cfg: RunConfig, only: Optional[List[str]] = None) -> SuiteReport:
        """Run every check of a suite (or the named subset) and assemble the report."""
        suite = self.get(name)
        ctx = SuiteContext(cfg)
        try:
            require_supported(suite, ctx)
            datum = ctx.datum
        except QrootsError as e:
            raise ConfigError(e.message) from e
        report = SuiteReport(
            suite=name,
            config=cfg.model_dump(mode="json"),
            root_datum=datum.info(),
            seed=cfg.seed,
        )
        log_suite_event(name, "started", type=datum.cartan_type, ell=cfg.ell)
        started = time.perf_counter()
        checks = suite.checks()
        if only:
            missing = set(only) - {label for label, _ in checks}
            if missing:
                raise UnknownSuiteError(f"suite {name} has no check named {', '.join(sorted(missing))}")
            checks = [(label, fn) for label, fn in checks if label in only]
        for label, fn in checks:
            report.checks.append(self._run_check(name, label, fn, ctx))
        report.wall_time_s = round(time.perf_counter() - started, 3)
        log_suite_event(name, "finished", passed=report.passed, checks=len(report.checks),
                        wall_time_s=report.wall_time_s)
        return report

    @staticmethod
    def _run_check(suite: str, label: str, fn, ctx: SuiteContext) -> CheckRecord:
        t0 = time.perf_counter()
        try:
            result: CheckResult = fn(ctx)
        except CheckError as e:
            result = CheckResult(ok=False, detail=e.message, witness=e.witness)
        except QrootsError as e:
            result = CheckResult(ok=False, detail=e.message, witness={"error": type(e).__name__})
        duration = time.perf_counter() - t0
        status = CheckStatus(result.status)
        log_check_event(suite, label, status.value, duration)
        if status is CheckStatus.FAIL:
            logger.warning("Check failed", suite=suite, check=label, detail=result.detail)
        return CheckRecord(
            name=label,
            status=status,
            detail=result.detail,
            witness=result.witness,
            duration_ms=round(duration * 1000, 2),
        )


def default_collection() -> SuiteCollection:
    from .azumaya import AzumayaSuite
    from .braid import BraidSuite
    from .center import CenterSuite
    from .coordring import CoordRingSuite
    from .hopf import HopfSuite
    from .local_formulas import LocalFormulasSuite
    from .modules import ModulesSuite
    from .omega import OmegaSuite
    from .pairing import PairingSuite
    from .pbw import PBWSuite
    from .poisson import PoissonSuite

    return SuiteCollection(
        HopfSuite(),
        PBWSuite(),
        BraidSuite(),
        PairingSuite(),
        ModulesSuite(),
        CoordRingSuite(),
        OmegaSuite(),
        LocalFormulasSuite(),
        CenterSuite(),
        PoissonSuite(),
        AzumayaSuite(),
    )
