from abc import ABCMeta
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Any, Callable, ClassVar, Dict, List, Optional, Tuple

import numpy as np

from ..config import RunConfig
from ..errors import CheckError, UnsupportedTypeError
from ..qscalars import RootOfUnity, format_scalar
from ..rootdata import RootDatum, WeightVec, build_root_datum
from ..uqalg import QuantumGroup, UElem, ZetaUElem, format_element

CheckFn = Callable[["BaseSuite", "SuiteContext"], "CheckResult"]


@dataclass(kw_only=True, frozen=True)
class CheckResult:
    """Represents the outcome of one named check."""

    ok: bool
    detail: str = ""
    witness: Dict[str, Any] = field(default_factory=dict)
    skipped: bool = False

    def __bool__(self):
        return self.ok

    def __add__(self, other: "CheckResult"):
        detail = "; ".join(d for d in (self.detail, other.detail) if d)
        return CheckResult(
            ok=self.ok and other.ok,
            detail=detail,
            witness={**self.witness, **other.witness},
            skipped=self.skipped and other.skipped,
        )

    def replace(self, **kwargs):
        """Returns a new CheckResult with the given fields replaced."""
        return replace(self, **kwargs)

    @property
    def status(self) -> str:
        if self.skipped:
            return "skipped"
        return "pass" if self.ok else "fail"


class CheckSkipped(CheckResult):
    """A CheckResult for a statement that does not apply to the configured type."""


def passed(detail: str = "", **witness: Any) -> CheckResult:
    return CheckResult(ok=True, detail=detail, witness=jsonable(witness))


def verdict(ok: bool, detail: str = "", **witness: Any) -> CheckResult:
    return CheckResult(ok=bool(ok), detail=detail, witness=jsonable(witness))


def skipped(reason: str) -> CheckResult:
    return CheckSkipped(ok=True, detail=reason, skipped=True)


def require(condition: bool, message: str, **witness: Any) -> None:
    """Fail the running check with a witness unless condition holds."""
    if not condition:
        raise CheckError(message, jsonable(witness))


def jsonable(value: Any) -> Any:
    """A JSON-safe rendering of witnesses: weights, scalars and elements become text or lists."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, UElem):
        return format_element(value)
    if isinstance(value, ZetaUElem):
        return repr(value)
    if isinstance(value, WeightVec):
        return list(value)
    if isinstance(value, (list, tuple, set, frozenset)):
        return [jsonable(v) for v in value]
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, float):
        return round(value, 10)
    if isinstance(value, np.generic):
        return jsonable(value.item())
    if isinstance(value, complex):
        return [round(value.real, 10), round(value.imag, 10)]
    if hasattr(value, "numer") and hasattr(value, "denom"):
        return format_scalar(value)
    return str(value)


def check(name: str) -> Callable[[CheckFn], CheckFn]:
    """Register a suite method as the check called `name`."""

    def decorate(fn: CheckFn) -> CheckFn:
        fn.check_name = name  # type: ignore[attr-defined]
        return fn

    return decorate


class SuiteContext:
    """Everything a suite needs from the run configuration, built lazily."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg

    @cached_property
    def datum(self) -> RootDatum:
        return build_root_datum(self.cfg.type, self.cfg.word0)

    @cached_property
    def qg(self) -> QuantumGroup:
        return QuantumGroup(self.datum, self.cfg.ht_bound)

    @cached_property
    def rou(self) -> RootOfUnity:
        return RootOfUnity(self.cfg.ell, self.datum.index, self.datum.cartan_type)

    def rng(self, salt: int = 0) -> np.random.Generator:
        """A generator seeded from the config so repeated runs draw the same samples."""
        return np.random.default_rng([self.cfg.seed, salt])

    @property
    def is_a1(self) -> bool:
        return self.datum.cartan_type == "A1"

    def require_types(self, *types: str) -> Optional[CheckResult]:
        if self.datum.cartan_type in types:
            return None
        return skipped(f"stated for {', '.join(types)}, configured {self.datum.cartan_type}")


class BaseSuite(metaclass=ABCMeta):
    """A named group of checks; subclasses register methods with @check."""

    name: ClassVar[str]
    description: ClassVar[str] = ""
    types: ClassVar[Tuple[str, ...]] = ("A1", "A2", "B2")

    def __init__(self) -> None:
        self._checks: Dict[str, CheckFn] = {}
        for klass in reversed(type(self).__mro__):
            for attr in vars(klass).values():
                label = getattr(attr, "check_name", None)
                if label:
                    self._checks[label] = attr

    @property
    def check_names(self) -> List[str]:
        return list(self._checks)

    def checks(self) -> List[Tuple[str, Callable[[SuiteContext], CheckResult]]]:
        return [(label, fn.__get__(self)) for label, fn in self._checks.items()]

    def supports(self, ctx: SuiteContext) -> bool:
        return ctx.datum.cartan_type in self.types

    def to_params(self) -> Dict[str, Any]:
        return {"name": self.name, "description": self.description, "checks": self.check_names}


def require_supported(suite: BaseSuite, ctx: SuiteContext) -> None:
    if not suite.supports(ctx):
        raise UnsupportedTypeError(
            f"suite {suite.name} runs for {', '.join(suite.types)}, not {ctx.datum.cartan_type}"
        )
