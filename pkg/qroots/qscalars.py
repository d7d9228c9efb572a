"""
Exact scalars: the field Q(v) with v = q^{1/d}, q-integers, the local ring at a
root of unity, and specialization into the cyclotomic field Q(ζ′).
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd
from typing import Any, List, Tuple

from sympy import QQ, Symbol, cyclotomic_poly
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.fields import field

from .config import check_ell
from .errors import ConfigError, NotRegularError, ParseError
from .logging_config import get_logger

logger = get_logger(__name__)

V_SYMBOL = Symbol("v")
QF, V = field(V_SYMBOL, QQ)
# DomainMatrix domain for Q(v)
FIELD = QF.to_domain()

QScalar = Any  # FracElement of QF
CycScalar = Any  # ANP of a cyclotomic field

_TRANSFORMS = standard_transformations + (convert_xor,)


def scalar(value: Any) -> QScalar:
    """Coerce an int, Rational or FracElement into Q(v)."""
    if hasattr(value, "field") and value.field == QF:
        return value
    return QF(value)


ONE = QF.one
ZERO = QF.zero


def qint(n: int, t: QScalar) -> QScalar:
    """[n]_t = (t^n − t^{−n}) / (t − t^{−1})."""
    if n == 0:
        return ZERO
    if n < 0:
        return -qint(-n, t)
    # 1 + t^2 + ... balanced
    total = ZERO
    for j in range(n):
        total = total + t ** (n - 1 - 2 * j)
    return total


def qfact(n: int, t: QScalar) -> QScalar:
    if n < 0:
        raise ValueError(f"q-factorial of negative integer {n}")
    out = ONE
    for j in range(1, n + 1):
        out = out * qint(j, t)
    return out


def qbinom(n: int, k: int, t: QScalar) -> QScalar:
    """Gaussian binomial [n choose k]_t; n may be negative."""
    if k < 0:
        return ZERO
    if n >= 0 and k > n:
        return ZERO
    num = ONE
    for j in range(k):
        num = num * qint(n - j, t)
    return num / qfact(k, t)


def exp_coeff(n: int, t: QScalar) -> QScalar:
    """Coefficient t^{n(n−1)/2} / [n]_t! of x^n in exp_t(x)."""
    return t ** (n * (n - 1) // 2) / qfact(n, t)


def at_one(f: QScalar) -> Any:
    """Value at v = 1 (classical limit); raises on a pole."""
    d = f.denom(1)
    if not d:
        raise NotRegularError(f"{format_scalar(f)} has a pole at v = 1")
    return QQ.convert(f.numer(1)) / QQ.convert(d)


# Text grammar

def parse_scalar(text: str, d: int = 1) -> QScalar:
    """Parse `(v^2 - v^-2)/(v - v^-1)`-style text; `q` means v^d."""
    local = {"v": V_SYMBOL, "q": V_SYMBOL**d}
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMS)
    except (SyntaxError, TypeError, ValueError) as e:
        raise ParseError(f"cannot parse scalar {text!r}", getattr(e, "offset", None)) from e
    except Exception as e:  # tokenizer errors
        raise ParseError(f"cannot parse scalar {text!r}: {e}") from e
    extra = expr.free_symbols - {V_SYMBOL}
    if extra:
        raise ParseError(f"unknown symbols {sorted(map(str, extra))} in {text!r}")
    try:
        return QF.from_expr(expr)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"not a rational function of v: {text!r}") from e


def _format_coeff(c: Any) -> str:
    c = QQ.convert(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _format_laurent(terms: List[Tuple[int, Any]]) -> str:
    """Terms (exponent, coefficient) printed in descending exponent order."""
    pieces = []
    for e, c in sorted(terms, key=lambda t: -t[0]):
        if not c:
            continue
        c = QQ.convert(c)
        neg = c < 0
        mag = -c if neg else c
        if e == 0:
            body = _format_coeff(mag)
        else:
            mono = "v" if e == 1 else f"v^{e}"
            body = mono if mag == 1 else f"{_format_coeff(mag)}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces) or "0"


def _poly_terms(p: Any, shift: int = 0) -> List[Tuple[int, Any]]:
    return [(m[0] - shift, c) for m, c in p.terms()]


def format_scalar(f: QScalar) -> str:
    """Canonical text; parse_scalar(format_scalar(f)) == f."""
    f = scalar(f)
    if not f:
        return "0"
    denom_terms = _poly_terms(f.denom)
    if len(denom_terms) == 1:
        (e, c), = denom_terms
        return _format_laurent([(m - e, a / QQ.convert(c)) for m, a in _poly_terms(f.numer)])
    exps = [e for e, _ in denom_terms]
    shift = (min(exps) + max(exps)) // 2
    num = _format_laurent(_poly_terms(f.numer, shift))
    den = _format_laurent(_poly_terms(f.denom, shift))
    if len(f.numer.terms()) > 1:
        num = f"({num})"
    return f"{num}/({den})"


# Roots of unity

@dataclass(frozen=True)
class RootOfUnity:
    """ζ′ a primitive ell-th root of 1 with v ↦ ζ′ and q ↦ ζ = ζ′^d."""

    ell: int
    d: int
    cartan_type: str = "A1"

    def __post_init__(self) -> None:
        check_ell(self.cartan_type, self.ell)
        if gcd(self.ell, self.d) != 1:
            raise ConfigError(
                f"condition (c) violated: gcd(ell, d) must be 1, got ell={self.ell}, d={self.d}"
            )

    @cached_property
    def domain(self) -> Any:
        return _cyclotomic(self.ell)

    @cached_property
    def zeta_prime(self) -> CycScalar:
        K = self.domain
        return K([K.dom.one, K.dom.zero])

    @cached_property
    def zeta(self) -> CycScalar:
        return self.zeta_prime**self.d

    @cached_property
    def _powers(self) -> Tuple[CycScalar, ...]:
        out = [self.domain.one]
        for _ in range(self.ell - 1):
            out.append(out[-1] * self.zeta_prime)
        return tuple(out)

    @cached_property
    def phi(self) -> Any:
        """Minimal polynomial of ζ′ as an element of Q[v]."""
        return QF.ring.from_expr(cyclotomic_poly(self.ell, V_SYMBOL))

    def rational(self, c: Any) -> CycScalar:
        return self.domain.convert_from(QQ.convert(c), QQ)

    def zpow(self, k: int) -> CycScalar:
        """ζ′^k."""
        return self._powers[k % self.ell]

    def _eval_poly(self, p: Any) -> CycScalar:
        K = self.domain
        acc = K.zero
        for (e,), c in p.terms():
            acc = acc + self.rational(c) * self._powers[e % self.ell]
        return acc

    def regular(self, f: QScalar) -> bool:
        return bool(self._eval_poly(scalar(f).denom))

    def specialize(self, f: QScalar) -> CycScalar:
        f = scalar(f)
        den = self._eval_poly(f.denom)
        if not den:
            raise NotRegularError(f"{format_scalar(f)} has a pole at ζ′ (ell={self.ell})")
        return self._eval_poly(f.numer) / den

    def valuation(self, f: QScalar) -> int:
        """Order of vanishing at ζ′ (negative for poles)."""
        f = scalar(f)
        if not f:
            raise ValueError("valuation of zero")
        return _order(f.numer, self.phi) - _order(f.denom, self.phi)

    def lift(self, a: CycScalar) -> QScalar:
        """A preimage of a under specialization."""
        coeffs = a.to_list()
        out = ZERO
        n = len(coeffs)
        for i, c in enumerate(coeffs):
            if c:
                out = out + QF.ground_new(c) * V ** (n - 1 - i)
        return out

    def format(self, a: CycScalar) -> str:
        """Text for an element of Q(ζ′) in the power basis of ζ′ (written z)."""
        coeffs = a.to_list()
        n = len(coeffs)
        text = _format_laurent([(n - 1 - i, c) for i, c in enumerate(coeffs) if c])
        return text.replace("v", "z")


def _order(p: Any, phi: Any) -> int:
    k = 0
    while p:
        quo, rem = p.div(phi)
        if rem:
            break
        p = quo
        k += 1
    return k


@lru_cache(maxsize=None)
def _cyclotomic(ell: int) -> Any:
    K = QQ.cyclotomic_field(ell)
    logger.debug("Cyclotomic field built", ell=ell, degree=K.mod.degree())
    return K


@lru_cache(maxsize=None)
def root_of_unity(ell: int, d: int, cartan_type: str = "A1") -> RootOfUnity:
    return RootOfUnity(ell, d, cartan_type)


def regular_at_root(f: QScalar, rou: RootOfUnity) -> bool:
    return rou.regular(f)


def specialize(f: QScalar, rou: RootOfUnity) -> CycScalar:
    return rou.specialize(f)


def valuation(f: QScalar, rou: RootOfUnity) -> int:
    return rou.valuation(f)


def valuation_at_one(f: QScalar) -> int:
    """Order of vanishing at v = 1, for lattices over Z[v, v^{-1}] localized at 1."""
    f = scalar(f)
    if not f:
        raise ValueError("valuation of zero")
    x = QF.ring.gens[0]
    return _order(f.numer, x - 1) - _order(f.denom, x - 1)


class QData:
    """The q-powers attached to a root datum: q, q_i, q_β and q^{(λ,μ)}."""

    def __init__(self, datum: Any):
        self.datum = datum
        self.d = datum.index

    @cached_property
    def q(self) -> QScalar:
        return V**self.d

    def qi(self, i: int) -> QScalar:
        return V ** self.datum.qi_vexp(i)

    def qbeta(self, beta: Any) -> QScalar:
        return V ** self.datum.root_vexp(beta)


