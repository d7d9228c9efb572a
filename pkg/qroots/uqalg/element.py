"""
Elements of U and of its tensor powers in PBW coordinates.

A term key is (fmono, λ, emono) standing for
f_{β_N}^{m_N}⋯f_{β_1}^{m_1} k_λ e_{β_N}^{n_N}⋯e_{β_1}^{n_1}; coefficients are
plain (De Concini–Kac) and the divided-power readout is computed on demand.
"""

from typing import TYPE_CHECKING, Any, Callable, Dict, Iterator, Tuple

from ..qscalars import QScalar, ZERO, scalar
from ..rootdata import WeightVec
from .words import add_into

if TYPE_CHECKING:
    from .algebra import QuantumGroup

Mono = Tuple[int, ...]
Key = Tuple[Mono, WeightVec, Mono]


class UElem:
    """A finite sum of PBW terms with coefficients in Q(v)."""

    __slots__ = ("qg", "terms")

    def __init__(self, qg: "QuantumGroup", terms: Dict[Key, QScalar] | None = None):
        self.qg = qg
        self.terms: Dict[Key, QScalar] = {k: c for k, c in (terms or {}).items() if c}

    def __iter__(self) -> Iterator[Tuple[Key, QScalar]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _coerce(self, other: Any) -> "UElem":
        if isinstance(other, UElem):
            return other
        return self.qg.scalar(other)

    def __add__(self, other: Any) -> "UElem":
        other = self._coerce(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            add_into(out, key, c)
        return UElem(self.qg, out)

    __radd__ = __add__

    def __neg__(self) -> "UElem":
        return UElem(self.qg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: Any) -> "UElem":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "UElem":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "UElem":
        if isinstance(other, UElem):
            return self.qg.multiply(self, other)
        c = scalar(other)
        return UElem(self.qg, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, other: Any) -> "UElem":
        c = scalar(other)
        return UElem(self.qg, {k: c * v for k, v in self.terms.items()})

    def __pow__(self, n: int) -> "UElem":
        if n < 0:
            raise ValueError("negative powers are only defined for k[λ]")
        out = self.qg.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UElem):
            return self.terms == other.terms
        try:
            return self.terms == self.qg.scalar(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms))

    def coeff(self, key: Key) -> QScalar:
        return self.terms.get(key, ZERO)

    def __repr__(self) -> str:
        from .grammar import format_element

        return f"UElem({format_element(self)})"


TensorKey = Tuple[Key, ...]


class TensorUElem:
    """A finite sum of pure tensors of PBW terms."""

    __slots__ = ("qg", "arity", "terms")

    def __init__(self, qg: "QuantumGroup", arity: int,
                 terms: Dict[TensorKey, QScalar] | None = None):
        self.qg = qg
        self.arity = arity
        self.terms: Dict[TensorKey, QScalar] = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def pure(cls, *factors: UElem) -> "TensorUElem":
        qg = factors[0].qg
        out: Dict[TensorKey, QScalar] = {}

        def rec(i: int, keys: Tuple[Key, ...], c: QScalar) -> None:
            if i == len(factors):
                add_into(out, keys, c)
                return
            for key, ck in factors[i].terms.items():
                rec(i + 1, keys + (key,), c * ck)

        rec(0, (), scalar(1))
        return cls(qg, len(factors), out)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "TensorUElem") -> "TensorUElem":
        out = dict(self.terms)
        for key, c in other.terms.items():
            add_into(out, key, c)
        return TensorUElem(self.qg, self.arity, out)

    def __neg__(self) -> "TensorUElem":
        return TensorUElem(self.qg, self.arity, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TensorUElem") -> "TensorUElem":
        return self + (-other)

    def __mul__(self, other: Any) -> "TensorUElem":
        if isinstance(other, TensorUElem):
            out: Dict[TensorKey, QScalar] = {}
            for ka, ca in self.terms.items():
                for kb, cb in other.terms.items():
                    parts = [
                        self.qg.multiply(self.qg.monomial(x), self.qg.monomial(y))
                        for x, y in zip(ka, kb)
                    ]
                    prod = TensorUElem.pure(*parts)
                    for key, c in prod.terms.items():
                        add_into(out, key, ca * cb * c)
            return TensorUElem(self.qg, self.arity, out)
        c = scalar(other)
        return TensorUElem(self.qg, self.arity, {k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorUElem):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms))

    def apply(self, position: int, fn: Callable[[UElem], Any]) -> "TensorUElem":
        """Apply a linear map to one tensor factor; fn may raise the arity."""
        out: Dict[TensorKey, QScalar] = {}
        arity = self.arity
        for keys, c in self.terms.items():
            image = fn(self.qg.monomial(keys[position]))
            if isinstance(image, TensorUElem):
                arity = self.arity - 1 + image.arity
                for sub, cs in image.terms.items():
                    add_into(out, keys[:position] + sub + keys[position + 1:], c * cs)
            else:
                for key, ci in image.terms.items():
                    add_into(out, keys[:position] + (key,) + keys[position + 1:], c * ci)
        return TensorUElem(self.qg, arity, out)

    def contract(self, fn: Callable[..., UElem]) -> UElem:
        """Σ c·fn(x₁, …, x_n) over pure tensors, e.g. multiplication."""
        total = self.qg.zero()
        for keys, c in self.terms.items():
            total = total + fn(*(self.qg.monomial(k) for k in keys)) * c
        return total

    def __repr__(self) -> str:
        from .grammar import format_tensor

        return f"TensorUElem({format_tensor(self)})"
