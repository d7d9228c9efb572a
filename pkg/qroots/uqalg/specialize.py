"""
Specialization of U at a root of unity and Lusztig's Frobenius map.

An element of U_ζ (form "DK") is keyed like U, (fmono, λ, emono). An element
of U_ζ^L (form "L") is keyed (fmono, TorusLabel, emono) against the basis
f^{(m)} k_μ ∏[K_i;0,t_i] e^{(n)}. Coordinates are elements of Q(ζ′).
Products are computed by lifting coordinates back to Q(v), multiplying
there and specializing again, which is well defined because both integral
forms are 𝔸-subalgebras with these bases.
"""

from itertools import product as cartesian
from typing import Any, Dict, Iterator, Optional, Tuple

from ..errors import NotRegularError
from ..qscalars import ONE, CycScalar, QScalar, RootOfUnity, ZERO, at_one, format_scalar
from .element import Key, Mono, TensorUElem, UElem
from .grammar import format_monomial, join_terms, sort_key
from .torus import TorusLabel

# (fmono, t, emono) for f̄^{(m)} ∏ C(h̄_i, t_i) ē^{(n)}
ClassicalKey = Tuple[Mono, Tuple[int, ...], Mono]


def _clean(terms: Dict[Any, CycScalar]) -> Dict[Any, CycScalar]:
    return {k: c for k, c in terms.items() if c}


class ZetaUElem:
    """An element of U_ζ or U_ζ^L in PBW coordinates over Q(ζ′)."""

    __slots__ = ("qg", "rou", "form", "terms")

    def __init__(self, qg: Any, rou: RootOfUnity, form: str, terms: Dict[Key, CycScalar]):
        self.qg = qg
        self.rou = rou
        self.form = form.upper()
        self.terms = _clean(terms)

    def _like(self, terms: Dict[Key, CycScalar]) -> "ZetaUElem":
        return ZetaUElem(self.qg, self.rou, self.form, terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "ZetaUElem") -> "ZetaUElem":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, self.rou.domain.zero) + c
        return self._like(out)

    def __neg__(self) -> "ZetaUElem":
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "ZetaUElem") -> "ZetaUElem":
        return self + (-other)

    def __mul__(self, other: Any) -> "ZetaUElem":
        if isinstance(other, ZetaUElem):
            product = self.lift() * other.lift()
            return specialize_u(product, self.rou, self.form)
        c = other if hasattr(other, "rep") else self.rou.rational(other)
        return self._like({k: c * v for k, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZetaUElem):
            return NotImplemented
        return self.form == other.form and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.form, frozenset(self.terms)))

    def commutator(self, other: "ZetaUElem") -> "ZetaUElem":
        return self * other - other * self

    def lift(self) -> UElem:
        """A preimage in U over Q(v) with plain coefficients."""
        coords = {key: self.rou.lift(c) for key, c in self.terms.items()}
        if self.form == "L":
            return self.qg.from_lusztig(coords)
        return UElem(self.qg, coords)

    def __repr__(self) -> str:
        divided = self.form == "L"
        texts = []
        for key in sorted(self.terms, key=sort_key):
            mono = format_monomial(key, self.qg, divided) or "1"
            texts.append(f"({self.rou.format(self.terms[key])})*{mono}")
        return f"ZetaUElem[{self.form}]({join_terms(texts)})"


def specialize_u(a: UElem, rou: RootOfUnity, form: str = "DK") -> ZetaUElem:
    """Image of a in U_ζ (DK) or U_ζ^L (L); coordinates must lie in 𝔸."""
    coords = a.qg.coords(a, form)
    out = {}
    for key, c in coords.items():
        if not rou.regular(c):
            mono = format_monomial(key, a.qg, form.upper() == "L") or "1"
            raise NotRegularError(
                f"coefficient {format_scalar(c)} of {mono} is not in 𝔸 for the {form} form"
            )
        out[key] = rou.specialize(c)
    return ZetaUElem(a.qg, rou, form, out)


def _tensor_to_lusztig(t: TensorUElem) -> Dict[Tuple[Key, ...], QScalar]:
    out: Dict[Tuple[Key, ...], QScalar] = {}
    for keys, c in t.terms.items():
        factors = [t.qg.key_to_lusztig(key).items() for key in keys]
        for combo in cartesian(*factors):
            coeff = c
            for _, b in combo:
                coeff = coeff * b
            lkeys = tuple(key for key, _ in combo)
            out[lkeys] = out.get(lkeys, ZERO) + coeff
    return {k: c for k, c in out.items() if c}


def specialize_tensor(t: TensorUElem, rou: RootOfUnity, form: str = "DK") -> Dict[Tuple[Key, ...], CycScalar]:
    """Coordinates of a tensor in the product 𝔸-basis, specialized."""
    coords = _tensor_to_lusztig(t) if form.upper() == "L" else t.terms
    out: Dict[Tuple[Key, ...], CycScalar] = {}
    for keys, coeff in coords.items():
        if not rou.regular(coeff):
            raise NotRegularError(f"tensor coefficient {format_scalar(coeff)} is not in 𝔸")
        out[keys] = rou.specialize(coeff)
    return _clean(out)


# Classical limit

class ClassicalUElem:
    """An element of U(g) in the basis f̄^{(m)} ∏_i C(h̄_i, t_i) ē^{(n)}.

    Structure constants are those of U_𝔸^L at v = 1 with k_λ ↦ 1 and
    [K_i;0,t] ↦ C(h̄_i, t), which is Kostant's ℤ-form of U(g).
    """

    __slots__ = ("qg", "rou", "terms")

    def __init__(self, qg: Any, rou: RootOfUnity, terms: Dict[ClassicalKey, CycScalar]):
        self.qg = qg
        self.rou = rou
        self.terms = _clean(terms)

    @classmethod
    def from_rational(cls, qg: Any, rou: RootOfUnity, coords: Dict[ClassicalKey, Any]) -> "ClassicalUElem":
        return cls(qg, rou, {k: rou.rational(c) for k, c in coords.items()})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "ClassicalUElem") -> "ClassicalUElem":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, self.rou.domain.zero) + c
        return ClassicalUElem(self.qg, self.rou, out)

    def __neg__(self) -> "ClassicalUElem":
        return ClassicalUElem(self.qg, self.rou, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "ClassicalUElem") -> "ClassicalUElem":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassicalUElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms))

    def __mul__(self, other: "ClassicalUElem") -> "ClassicalUElem":
        out: Dict[ClassicalKey, CycScalar] = {}
        zero = self.rou.domain.zero
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                for key, c in classical_product(self.qg, k1, k2).items():
                    out[key] = out.get(key, zero) + c1 * c2 * self.rou.rational(c)
        return ClassicalUElem(self.qg, self.rou, out)

    def commutator(self, other: "ClassicalUElem") -> "ClassicalUElem":
        return self * other - other * self

    def coproduct(self) -> Dict[Tuple[ClassicalKey, ClassicalKey], CycScalar]:
        out: Dict[Tuple[ClassicalKey, ClassicalKey], CycScalar] = {}
        zero = self.rou.domain.zero
        for (fm, hm, em), c in self.terms.items():
            for (fl, fr), cf in classical_half_coproduct(self.qg, fm, "f").items():
                for hl, hr in _binomial_splits(hm):
                    for (el, er), ce in classical_half_coproduct(self.qg, em, "e").items():
                        key = ((fl, hl, el), (fr, hr, er))
                        out[key] = out.get(key, zero) + c * self.rou.rational(cf * ce)
        return _clean(out)

    def __repr__(self) -> str:
        texts = []
        zero = self.qg.datum.zero()
        for fm, hm, em in sorted(self.terms):
            key = (fm, TorusLabel(zero, hm), em)
            mono = format_monomial(key, self.qg, True, classical=True) or "1"
            texts.append(f"({self.rou.format(self.terms[(fm, hm, em)])})*{mono}")
        return f"ClassicalUElem({join_terms(texts)})"


_PRODUCTS: Dict[Tuple[int, ClassicalKey, ClassicalKey], Dict[ClassicalKey, Any]] = {}
_HALF_COPRODUCTS: Dict[Tuple[int, Mono, str], Dict[Tuple[Mono, Mono], Any]] = {}


def _divided(qg: Any, mono: Mono, kind: str) -> UElem:
    zero = qg.datum.zero()
    key = (qg.empty, zero, mono) if kind == "e" else (mono, zero, qg.empty)
    return qg.monomial(key, ONE / qg.lusztig_factor(key))


def _half(key: Key, kind: str) -> Mono:
    return key[2] if kind == "e" else key[0]


def _accumulate(target: Dict[Any, Any], key: Any, value: Any) -> None:
    total = target.get(key, 0) + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


def _binomial_splits(hm: Tuple[int, ...]) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    # Δ C(h, t) = Σ_{a+b=t} C(h, a) ⊗ C(h, b)
    ranges = [range(t + 1) for t in hm]
    for left in cartesian(*ranges):
        yield left, tuple(t - a for t, a in zip(hm, left))


def classical_lift(qg: Any, key: ClassicalKey) -> UElem:
    """f^{(m)} ∏[K_i;0,t_i] e^{(n)} in U, a preimage of the classical basis element."""
    fm, hm, em = key
    label = TorusLabel(qg.datum.zero(), tuple(hm))
    return qg.from_lusztig({qg.lusztig_key(fm, em, label): ONE})


def classical_limit(coords: Dict[Key, QScalar]) -> Dict[ClassicalKey, Any]:
    """Lusztig coordinates read at v = 1 in U(g)."""
    out: Dict[ClassicalKey, Any] = {}
    for (fm, label, em), c in coords.items():
        value = at_one(c)
        if value:
            _accumulate(out, (fm, label.t, em), value)
    return out


def classical_product(qg: Any, k1: ClassicalKey, k2: ClassicalKey) -> Dict[ClassicalKey, Any]:
    """The product of two classical basis elements, with rational coefficients."""
    if not any(k1[0] + k1[1] + k1[2]):
        return {k2: 1}
    if not any(k2[0] + k2[1] + k2[2]):
        return {k1: 1}
    memo = (id(qg), k1, k2)
    if memo not in _PRODUCTS:
        product = classical_lift(qg, k1) * classical_lift(qg, k2)
        _PRODUCTS[memo] = classical_limit(qg.to_lusztig(product))
    return _PRODUCTS[memo]


def classical_half_coproduct(qg: Any, mono: Mono, kind: str) -> Dict[Tuple[Mono, Mono], Any]:
    """Δ(x̄^{(m)}) = Σ c x̄^{(m′)} ⊗ x̄^{(m″)}."""
    if not any(mono):
        return {(mono, mono): 1}
    memo = (id(qg), mono, kind)
    if memo not in _HALF_COPRODUCTS:
        delta = qg.coproduct(_divided(qg, mono, kind))
        out: Dict[Tuple[Mono, Mono], Any] = {}
        for (left, right), c in delta.terms.items():
            value = at_one(c * qg.lusztig_factor(left) * qg.lusztig_factor(right))
            if value:
                _accumulate(out, (_half(left, kind), _half(right, kind)), value)
        _HALF_COPRODUCTS[memo] = out
    return _HALF_COPRODUCTS[memo]


def _frobenius_key(key: Key, ell: int) -> Optional[ClassicalKey]:
    fm, label, em = key
    if any(m % ell for m in fm + label.t + em):
        return None
    return (
        tuple(m // ell for m in fm),
        tuple(t // ell for t in label.t),
        tuple(m // ell for m in em),
    )


def frobenius_pi(x: ZetaUElem) -> ClassicalUElem:
    """π: U_ζ^L → U(g).

    e^{(m)} ↦ ē^{(m/ℓ)} when ℓ | m and 0 otherwise, likewise for f;
    k_μ ↦ 1, and [K_i;0,t] ↦ C(h̄_i, t/ℓ) when ℓ | t and 0 otherwise.
    """
    if x.form != "L":
        raise ValueError("the Frobenius map is defined on the Lusztig form")
    out: Dict[ClassicalKey, CycScalar] = {}
    zero = x.rou.domain.zero
    for key, c in x.terms.items():
        image = _frobenius_key(key, x.rou.ell)
        if image is not None:
            out[image] = out.get(image, zero) + c
    return ClassicalUElem(x.qg, x.rou, out)


def frobenius_pi_tensor(
    t: Dict[Tuple[Key, ...], CycScalar], qg: Any, rou: RootOfUnity
) -> Dict[Tuple[ClassicalKey, ...], CycScalar]:
    """π⊗π on specialized Lusztig coordinates of a tensor."""
    out: Dict[Tuple[ClassicalKey, ...], CycScalar] = {}
    zero = rou.domain.zero
    for keys, c in t.items():
        images = [_frobenius_key(key, rou.ell) for key in keys]
        if any(image is None for image in images):
            continue
        key = tuple(images)
        out[key] = out.get(key, zero) + c
    return _clean(out)
