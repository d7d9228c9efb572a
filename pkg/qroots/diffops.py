"""
The algebra E = A ⊗ U ⊗ 𝕂[Λ], the elements Ω(φ), the quotient D′ on degree
windows, the operator realization on A and the braid ⋆-action.

An `EElem` is kept in normal order A·U·𝕂[Λ]: a dict from (PBW key of U,
exponent ν of e(ν)) to the A-coefficient. Products use

    u φ = Σ (u₍₀₎·φ) u₍₁₎,   e(ν) φ = q^{(ν,μ)} φ e(ν)  (φ ∈ A(μ)),   u e(ν) = e(ν) u.

At ζ the U-keys are De Concini–Kac PBW monomials and the A-coefficients live in
A_ζ; every structure constant is computed over Q(v) and specialized once the
terms are collected.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import DegreeBoundError, QrootsError, WindowError
from .linalg import matvec, rank, rref
from .logging_config import get_logger
from .pairing import Normalization, dual_bases_up_to
from .qcoord import AComponent, AElem, a_component, act, lift_a, multiply_a, one
from .qreps import LEVEL_F, LEVEL_ZETA, braid_T_matrix
from .qscalars import FIELD, ONE, QScalar, RootOfUnity, V, exp_coeff
from .rootdata import WeightVec
from .uqalg import QuantumGroup, UElem, ZetaUElem, format_weight
from .uqalg.element import Key

logger = get_logger(__name__)

EKey = Tuple[Key, WeightVec]

OMEGA_PARTS = (1, 2, "difference")


class EElem:
    """Σ φ ⊗ u ⊗ e(ν) in normal order, at the 𝔽-level or at ζ."""

    __slots__ = ("qg", "level", "rou", "terms")

    def __init__(self, qg: QuantumGroup, terms: Dict[EKey, AElem], level: str = LEVEL_F,
                 rou: Optional[RootOfUnity] = None):
        if level == LEVEL_ZETA and rou is None:
            raise ValueError("a ζ-level element needs its root of unity")
        self.qg = qg
        self.level = level
        self.rou = rou
        self.terms: Dict[EKey, AElem] = {
            (key, WeightVec(nu)): phi for (key, nu), phi in terms.items() if phi
        }

    def scalar(self, c: QScalar) -> Any:
        """An 𝔽-scalar read at this element's level."""
        return c if self.level == LEVEL_F else self.rou.specialize(c)

    def _check(self, other: "EElem") -> None:
        if self.level != other.level or self.rou != other.rou:
            raise QrootsError(f"level mismatch: {self.level} against {other.level}")

    def _like(self, terms: Dict[EKey, AElem]) -> "EElem":
        return EElem(self.qg, terms, self.level, self.rou)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "EElem") -> "EElem":
        self._check(other)
        out = dict(self.terms)
        for key, phi in other.terms.items():
            _accumulate(out, key, phi)
        return self._like(out)

    def __neg__(self) -> "EElem":
        return self._like({k: -phi for k, phi in self.terms.items()})

    def __sub__(self, other: "EElem") -> "EElem":
        return self + (-other)

    def scale(self, c: Any) -> "EElem":
        """Multiply by a scalar of this level's field."""
        return self._like({k: phi.scale(c) for k, phi in self.terms.items()})

    def __mul__(self, other: "EElem") -> "EElem":
        return multiply_e(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EElem):
            return NotImplemented
        return self.level == other.level and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.level, frozenset(self.terms)))

    def a_grades(self) -> List[WeightVec]:
        grades = {lam for phi in self.terms.values() for lam in phi.grades()}
        return sorted(grades, key=tuple)

    def specialize(self, rou: RootOfUnity) -> "EElem":
        if self.level != LEVEL_F:
            raise QrootsError("only 𝔽-level elements specialize")
        return EElem(self.qg, {k: phi.specialize(rou) for k, phi in self.terms.items()}, LEVEL_ZETA, rou)

    def __repr__(self) -> str:
        return f"EElem({self.level}, grades={[list(g) for g in self.a_grades()]}, terms={len(self.terms)})"


def _accumulate(out: Dict[Any, AElem], key: Any, phi: AElem) -> None:
    out[key] = out[key] + phi if key in out else phi


def _unit_key(qg: QuantumGroup) -> Key:
    return (qg.empty, qg.datum.zero(), qg.empty)


# Constructors

def e_zero(qg: QuantumGroup, level: str = LEVEL_F, rou: Optional[RootOfUnity] = None) -> EElem:
    return EElem(qg, {}, level, rou)


def e_one(qg: QuantumGroup, level: str = LEVEL_F, rou: Optional[RootOfUnity] = None) -> EElem:
    return lattice_element(qg, qg.datum.zero(), level, rou)


def from_a(phi: AElem) -> EElem:
    """φ ⊗ 1 ⊗ 1."""
    return EElem(phi.qg, {(_unit_key(phi.qg), phi.qg.datum.zero()): phi}, phi.level, phi.rou)


def from_u(u: Union[UElem, ZetaUElem], level: str = LEVEL_F, rou: Optional[RootOfUnity] = None) -> EElem:
    """1 ⊗ u ⊗ 1; at ζ the DK coordinates of u must be regular."""
    if isinstance(u, ZetaUElem):
        if u.form != "DK":
            raise QrootsError("E_ζ is built on the De Concini–Kac form")
        level, rou = LEVEL_ZETA, u.rou
        u = u.lift()
    qg = u.qg
    unit = one(qg, level, rou)
    zero = qg.datum.zero()
    terms = {}
    for key, c in u.terms.items():
        terms[(key, zero)] = unit.scale(c if level == LEVEL_F else rou.specialize(c))
    return EElem(qg, terms, level, rou)


def lattice_element(qg: QuantumGroup, nu: Sequence[int], level: str = LEVEL_F,
                    rou: Optional[RootOfUnity] = None) -> EElem:
    """1 ⊗ 1 ⊗ e(ν)."""
    return EElem(qg, {(_unit_key(qg), WeightVec(nu)): one(qg, level, rou)}, level, rou)


# Product

@lru_cache(maxsize=None)
def _coproduct_terms(qg: QuantumGroup, key: Key) -> Tuple[Tuple[Key, Key, QScalar], ...]:
    return tuple((k0, k1, c) for (k0, k1), c in qg.coproduct(qg.monomial(key)).terms.items())


@lru_cache(maxsize=None)
def _product_terms(qg: QuantumGroup, k1: Key, k2: Key) -> Tuple[Tuple[Key, QScalar], ...]:
    return tuple((qg.monomial(k1) * qg.monomial(k2)).terms.items())


def multiply_e(a: EElem, b: EElem) -> EElem:
    """(φ u e(ν))(ψ u′ e(ν′)) = Σ q^{(ν,μ)} φ(u₍₀₎·ψ_μ) ⊗ u₍₁₎u′ ⊗ e(ν+ν′)."""
    a._check(b)
    qg = a.qg
    datum = qg.datum
    out: Dict[EKey, AElem] = {}
    for (k1, nu1), phi in a.terms.items():
        cop = _coproduct_terms(qg, k1)
        for (k2, nu2), psi in b.terms.items():
            nu = nu1 + nu2
            for mu, psi_mu in psi.grade_components().items():
                shift = V ** datum.vexp(nu1, mu)
                for k0, k1p, c in cop:
                    moved = act(qg.monomial(k0), psi_mu)
                    if not moved:
                        continue
                    left = multiply_a(phi, moved)
                    if not left:
                        continue
                    for key, d in _product_terms(qg, k1p, k2):
                        _accumulate(out, (key, nu), left.scale(a.scalar(c * shift * d)))
    return EElem(qg, out, a.level, a.rou)


# Ω

def _homogeneous(phi: AElem) -> Tuple[WeightVec, WeightVec]:
    comps = phi.weight_components()
    if len(comps) != 1:
        raise QrootsError(f"Ω needs φ in a single A(λ)_ξ, got {len(comps)} components")
    (lam, xi), = comps
    return lam, xi


def _add_u_part(out: Dict[EKey, AElem], moved: AElem, u: UElem, nu: WeightVec) -> None:
    for key, c in u.terms.items():
        _accumulate(out, (key, nu), moved.scale(c))


def omega_part(phi: AElem, which: int, integral: bool = False) -> EElem:
    """Ω₁(φ) = Σ (y_p·φ) x_p k_{−ξ} e(λ) or Ω₂(φ) = Σ ((Sx_p)·φ) y_p k_{β_p} k_ξ e(−λ).

    With `integral` the dual bases are taken in the renormalizations with
    y_p = f^{(n)} (for Ω₁) and x_p = e^{(m)} (for Ω₂), so that Ω(φ) ∈ E_𝔸
    for φ ∈ A_𝔸.
    """
    qg = phi.qg
    datum = qg.datum
    if not phi:
        return e_zero(qg, LEVEL_F)
    lam, xi = _homogeneous(phi)
    out: Dict[EKey, AElem] = {}
    if which == 1:
        norm = Normalization.LUSZTIG_F if integral else Normalization.PLAIN
        lowest = datum.act(datum.w0_word, lam)
        for bases in dual_bases_up_to(qg, datum.ht(xi - lowest), norm):
            for x, y, _ in bases.pairs():
                moved = act(y, phi)
                if moved:
                    _add_u_part(out, moved, x * qg.k(-xi), lam)
    elif which == 2:
        norm = Normalization.LUSZTIG_E if integral else Normalization.PLAIN
        for bases in dual_bases_up_to(qg, datum.ht(lam - xi), norm):
            for x, y, beta in bases.pairs():
                moved = act(qg.antipode(x), phi)
                if moved:
                    _add_u_part(out, moved, y * qg.k(beta + xi), -lam)
    else:
        raise ValueError(f"Ω part must be 1 or 2, got {which!r}")
    return EElem(qg, out, LEVEL_F)


def omega(phi: AElem, which: Union[int, str] = "difference", integral: bool = False) -> EElem:
    """Ω₁(φ), Ω₂(φ) or Ω(φ) = Ω₁(φ) − Ω₂(φ) for homogeneous φ.

    A ζ-level φ is lifted to A_𝔸, Ω is taken with the integral dual bases and
    the result is specialized.
    """
    if which not in OMEGA_PARTS:
        raise ValueError(f"which must be one of {OMEGA_PARTS}, got {which!r}")
    if phi.level == LEVEL_ZETA:
        lifted = lift_a(phi)
        return omega(lifted, which, integral=True).specialize(phi.rou)
    if which == "difference":
        return omega_part(phi, 1, integral) - omega_part(phi, 2, integral)
    return omega_part(phi, which, integral)


# Operators on windows of A

def _zero_a(qg: QuantumGroup, level: str, rou: Optional[RootOfUnity]) -> AElem:
    return AElem(qg, {}, level, rou)


def _component(qg: QuantumGroup, mu: WeightVec, level: str, rou: Optional[RootOfUnity]) -> AComponent:
    try:
        return a_component(qg, mu, level, rou)
    except DegreeBoundError as exc:
        grade = format_weight(mu, qg.datum)
        raise WindowError(f"window grade {grade} is out of reach: {exc.message}") from exc


class DOp:
    """An operator on a window ⊕_{μ ∈ window} A(μ), stored as images of the window's bases."""

    def __init__(self, qg: QuantumGroup, window: Sequence[Sequence[int]], fn: Callable[[AElem], AElem],
                 level: str = LEVEL_F, rou: Optional[RootOfUnity] = None, name: str = ""):
        self.qg = qg
        self.window = tuple(WeightVec(mu) for mu in window)
        self.level = level
        self.rou = rou
        self.fn = fn
        self.name = name
        self.images: Dict[WeightVec, List[AElem]] = {}
        for mu in self.window:
            if not mu.is_dominant():
                raise WindowError(f"window grade {format_weight(mu, qg.datum)} is not dominant")
            comp = _component(qg, mu, level, rou)
            self.images[mu] = [fn(b) for b in comp.basis]

    def __call__(self, psi: AElem) -> AElem:
        return self.fn(psi)

    def _combine(self, other: "DOp", fn: Callable[[AElem], AElem], images: Dict[WeightVec, List[AElem]],
                 name: str) -> "DOp":
        out = DOp.__new__(DOp)
        out.qg, out.window, out.level, out.rou = self.qg, self.window, self.level, self.rou
        out.fn, out.name, out.images = fn, name, images
        return out

    def _same_window(self, other: "DOp") -> None:
        if self.window != other.window or self.level != other.level:
            raise WindowError("operators live on different windows")

    def __add__(self, other: "DOp") -> "DOp":
        self._same_window(other)
        images = {mu: [x + y for x, y in zip(self.images[mu], other.images[mu])] for mu in self.window}
        return self._combine(other, lambda psi: self.fn(psi) + other.fn(psi), images,
                             f"({self.name}+{other.name})")

    def __sub__(self, other: "DOp") -> "DOp":
        self._same_window(other)
        images = {mu: [x - y for x, y in zip(self.images[mu], other.images[mu])] for mu in self.window}
        return self._combine(other, lambda psi: self.fn(psi) - other.fn(psi), images,
                             f"({self.name}-{other.name})")

    def scale(self, c: Any) -> "DOp":
        images = {mu: [x.scale(c) for x in xs] for mu, xs in self.images.items()}
        return self._combine(self, lambda psi: self.fn(psi).scale(c), images, self.name)

    def compose(self, other: "DOp") -> "DOp":
        """self ∘ other."""
        self._same_window(other)
        images = {mu: [self.fn(x) for x in xs] for mu, xs in other.images.items()}
        return self._combine(other, lambda psi: self.fn(other.fn(psi)), images,
                             f"{self.name}∘{other.name}")

    def is_zero(self) -> bool:
        return not any(x for xs in self.images.values() for x in xs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DOp):
            return NotImplemented
        return self.window == other.window and self.images == other.images

    def __hash__(self) -> int:
        return hash((self.window, self.name))

    def rank(self) -> int:
        """Rank of the operator on the whole window."""
        vectors = [x for mu in self.window for x in self.images[mu]]
        keys = sorted({k for x in vectors for k in x.values}, key=lambda k: (tuple(k[0]), tuple(k[1])))
        if not keys:
            return 0
        dom = FIELD if self.level == LEVEL_F else self.rou.domain
        rows = [[x.values.get(k, dom.zero) for k in keys] for x in vectors]
        return rank(rows, dom, len(keys))

    @property
    def window_dim(self) -> int:
        return sum(len(xs) for xs in self.images.values())

    def __repr__(self) -> str:
        return f"DOp({self.name or '?'}, window={[list(w) for w in self.window]})"


def apply_e(a: EElem, psi: AElem) -> AElem:
    """The image of a under E → End(A): φ ⊗ u ⊗ e(ν) ↦ ℓ_φ ∂_u σ_ν."""
    qg = a.qg
    out = _zero_a(qg, a.level, a.rou)
    for mu, part in psi.grade_components().items():
        for (key, nu), phi in a.terms.items():
            moved = act(qg.monomial(key), part)
            if moved:
                out = out + multiply_a(phi, moved).scale(a.scalar(V ** qg.datum.vexp(nu, mu)))
    return out


def as_operator(a: EElem, window: Sequence[Sequence[int]]) -> DOp:
    return DOp(a.qg, window, lambda psi: apply_e(a, psi), a.level, a.rou, name="E")


def ell_operator(phi: AElem, window: Sequence[Sequence[int]]) -> DOp:
    """ℓ_φ: ψ ↦ φψ."""
    return DOp(phi.qg, window, lambda psi: multiply_a(phi, psi), phi.level, phi.rou, name="ℓ")


def r_operator(phi: AElem, window: Sequence[Sequence[int]]) -> DOp:
    """r_φ: ψ ↦ ψφ."""
    return DOp(phi.qg, window, lambda psi: multiply_a(psi, phi), phi.level, phi.rou, name="r")


def partial_operator(u: Union[UElem, ZetaUElem], window: Sequence[Sequence[int]], level: str = LEVEL_F,
                     rou: Optional[RootOfUnity] = None) -> DOp:
    """∂_u: ψ ↦ u·ψ."""
    if isinstance(u, ZetaUElem):
        level, rou = LEVEL_ZETA, u.rou
    return DOp(u.qg, window, lambda psi: act(u, psi), level, rou, name="∂")


def sigma_operator(qg: QuantumGroup, lam: Sequence[int], window: Sequence[Sequence[int]],
                   level: str = LEVEL_F, rou: Optional[RootOfUnity] = None) -> DOp:
    """σ_λ: ψ ↦ q^{(λ,μ)} ψ on A(μ)."""
    lam = WeightVec(lam)

    def fn(psi: AElem) -> AElem:
        out = _zero_a(qg, level, rou)
        for mu, part in psi.grade_components().items():
            k = qg.datum.vexp(lam, mu)
            out = out + part.scale(V ** k if level == LEVEL_F else rou.zpow(k))
        return out

    return DOp(qg, window, fn, level, rou, name="σ")


# Checks on windows

def rphi_agreement(phi: AElem, window: Sequence[Sequence[int]]) -> Dict[str, Any]:
    """Compare r_φ with the operators of Ω₁(φ) and Ω₂(φ) on the window."""
    right = r_operator(phi, window)
    first = as_operator(omega(phi, 1), window)
    second = as_operator(omega(phi, 2), window)
    return {
        "first": first == right,
        "second": second == right,
        "ok": first == right and second == right,
        "window_dim": right.window_dim,
    }


def operator_relation_defects(u: UElem, phi: AElem, lam: Sequence[int],
                              window: Sequence[Sequence[int]]) -> List[str]:
    """Names of the defining relations of D that fail for (u, φ, λ) on the window."""
    qg = phi.qg
    failures = []
    lhs = partial_operator(u, window).compose(ell_operator(phi, window))
    rhs = DOp(qg, window, lambda psi: _zero_a(qg, LEVEL_F, None), name="0")
    for (k0, k1), c in qg.coproduct(u).terms.items():
        moved = act(qg.monomial(k0), phi)
        if moved:
            rhs = rhs + ell_operator(moved, window).compose(partial_operator(qg.monomial(k1, c), window))
    if lhs != rhs:
        failures.append("partial-ell")
    sig = sigma_operator(qg, lam, window)
    for mu, part in phi.grade_components().items():
        factor = V ** qg.datum.vexp(lam, mu)
        left = sig.compose(ell_operator(part, window))
        right = ell_operator(part, window).compose(sig).scale(factor)
        if left != right:
            failures.append("sigma-ell")
            break
    d = partial_operator(u, window)
    if d.compose(sig) != sig.compose(d):
        failures.append("partial-sigma")
    return failures


def zeta_kernel_witness(qg: QuantumGroup, rou: RootOfUnity, window: Sequence[Sequence[int]],
                        i: int = 0) -> Dict[str, Any]:
    """e_i^ℓ is nonzero in E_ζ(0) ≅ D′_ζ(0) but acts by zero on A_ζ."""
    u = qg.e(i) ** rou.ell
    elem = from_u(u, LEVEL_ZETA, rou)
    op = as_operator(elem, window)
    return {"nonzero_in_dprime": bool(elem), "acts_by_zero": op.is_zero(), "ok": bool(elem) and op.is_zero()}


# D′ on windows

def _ekey_order(key: Tuple[Key, WeightVec, Any]) -> Tuple:
    (fm, lam, em), nu, (alam, mono) = key
    return (tuple(fm), tuple(lam), tuple(em), tuple(nu), tuple(alam), tuple(mono))


def _flatten(a: EElem) -> Dict[Tuple, Any]:
    return {(key, nu, akey): c for (key, nu), phi in a.terms.items() for akey, c in phi.values.items()}


@dataclass
class DPrimeIdealWindow:
    """The span of ψ·Ω(b)·u·e(ν) for b in bases of A(λ), λ ∈ generator_grades.

    ψ runs over bases of A(μ) for μ ∈ left_grades, u over u_elems, ν over nus.
    """

    qg: QuantumGroup
    generator_grades: Tuple[WeightVec, ...]
    level: str = LEVEL_F
    rou: Optional[RootOfUnity] = None
    left_grades: Tuple[WeightVec, ...] = ()
    u_elems: Tuple[UElem, ...] = ()
    nus: Tuple[WeightVec, ...] = ()
    _rows: Optional[List[Dict[Tuple, Any]]] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        zero = self.qg.datum.zero()
        self.generator_grades = tuple(WeightVec(g) for g in self.generator_grades)
        self.left_grades = tuple(WeightVec(g) for g in self.left_grades) or (zero,)
        self.u_elems = tuple(self.u_elems) or (self.qg.one(),)
        self.nus = tuple(WeightVec(n) for n in self.nus) or (zero,)

    @property
    def domain(self) -> Any:
        return FIELD if self.level == LEVEL_F else self.rou.domain

    def spanning_set(self) -> List[EElem]:
        qg, level, rou = self.qg, self.level, self.rou
        omegas = []
        for lam in self.generator_grades:
            for b in _component(qg, lam, level, rou).basis:
                w = omega(b)
                if w:
                    omegas.append(w)
        rights = [
            multiply_e(from_u(u, level, rou), lattice_element(qg, nu, level, rou))
            for u in self.u_elems for nu in self.nus
        ]
        out = []
        for mu in self.left_grades:
            for psi in _component(qg, mu, level, rou).basis:
                left = from_a(psi)
                for w in omegas:
                    lw = multiply_e(left, w)
                    for r in rights:
                        x = multiply_e(lw, r)
                        if x:
                            out.append(x)
        logger.debug("D′ ideal window spanned", generators=len(omegas), elements=len(out),
                     level=level)
        return out

    def _pivot_rows(
        self, extra_keys: Iterable[Tuple]
    ) -> Tuple[List[Tuple], List[List[Any]], Tuple[int, ...]]:
        if self._rows is None:
            self._rows = [_flatten(x) for x in self.spanning_set()]
        keys = sorted({k for row in self._rows for k in row} | set(extra_keys), key=_ekey_order)
        dom = self.domain
        rows = [[row.get(k, dom.zero) for k in keys] for row in self._rows]
        if not rows:
            return keys, [], ()
        reduced, pivots = rref(rows, dom, len(keys))
        return keys, reduced, pivots

    def reduce(self, a: EElem) -> EElem:
        """The normal form of a modulo the window's span."""
        if a.level != self.level:
            raise QrootsError(f"level mismatch: {a.level} against {self.level}")
        flat = _flatten(a)
        keys, reduced, pivots = self._pivot_rows(flat)
        dom = self.domain
        vec = [flat.get(k, dom.zero) for k in keys]
        for row, p in zip(reduced, pivots):
            c = vec[p]
            if c:
                vec = [x - c * y for x, y in zip(vec, row)]
        terms: Dict[EKey, Dict[Any, Any]] = {}
        for (key, nu, akey), c in zip(keys, vec):
            if c:
                terms.setdefault((key, nu), {})[akey] = c
        return EElem(self.qg, {k: AElem(self.qg, v, self.level, self.rou) for k, v in terms.items()},
                     self.level, self.rou)

    def contains(self, a: EElem) -> bool:
        return not self.reduce(a)


def default_window(a: EElem) -> DPrimeIdealWindow:
    """Generators in the nonzero A-grades of a, with ψ = 1, u = 1 and ν = 0."""
    grades = tuple(g for g in a.a_grades() if not g.is_zero())
    return DPrimeIdealWindow(a.qg, grades, a.level, a.rou)


def dprime_reduce(a: EElem, window: Optional[DPrimeIdealWindow] = None) -> EElem:
    return (window or default_window(a)).reduce(a)


def omega_identity_defects(phi: AElem, psi: AElem, u: UElem, which: int = 1) -> List[str]:
    """The Ω identities as exact equalities in E; names of the failing ones.

    e(μ)Ω_i(φ) = Ω_i(φ)e(μ), ψΩ_i(φ) = Ω_i(φ)ψ, uΩ_i(φ) = Σ Ω_i(u₍₁₎·φ)u₍₀₎ and
    Ω_i(φψ) = Ω_i(ψ)Ω_i(φ).
    """
    qg = phi.qg
    level, rou = phi.level, phi.rou
    failures = []
    w = omega(phi, which)
    lam, _ = _homogeneous(phi)
    mu = qg.datum.fundamental(0)
    e_mu = lattice_element(qg, mu, level, rou)
    if multiply_e(e_mu, w) != multiply_e(w, e_mu).scale(w.scalar(V ** qg.datum.vexp(lam, mu))):
        failures.append("lattice")
    a_psi = from_a(psi)
    if multiply_e(a_psi, w) != multiply_e(w, a_psi):
        failures.append("coordinate")
    lhs = multiply_e(from_u(u, level, rou), w)
    rhs = e_zero(qg, level, rou)
    for (k0, k1), c in qg.coproduct(u).terms.items():
        moved = act(qg.monomial(k1), phi)
        if moved:
            rhs = rhs + multiply_e(omega(moved, which), from_u(qg.monomial(k0, c), level, rou))
    if lhs != rhs:
        failures.append("enveloping")
    if omega(multiply_a(phi, psi), which) != multiply_e(omega(psi, which), w):
        failures.append("anti-multiplicative")
    return failures


# Braid ⋆-action

def _t_on_a(i: int, sign: int, phi: AElem) -> AElem:
    """T_i^{±1} on A through the module structure of each A(λ)."""
    qg = phi.qg
    out = _zero_a(qg, phi.level, phi.rou)
    for lam, part in phi.grade_components().items():
        comp = a_component(qg, lam, phi.level, phi.rou)
        coords = comp.coordinates(part)
        if coords is None:
            raise QrootsError(f"element is not in A({format_weight(lam, qg.datum)})")
        image = matvec(braid_T_matrix(comp.module, i, sign=sign), coords, comp.domain)
        out = out + comp.combine(image)
    return out


def star_series(qg: QuantumGroup, i: int, sign: int, n: int) -> Tuple[UElem, UElem]:
    """The n-th term a_n ⊗ b_n of the exp_q series defining T_i^{±1}⋆ on A.

    T_i: exp_{q_i}((q_i − q_i^{-1}) k_i^{-1}e_i ⊗ f_ik_i);
    T_i^{-1}: exp_{q_i^{-1}}(−(q_i − q_i^{-1}) f_i ⊗ e_i).
    The 1/[n]! stays on the A side, where it meets a divided power.
    """
    qi = V ** qg.datum.qi_vexp(i)
    gap = qi - ONE / qi
    if sign > 0:
        a = (qg.ki(i, -1) * qg.e(i)) ** n * exp_coeff(n, qi) if n else qg.one()
        b = (qg.f(i) * qg.ki(i)) ** n * gap**n if n else qg.one()
    else:
        a = qg.f(i) ** n * exp_coeff(n, ONE / qi) if n else qg.one()
        b = qg.e(i) ** n * (-gap) ** n if n else qg.one()
    return a, b


def _series_bound(phi: AElem, i: int) -> int:
    bound = 0
    for lam in phi.grades():
        bound = max(bound, a_component(phi.qg, lam, phi.level, phi.rou).module.divided_bound(i))
    return bound


def star_a(i: int, sign: int, phi: AElem) -> EElem:
    """T_i^{±1}⋆φ = Σ_n (a_n·T_i^{±1}(φ)) ⊗ b_n."""
    qg = phi.qg
    image = _t_on_a(i, sign, phi)
    out = e_zero(qg, phi.level, phi.rou)
    for n in range(_series_bound(phi, i) + 1):
        a, b = star_series(qg, i, sign, n)
        moved = act(a, image)
        if moved:
            out = out + multiply_e(from_a(moved), from_u(b, phi.level, phi.rou))
    return out


def braid_star(i: int, sign: int, a: EElem) -> EElem:
    """T_i^{±1}⋆a: φ ↦ Σ (a_n·Tφ) ⊗ b_n, u ↦ T(u), e(ν) ↦ e(ν), extended multiplicatively."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    qg = a.qg
    out = e_zero(qg, a.level, a.rou)
    for (key, nu), phi in a.terms.items():
        tu = qg.braid_T(i, sign, qg.monomial(key))
        right = multiply_e(from_u(tu, a.level, a.rou), lattice_element(qg, nu, a.level, a.rou))
        out = out + multiply_e(star_a(i, sign, phi), right)
    return out


def braid_star_word(word: Sequence[int], a: EElem, sign: int = 1) -> EElem:
    """T_{i1}⋯T_{ir}⋆a (rightmost first)."""
    out = a
    for i in reversed(tuple(word)):
        out = braid_star(i, sign, out)
    return out


def delta_t_series(qg: QuantumGroup, i: int, sign: int, n: int) -> Tuple[UElem, UElem]:
    """The n-th term c_n ⊗ d_n of (ΔT)(T^{-1} ⊗ T^{-1}) for T = T_i^{±1}."""
    qi = V ** qg.datum.qi_vexp(i)
    gap = qi - ONE / qi
    if not n:
        return qg.one(), qg.one()
    if sign > 0:
        c = (qg.e(i) * qg.ki(i, -1)) ** n * (exp_coeff(n, qi) * (gap / qi**2) ** n)
        d = (qg.f(i) * qg.ki(i)) ** n
    else:
        c = qg.f(i) ** n * (exp_coeff(n, ONE / qi) * (-gap) ** n)
        d = qg.e(i) ** n
    return c, d


def braid_star_omega_rhs(i: int, sign: int, phi: AElem, which: Union[int, str] = "difference") -> EElem:
    """Σ_n Ω(d_n·T(φ)) c_n, the predicted value of T⋆Ω(φ) (𝔽-level)."""
    if phi.level != LEVEL_F:
        raise QrootsError("the T⋆Ω expansion is taken at the 𝔽-level")
    qg = phi.qg
    image = _t_on_a(i, sign, phi)
    out = e_zero(qg)
    for n in range(_series_bound(phi, i) + 1):
        c, d = delta_t_series(qg, i, sign, n)
        moved = act(d, image)
        for part in moved.weight_components().values():
            out = out + multiply_e(omega(part, which), from_u(c))
    return out


def braid_star_ideal_witness(i: int, sign: int, phi: AElem) -> Dict[str, Any]:
    """T⋆Ω(φ) against its Ω-expansion (𝔽) and against the D′ window (the level of φ)."""
    qg = phi.qg
    lam, _ = _homogeneous(phi)
    lifted = lift_a(phi) if phi.level == LEVEL_ZETA else phi
    lhs_f = braid_star(i, sign, omega(lifted))
    exact = lhs_f == braid_star_omega_rhs(i, sign, lifted)
    lhs = braid_star(i, sign, omega(phi))
    bound = _series_bound(phi, i)
    u_elems = tuple(
        (qg.e(i) * qg.ki(i, -1)) ** n if sign > 0 else qg.f(i) ** n
        for n in range(bound + 1)
    )
    window = DPrimeIdealWindow(qg, (lam,), phi.level, phi.rou, u_elems=u_elems)
    in_ideal = window.contains(lhs)
    return {"exact": exact, "in_ideal": in_ideal, "ok": exact and in_ideal}


# Localized identities

def _proportional(left: AElem, right: AElem) -> Any:
    """r with left = r·right, or None."""
    if not right:
        return None
    key = next(iter(right.values))
    r = left.values.get(key)
    if r is None:
        return None
    r = r / right.values[key]
    return r if left == right.scale(r) else None


def local_identity_sides(
    lam: Sequence[int], gamma: Sequence[int], phi: AElem, s: AElem
) -> Tuple[EElem, EElem]:
    """Both sides of the localized identity for φ ∈ A_ζ(λ)_{λ−γ}, multiplied on the left by s.

    Left: Σ_p ζ^{(λ,β_p)} (s ψ_p s^{-1}) y_p k_{β_p} with ψ_p = (Sx^L_p)·φ.
    Right: ζ^{(λ,γ)} Σ_p (y^L_p·φ) x_p k_{−2(λ−γ)} e(2λ).
    Each s ψ_p s^{-1} is the scalar multiple r_p ψ_p read off s ψ_p = r_p ψ_p s.
    """
    qg = phi.qg
    rou = phi.rou
    datum = qg.datum
    lam, gamma = WeightVec(lam), WeightVec(gamma)
    if phi.level != LEVEL_ZETA or s.level != LEVEL_ZETA:
        raise QrootsError("the localized identity is stated at ζ")
    xi = lam - gamma
    if list(s.weight_components()) != [(lam, lam)]:
        raise QrootsError(f"s must be a nonzero vector of A_ζ(λ)_λ for λ = {format_weight(lam, datum)}")
    if phi and list(phi.weight_components()) != [(lam, xi)]:
        raise QrootsError("φ must lie in A_ζ(λ)_{λ−γ}")
    lifted = lift_a(phi)
    left: Dict[EKey, AElem] = {}
    zero = datum.zero()
    for bases in dual_bases_up_to(qg, datum.ht(gamma), Normalization.LUSZTIG_E):
        for x, y, beta in bases.pairs():
            moved = act(qg.antipode(x), lifted)
            if not moved:
                continue
            psi = moved.specialize(rou)
            r = _proportional(multiply_a(s, psi), multiply_a(psi, s))
            if r is None:
                raise QrootsError("s does not q-commute with a weight vector of A_ζ(λ)")
            coef = r * rou.zpow(datum.vexp(lam, beta))
            for key, c in (y * qg.k(beta)).terms.items():
                _accumulate(left, (key, zero), psi.scale(coef * rou.specialize(c)))
    lhs = EElem(qg, left, LEVEL_ZETA, rou)
    tail = multiply_e(from_u(qg.k(-xi), LEVEL_ZETA, rou), lattice_element(qg, lam, LEVEL_ZETA, rou))
    rhs = multiply_e(omega(phi, 1), tail).scale(rou.zpow(datum.vexp(lam, gamma)))
    return lhs, rhs


def local_identity_check(lam: Sequence[int], gamma: Sequence[int], phi: AElem, s: AElem,
                         window: Optional[DPrimeIdealWindow] = None) -> bool:
    """Equality of both localized sides in D′_ζ, decided on a degree window.

    Left multiplication by s is invertible after localization, so the sides are
    compared after clearing s^{-1}. The default window has the generators of
    A_ζ(λ), u = k_{−(λ−γ)} and ν = λ.
    """
    lhs, rhs = local_identity_sides(lam, gamma, phi, s)
    lam, gamma = WeightVec(lam), WeightVec(gamma)
    if window is None:
        qg = phi.qg
        window = DPrimeIdealWindow(
            qg, (lam,), LEVEL_ZETA, phi.rou, u_elems=(qg.k(gamma - lam),), nus=(lam,)
        )
    ok = window.contains(lhs - rhs)
    logger.debug("Local identity evaluated", weight=list(lam), gamma=list(gamma), ok=ok)
    return ok
