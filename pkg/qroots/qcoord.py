"""
The graded coordinate ring A = ⊕_λ A(λ) of the quantized flag manifold.

An element of A(λ) is the matrix coefficient x ↦ ⟨v_λ*, x m⟩ of some m in
L_−(λ). Such a function vanishes on f_i·U and is determined by its values on
the divided PBW monomials e^{(E)}, so an `AElem` stores exactly those values,
keyed by (λ, E). The same storage serves the 𝔽-level (values in Q(v)) and the
ζ-level (values in Q(ζ′)); 𝔸-integrality is integrality of the values.

Products come from the coproduct of e^{(N)}, the left action from
⟨u·φ, x⟩ = ⟨φ, x u⟩. Both stay inside U_𝔸^L, so at ζ every scalar is
specialized only after the terms sharing a divided monomial are collected.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DegreeBoundError, QrootsError, UnsupportedTypeError
from .linalg import coordinates, inverse, lattice_span, matvec, rank, transpose
from .logging_config import get_logger
from .qreps import (
    LEVEL_F,
    LEVEL_ZETA,
    LatticeBasis,
    WeightModule,
    braid_word_matrix,
    classical_lattice,
    simple_fd,
)
from .qscalars import FIELD, ONE, QScalar, RootOfUnity, V
from .rootdata import WeightVec
from .uqalg import QuantumGroup, UElem, ZetaUElem, format_weight
from .uqalg.element import Key, Mono
from .uqalg.words import Grade, grades_up_to

logger = get_logger(__name__)

LEVEL_A = "A"

AKey = Tuple[WeightVec, Mono]


class AElem:
    """A finite sum of homogeneous pieces of A, stored as values on e^{(E)}."""

    __slots__ = ("qg", "level", "rou", "values")

    def __init__(self, qg: QuantumGroup, values: Dict[AKey, Any], level: str = LEVEL_F,
                 rou: Optional[RootOfUnity] = None):
        if level == LEVEL_ZETA and rou is None:
            raise ValueError("a ζ-level element needs its root of unity")
        self.qg = qg
        self.level = level
        self.rou = rou
        self.values: Dict[AKey, Any] = {
            (WeightVec(lam), tuple(mono)): c for (lam, mono), c in values.items() if c
        }

    @property
    def domain(self) -> Any:
        return FIELD if self.level == LEVEL_F else self.rou.domain

    def _check(self, other: "AElem") -> None:
        if self.level != other.level or self.rou != other.rou:
            raise QrootsError(f"level mismatch: {self.level} against {other.level}")

    def _like(self, values: Dict[AKey, Any]) -> "AElem":
        return AElem(self.qg, values, self.level, self.rou)

    def __bool__(self) -> bool:
        return bool(self.values)

    def __add__(self, other: "AElem") -> "AElem":
        self._check(other)
        out = dict(self.values)
        for key, c in other.values.items():
            out[key] = out[key] + c if key in out else c
        return self._like(out)

    def __neg__(self) -> "AElem":
        return self._like({k: -c for k, c in self.values.items()})

    def __sub__(self, other: "AElem") -> "AElem":
        return self + (-other)

    def scale(self, c: Any) -> "AElem":
        return self._like({k: c * x for k, x in self.values.items()})

    def __mul__(self, other: "AElem") -> "AElem":
        return multiply_a(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AElem):
            return NotImplemented
        return self.level == other.level and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.level, frozenset(self.values)))

    def grades(self) -> List[WeightVec]:
        """The λ with a nonzero A(λ)-component."""
        return sorted({lam for lam, _ in self.values}, key=tuple)

    def key_weight(self, key: AKey) -> WeightVec:
        lam, mono = key
        return lam - self.qg.key_weight((self.qg.empty, self.qg.datum.zero(), mono))

    def grade_components(self) -> Dict[WeightVec, "AElem"]:
        out: Dict[WeightVec, Dict[AKey, Any]] = {}
        for key, c in self.values.items():
            out.setdefault(key[0], {})[key] = c
        return {lam: self._like(v) for lam, v in out.items()}

    def weight_components(self) -> Dict[Tuple[WeightVec, WeightVec], "AElem"]:
        """Pieces in A(λ)_ξ keyed by (λ, ξ)."""
        out: Dict[Tuple[WeightVec, WeightVec], Dict[AKey, Any]] = {}
        for key, c in self.values.items():
            out.setdefault((key[0], self.key_weight(key)), {})[key] = c
        return {k: self._like(v) for k, v in out.items()}

    def is_integral(self, rou: RootOfUnity) -> bool:
        if self.level != LEVEL_F:
            raise QrootsError("integrality is read off 𝔽-level values")
        return all(rou.regular(c) for c in self.values.values())

    def specialize(self, rou: RootOfUnity) -> "AElem":
        if self.level != LEVEL_F:
            raise QrootsError("only 𝔽-level elements specialize")
        return AElem(self.qg, {k: rou.specialize(c) for k, c in self.values.items()}, LEVEL_ZETA, rou)

    def __repr__(self) -> str:
        return f"AElem({self.level}, grades={[list(g) for g in self.grades()]}, terms={len(self.values)})"


def one(qg: QuantumGroup, level: str = LEVEL_F, rou: Optional[RootOfUnity] = None) -> AElem:
    unit = rou.domain.one if level == LEVEL_ZETA else ONE
    return AElem(qg, {(qg.datum.zero(), qg.empty): unit}, level, rou)


# Scalars shared by products and actions

def _divided_e(qg: QuantumGroup, mono: Mono) -> UElem:
    return qg.monomial((qg.empty, qg.datum.zero(), mono), ONE / qg.pbw.lusztig_factor(mono))


@lru_cache(maxsize=None)
def divided_coproduct(
    qg: QuantumGroup, mono: Mono
) -> Tuple[Tuple[WeightVec, Mono, WeightVec, Mono, QScalar], ...]:
    """Δ(e^{(N)}) = Σ c · k_μ e^{(E′)} ⊗ k_ν e^{(E″)} as (μ, E′, ν, E″, c)."""
    out = []
    for (left, right), c in qg.coproduct(_divided_e(qg, mono)).terms.items():
        fl, mu, el = left
        fr, nu, er = right
        if any(fl) or any(fr):
            raise QrootsError("coproduct of U^+ left U^{≥0}")
        coeff = c * qg.pbw.lusztig_factor(el) * qg.pbw.lusztig_factor(er)
        out.append((mu, el, nu, er, coeff))
    return tuple(out)


def _collect(level: str, rou: Optional[RootOfUnity], groups: Dict[Any, QScalar]) -> Dict[Any, Any]:
    """Specialize collected 𝔽-scalars at ζ; at the 𝔽-level pass them through."""
    if level == LEVEL_F:
        return {k: c for k, c in groups.items() if c}
    return {k: rou.specialize(c) for k, c in groups.items() if c}


def _dot(level: str, rou: Optional[RootOfUnity], weights: Dict[Any, QScalar], values: Dict[Any, Any]) -> Any:
    """Σ weights[k]·values[k] with weights specialized at ζ when needed."""
    collected = _collect(level, rou, weights)
    zero = FIELD.zero if level == LEVEL_F else rou.domain.zero
    total = zero
    for k, w in collected.items():
        x = values.get(k)
        if x:
            total = total + w * x
    return total


# Pairing, product, action

def _plain_pairing(phi: AElem, terms: Iterable[Tuple[Key, QScalar]]) -> Any:
    """⟨φ, Σ c f_F k_μ e_E⟩ = Σ_{F=∅} c q^{(λ,μ)} [E]! φ(e^{(E)}), grouped by (λ, E)."""
    qg = phi.qg
    groups: Dict[AKey, QScalar] = {}
    lams = {lam for lam, _ in phi.values}
    for (fm, mu, em), c in terms:
        if any(fm):
            continue
        factor = c * qg.pbw.lusztig_factor(em)
        for lam in lams:
            if (lam, em) in phi.values:
                key = (lam, em)
                groups[key] = groups.get(key, FIELD.zero) + factor * V ** qg.datum.vexp(lam, mu)
    return _dot(phi.level, phi.rou, groups, phi.values)


def hopf_pair(phi: AElem, u: Any) -> Any:
    """⟨φ, u⟩ for u ∈ U (𝔽-level) or u ∈ U_ζ (ζ-level, through an integral lift)."""
    if isinstance(u, ZetaUElem):
        if phi.level != LEVEL_ZETA or u.rou != phi.rou:
            raise QrootsError("level mismatch: a ζ-element pairs with ζ-level A")
        u = u.lift()
    return _plain_pairing(phi, u.terms.items())


def multiply_a(phi: AElem, psi: AElem) -> AElem:
    """φψ through ⟨φψ, e^{(N)}⟩ = ⟨φ⊗ψ, Δe^{(N)}⟩."""
    phi._check(psi)
    qg = phi.qg
    datum = qg.datum
    out: Dict[AKey, Any] = {}
    for (lam, gam), a in phi.weight_components().items():
        for (mu, eta), b in psi.weight_components().items():
            grade = datum.alpha_coords((lam + mu) - (gam + eta))
            target = lam + mu
            for mono in _grade_monos(qg, grade):
                groups: Dict[Tuple[Mono, Mono], QScalar] = {}
                for m1, e1, m2, e2, c in divided_coproduct(qg, mono):
                    if (lam, e1) in a.values and (mu, e2) in b.values:
                        w = c * V ** (datum.vexp(lam, m1) + datum.vexp(mu, m2))
                        groups[(e1, e2)] = groups.get((e1, e2), FIELD.zero) + w
                value = None
                for (e1, e2), w in _collect(phi.level, phi.rou, groups).items():
                    term = w * a.values[(lam, e1)] * b.values[(mu, e2)]
                    value = term if value is None else value + term
                if value:
                    key = (target, mono)
                    out[key] = out[key] + value if key in out else value
    return AElem(qg, out, phi.level, phi.rou)


def act(u: Any, phi: AElem) -> AElem:
    """The left action ⟨u·φ, x⟩ = ⟨φ, x u⟩."""
    qg = phi.qg
    datum = qg.datum
    if isinstance(u, ZetaUElem):
        if phi.level != LEVEL_ZETA:
            raise QrootsError("level mismatch: a ζ-element acts on ζ-level A")
        u = u.lift()
    by_weight: Dict[WeightVec, UElem] = {}
    for key, c in u.terms.items():
        beta = qg.key_weight(key)
        by_weight[beta] = by_weight.get(beta, qg.zero()) + qg.monomial(key, c)
    out: Dict[AKey, Any] = {}
    for (lam, xi), part in phi.weight_components().items():
        for beta, piece in by_weight.items():
            coords = datum.alpha_coords(lam - (xi + beta))
            if any(c < 0 for c in coords):
                continue
            for mono in _grade_monos(qg, coords):
                value = _plain_pairing(part, (_divided_e(qg, mono) * piece).terms.items())
                if value:
                    key = (lam, mono)
                    out[key] = out[key] + value if key in out else value
    return AElem(qg, out, phi.level, phi.rou)


def _grade_monos(qg: QuantumGroup, grade: Sequence[int]) -> List[Mono]:
    grade = tuple(grade)
    if any(c < 0 for c in grade):
        return []
    return list(qg.grade_monos(grade))


# Graded pieces

@dataclass
class AComponent:
    """A(λ) at one level: a basis of AElems and the U-module it carries.

    `module` acts on coordinates against `basis`: u·basis[j] = Σ_r M(u)[r][j] basis[r].
    """

    qg: QuantumGroup
    lam: WeightVec
    level: str
    basis: List[AElem]
    module: WeightModule
    rou: Optional[RootOfUnity] = None
    _keys: List[AKey] = field(default_factory=list, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def weights(self) -> Tuple[WeightVec, ...]:
        return self.module.weights

    @property
    def domain(self) -> Any:
        return self.rou.domain if self.level == LEVEL_ZETA else FIELD

    def character(self) -> Dict[WeightVec, int]:
        return self.module.character()

    def weight_basis(self, xi: Sequence[int]) -> List[int]:
        return [j for j, w in enumerate(self.weights) if w == WeightVec(xi)]

    def coordinates(self, phi: AElem) -> Optional[List[Any]]:
        """Coordinates against the basis, or None when φ is outside A(λ)."""
        if any(lam != self.lam for lam, _ in phi.values):
            return None
        keys = sorted({k for b in self.basis for k in b.values} | set(phi.values), key=_akey_order)
        zero = self.domain.zero
        columns = [[b.values.get(k, zero) for k in keys] for b in self.basis]
        target = [phi.values.get(k, zero) for k in keys]
        return coordinates(columns, target, self.domain)

    def combine(self, coeffs: Sequence[Any]) -> AElem:
        out = AElem(self.qg, {}, LEVEL_ZETA if self.level == LEVEL_ZETA else LEVEL_F, self.rou)
        for c, b in zip(coeffs, self.basis):
            if c:
                out = out + b.scale(c)
        return out


def _akey_order(key: AKey) -> Tuple:
    return (tuple(key[0]), sum(key[1]), tuple(key[1]))


def _values_matrix(
    simple: WeightModule, qg: QuantumGroup, idx: List[int], grade: Grade
) -> Tuple[List[Mono], List[List[QScalar]]]:
    """V[E][j] = ⟨v_λ*, e^{(E)} m_j⟩ for the basis vectors m_j of one weight space."""
    monos = _grade_monos(qg, grade)
    rows = []
    for mono in monos:
        mat = simple.matrix(_divided_e(qg, mono))
        rows.append([mat[0][j] for j in idx])
    return monos, rows


def _grades_of(simple: WeightModule) -> Dict[Grade, List[int]]:
    out: Dict[Grade, List[int]] = {}
    for j, (grade, _) in enumerate(simple.labels):
        out.setdefault(grade, []).append(j)
    return out


def a_component(qg: QuantumGroup, lam: Sequence[int], level: str = LEVEL_F,
                rou: Optional[RootOfUnity] = None) -> AComponent:
    """A(λ) at the 𝔽-level, over 𝔸 (𝔽-values with an 𝔸-basis) or at ζ."""
    lam = WeightVec(lam)
    if not lam.is_dominant():
        raise QrootsError(f"{format_weight(lam, qg.datum)} is not dominant")
    if level != LEVEL_F and rou is None:
        raise ValueError(f"level {level} needs a root of unity")
    key = (qg, lam, level, rou)
    if key not in _COMPONENTS:
        _COMPONENTS[key] = _build_component(qg, lam, level, rou)
    return _COMPONENTS[key]


_COMPONENTS: Dict[Tuple[Any, ...], AComponent] = {}


def _build_component(qg: QuantumGroup, lam: WeightVec, level: str, rou: Optional[RootOfUnity]) -> AComponent:
    simple = simple_fd(qg, lam)
    grades = _grades_of(simple)
    if level == LEVEL_F:
        basis: List[Optional[AElem]] = [None] * simple.dim
        for grade, idx in grades.items():
            monos, rows = _values_matrix(simple, qg, idx, grade)
            for col, j in enumerate(idx):
                basis[j] = AElem(qg, {(lam, m): row[col] for m, row in zip(monos, rows)})
        return AComponent(qg, lam, LEVEL_F, basis, simple)

    columns: List[List[QScalar]] = []
    basis = []
    for grade, idx in grades.items():
        monos, rows = _values_matrix(simple, qg, idx, grade)
        span = lattice_span(rows, rou.valuation, len(idx))
        if len(span) != len(idx):
            raise QrootsError(f"values of A({format_weight(lam, qg.datum)}) lose rank at grade {list(grade)}")
        # A_𝔸 is the dual lattice: coefficient vectors pairing integrally with every row
        dual = transpose(inverse(span, FIELD), FIELD, len(idx))
        for c in dual:
            values = {}
            for m, row in zip(monos, rows):
                values[(lam, m)] = sum((x * y for x, y in zip(row, c)), FIELD.zero)
            basis.append(AElem(qg, values))
            full = [FIELD.zero] * simple.dim
            for j, x in zip(idx, c):
                full[j] = x
            columns.append(full)
    lattice = LatticeBasis(simple, columns, rou.valuation, rou.specialize)
    module = WeightModule(
        qg,
        lattice.weights,
        [lattice.specialize_matrix(m) for m in simple.e],
        [lattice.specialize_matrix(m) for m in simple.f],
        level=LEVEL_ZETA,
        rou=rou,
        highest=lam,
        parent=simple,
        lattice=lattice,
        name=f"A({format_weight(lam, qg.datum)})",
    )
    if level == LEVEL_A:
        return AComponent(qg, lam, LEVEL_A, basis, module, rou)
    if level != LEVEL_ZETA:
        raise ValueError(f"unknown level {level!r}")
    special = [b.specialize(rou) for b in basis]
    logger.debug("Coordinate ring component built", weight=list(lam), level=level, dim=len(special))
    return AComponent(qg, lam, LEVEL_ZETA, special, module, rou)


def lift_a(phi: AElem) -> AElem:
    """An 𝔸-integral preimage of a ζ-level element, through the A_𝔸 bases."""
    if phi.level == LEVEL_F:
        return phi
    qg, rou = phi.qg, phi.rou
    out = AElem(qg, {})
    for lam, part in phi.grade_components().items():
        coords = a_component(qg, lam, LEVEL_ZETA, rou).coordinates(part)
        if coords is None:
            raise QrootsError(f"element is not in A_ζ({format_weight(lam, qg.datum)})")
        lattice = a_component(qg, lam, LEVEL_A, rou)
        for c, b in zip(coords, lattice.basis):
            if c:
                out = out + b.scale(rou.lift(c))
    return out


def theta_vector(qg: QuantumGroup, word: Sequence[int], lam: Sequence[int], level: str = LEVEL_F,
                 rou: Optional[RootOfUnity] = None) -> AElem:
    """The basis vector of the extremal weight space A(λ)_{w^{-1}λ}."""
    lam = WeightVec(lam)
    comp = a_component(qg, lam, level, rou)
    target = qg.datum.act(tuple(reversed(tuple(word))), lam)
    idx = comp.weight_basis(target)
    if len(idx) != 1:
        raise QrootsError(f"extremal space A(λ)_{list(target)} has dimension {len(idx)}")
    b = comp.basis[idx[0]]
    return b


def braid_transport(comp: AComponent, phi: AElem, word: Sequence[int]) -> AElem:
    """T_{w^{-1}}^{-1}φ = T_{i1}^{-1}⋯T_{ir}^{-1}φ for w = s_{i1}⋯s_{ir}, acting on A(λ)."""
    coords = comp.coordinates(phi)
    if coords is None:
        raise QrootsError(f"element is outside A({format_weight(comp.lam, comp.qg.datum)})")
    matrix = braid_word_matrix(comp.module, tuple(word), sign=-1)
    return comp.combine(matvec(matrix, coords, comp.domain))


# The classical subring A₁ ⊂ A_ζ

@dataclass
class ClassicalComponent:
    """Ā(λ) = coordinate functions of L̄(λ): rational values on classical ē^{(N)}."""

    lam: WeightVec
    weights: Tuple[WeightVec, ...]
    values: List[Dict[Mono, Any]]

    @property
    def dim(self) -> int:
        return len(self.values)


@lru_cache(maxsize=64)
def classical_component(qg: QuantumGroup, lam: WeightVec) -> ClassicalComponent:
    lattice = classical_lattice(qg, lam)
    simple = lattice.module
    grades = _grades_of(simple)
    columns: List[Dict[Mono, Any]] = [dict() for _ in range(simple.dim)]
    for grade in grades:
        for mono in _grade_monos(qg, grade):
            row = lattice.specialize_matrix(simple.matrix(_divided_e(qg, mono)))[0]
            for j, x in enumerate(row):
                if x:
                    columns[j][mono] = x
    return ClassicalComponent(WeightVec(lam), lattice.weights, columns)


def a1_embed(qg: QuantumGroup, rou: RootOfUnity, lam: Sequence[int], values: Dict[Mono, Any]) -> AElem:
    """The image in A_ζ(ℓλ) of a classical function: ⟨a1(φ̄), u⟩ = ⟨φ̄, π(u)⟩."""
    lam = WeightVec(lam)
    if not lam.is_dominant():
        raise QrootsError(f"{format_weight(lam, qg.datum)} is not dominant")
    ell = rou.ell
    out = {}
    for mono, x in values.items():
        out[(lam * ell, tuple(m * ell for m in mono))] = rou.rational(x)
    return AElem(qg, out, LEVEL_ZETA, rou)


def a1_basis(qg: QuantumGroup, rou: RootOfUnity, lam: Sequence[int]) -> List[AElem]:
    """Images of the classical basis of Ā(λ), checked to lie in A_ζ(ℓλ)."""
    lam = WeightVec(lam)
    classical = classical_component(qg, lam)
    images = [a1_embed(qg, rou, lam, vals) for vals in classical.values]
    target = a_component(qg, lam * rou.ell, LEVEL_ZETA, rou)
    coords = [target.coordinates(x) for x in images]
    if any(c is None for c in coords) or rank(coords, rou.domain, target.dim) != classical.dim:
        raise QrootsError(
            f"classical image in A_ζ({format_weight(lam * rou.ell, qg.datum)}) "
            f"does not have dimension {classical.dim}"
        )
    return images


def power(phi: AElem, n: int) -> AElem:
    out = one(phi.qg, phi.level, phi.rou)
    for _ in range(n):
        out = multiply_a(out, phi)
    return out


def localized_character(
    qg: QuantumGroup, rou: RootOfUnity, lam: Sequence[int], level: int
) -> Dict[WeightVec, int]:
    """Character of A_ζ(λ + mρ)/Θ^m, the filtration level m of the localized degree-λ piece."""
    lam = WeightVec(lam)
    rho = qg.datum.rho
    comp = a_component(qg, lam + rho * level, LEVEL_ZETA, rou)
    out: Dict[WeightVec, int] = {}
    for w in comp.weights:
        shifted = w - rho * level
        out[shifted] = out.get(shifted, 0) + 1
    return out


def verma_dual_character(qg: QuantumGroup, lam: Sequence[int], height: int) -> Dict[WeightVec, int]:
    """Character of M*_−(λ) through grades of height ≤ height (Kostant partition counts)."""
    lam = WeightVec(lam)
    return {
        lam - qg.datum.from_alpha_coords(g): len(qg.grade_monos(g))
        for g in grades_up_to(qg.rank, height)
    }


# Charts

class ChartElem:
    """A right fraction φ·s^{-m} with φ ∈ A_ζ(mϖ)."""

    __slots__ = ("chart", "level", "num")

    def __init__(self, chart: "ChartAlgebra", level: int, num: AElem):
        self.chart = chart
        self.level = level
        self.num = num

    def __mul__(self, other: "ChartElem") -> "ChartElem":
        return self.chart.multiply(self, other)

    def __add__(self, other: "ChartElem") -> "ChartElem":
        n = max(self.level, other.level)
        a, b = self.chart.raise_to(self, n), self.chart.raise_to(other, n)
        return ChartElem(self.chart, n, a.num + b.num)

    def __neg__(self) -> "ChartElem":
        return ChartElem(self.chart, self.level, -self.num)

    def __sub__(self, other: "ChartElem") -> "ChartElem":
        return self + (-other)

    def scale(self, c: Any) -> "ChartElem":
        return ChartElem(self.chart, self.level, self.num.scale(c))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChartElem):
            return NotImplemented
        n = max(self.level, other.level)
        return self.chart.raise_to(self, n).num == self.chart.raise_to(other, n).num

    # equal fractions may sit at different levels
    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"ChartElem(level={self.level}, {self.num!r})"


class ChartAlgebra:
    """Degree-0 part of A_ζ localized at s = Θ̃_w(ϖ), for A1 and w ∈ {e, s}.

    With z = t/s for the other basis vector t of A_ζ(ϖ), the chart is free
    over the classical sub-chart Ā-fractions with basis 1, z, …, z^{ℓ−1}.
    """

    def __init__(self, qg: QuantumGroup, rou: RootOfUnity, word: Sequence[int] = (), level: int = 1):
        datum = qg.datum
        if datum.cartan_type != "A1":
            raise UnsupportedTypeError(f"charts are built for A1, not {datum.cartan_type}")
        if level < 0:
            raise ValueError("filtration level must be non-negative")
        top = rou.ell * (level + 1) - 1
        if top > qg.ht_bound:
            raise DegreeBoundError(
                f"filtration level {level} needs ht_bound ≥ {top}, configured {qg.ht_bound}"
            )
        self.qg = qg
        self.rou = rou
        self.word = tuple(word)
        self.filtration = level
        self.varpi = datum.fundamental(0)
        base = a_component(qg, self.varpi, LEVEL_ZETA, rou)
        # the chart at w is carried over from the highest weight chart
        highest = theta_vector(qg, (), self.varpi, LEVEL_ZETA, rou)
        self.s = braid_transport(base, highest, self.word)
        extremal = datum.act(tuple(reversed(self.word)), self.varpi)
        others = [b for b, w in zip(base.basis, base.weights) if w != extremal]
        if len(others) != 1:
            raise QrootsError("A_ζ(ϖ) is expected to be two-dimensional")
        self.t = others[0]
        self._s_powers: Dict[int, AElem] = {0: one(qg, LEVEL_ZETA, rou)}
        self._factors: Dict[WeightVec, Any] = {}

    # Arithmetic

    def s_power(self, n: int) -> AElem:
        if n not in self._s_powers:
            self._s_powers[n] = multiply_a(self.s_power(n - 1), self.s)
        return self._s_powers[n]

    def element(self, num: AElem, level: int) -> ChartElem:
        return ChartElem(self, level, num)

    def unit(self) -> ChartElem:
        return ChartElem(self, 0, self.s_power(0))

    @property
    def z(self) -> ChartElem:
        return ChartElem(self, 1, self.t)

    def raise_to(self, x: ChartElem, n: int) -> ChartElem:
        """The same fraction over s^n: φ s^{-m} = (φ s^{n−m}) s^{-n}."""
        if n < x.level:
            raise ValueError("cannot lower the level of a fraction")
        if n == x.level:
            return x
        return ChartElem(self, n, multiply_a(x.num, self.s_power(n - x.level)))

    def commutation_factor(self, psi: AElem) -> Any:
        """r with s ψ = r ψ s, for ψ of a single weight."""
        comps = psi.weight_components()
        if len(comps) != 1:
            raise QrootsError("commutation factor needs a weight vector")
        (_, xi), = comps
        if xi not in self._factors:
            left = multiply_a(self.s, psi)
            right = multiply_a(psi, self.s)
            key = next(iter(right.values))
            r = left.values.get(key, self.rou.domain.zero) / right.values[key]
            if left != right.scale(r):
                raise QrootsError("s does not q-commute with a weight vector")
            self._factors[xi] = r
        return self._factors[xi]

    def multiply(self, x: ChartElem, y: ChartElem) -> ChartElem:
        """(φ s^{-m})(ψ s^{-n}) = Σ_ξ r_ξ^{-m} φ ψ_ξ s^{-(m+n)}."""
        total = None
        for _, part in y.num.weight_components().items():
            r = self.commutation_factor(part) if x.level else self.rou.domain.one
            piece = multiply_a(x.num, part).scale(self.rou.domain.one / r**x.level)
            total = piece if total is None else total + piece
        if total is None:
            total = AElem(self.qg, {}, LEVEL_ZETA, self.rou)
        return ChartElem(self, x.level + y.level, total)

    def z_power(self, a: int) -> ChartElem:
        out = self.unit()
        for _ in range(a):
            out = out * self.z
        return out

    def classical(self, values: Dict[Mono, Any], k: int) -> ChartElem:
        """a1(φ̄)/s^{ℓk} for φ̄ ∈ Ā(kϖ)."""
        return ChartElem(self, self.rou.ell * k, a1_embed(self.qg, self.rou, self.varpi * k, values))

    # Witnesses

    def classical_coordinate(self) -> Tuple[int, int, ChartElem]:
        """(index of s̄, index of t̄, a1(t̄)/s^ℓ) in the classical basis of Ā(ϖ)."""
        classical = classical_component(self.qg, self.varpi)
        s_bar = theta_weight_index(classical, self.word, self.qg)
        other = [j for j in range(classical.dim) if j != s_bar][0]
        return s_bar, other, self.classical(classical.values[other], 1)

    def z_ell_factor(self) -> Optional[Any]:
        """r with z^ℓ = r·a1(t̄)/s^ℓ, or None when z^ℓ is not such a multiple."""
        zl = self.z_power(self.rou.ell)
        _, _, coordinate = self.classical_coordinate()
        key = next(iter(coordinate.num.values), None)
        if key is None or key not in zl.num.values:
            return None
        ratio = zl.num.values[key] / coordinate.num.values[key]
        return ratio if zl == coordinate.scale(ratio) else None

    def s_ell_factor(self) -> Any:
        """κ with s^ℓ = κ·a1(s̄)."""
        classical = classical_component(self.qg, self.varpi)
        s_bar, _, _ = self.classical_coordinate()
        image = a1_embed(self.qg, self.rou, self.varpi, classical.values[s_bar])
        power_s = self.s_power(self.rou.ell)
        key = next(iter(image.values))
        kappa = power_s.values.get(key, self.rou.domain.zero) / image.values[key]
        if power_s != image.scale(kappa):
            raise QrootsError("s^ℓ is not a multiple of the classical extremal vector")
        return kappa

    def z_ell_witness(self) -> Dict[str, Any]:
        """z^ℓ equals a nonzero multiple of the classical chart coordinate."""
        ratio = self.z_ell_factor()
        if ratio is None:
            return {"ok": False, "reason": "z^ell is not a multiple of the classical coordinate"}
        return {"ok": bool(ratio), "factor": self.rou.format(ratio)}

    def freeness_witness(self, k: Optional[int] = None) -> Dict[str, Any]:
        """z^a·c (a < ℓ, c in the classical chart at level k) is a basis at level ℓ(k+1)−1."""
        k = self.filtration if k is None else k
        ell = self.rou.ell
        top = ell * (k + 1) - 1
        classical = classical_component(self.qg, self.varpi * k)
        vectors = []
        for a in range(ell):
            za = self.z_power(a)
            for vals in classical.values:
                x = self.raise_to(za * self.classical(vals, k), top)
                vectors.append(x.num)
        target = a_component(self.qg, self.varpi * top, LEVEL_ZETA, self.rou)
        coords = [target.coordinates(v) for v in vectors]
        if any(c is None for c in coords):
            return {"ok": False, "reason": "a product left A_ζ at the top level", "level": top}
        r = rank(coords, self.rou.domain, target.dim)
        return {
            "ok": r == len(vectors) == target.dim,
            "rank": r,
            "elements": len(vectors),
            "dimension": target.dim,
            "level": top,
            "basis": [f"z^{a}" for a in range(ell)],
        }

    def central_witness(self) -> Dict[str, Any]:
        """The classical chart coordinates commute with z."""
        classical = classical_component(self.qg, self.varpi)
        failures = []
        for j, vals in enumerate(classical.values):
            c = self.classical(vals, 1)
            if c * self.z != self.z * c:
                failures.append(j)
        return {"ok": not failures, "failing": failures}

    def structure_constants(self) -> Tuple[List[str], List[List[List[Any]]]]:
        """Coordinates of z^a·z^b in the free basis z^c·a1(φ̄_j)/s^ℓ of the level 2ℓ−1 piece.

        φ̄_j runs over the classical basis of Ā(ϖ); returns the basis labels and
        the ℓ×ℓ array of coordinate rows.
        """
        ell = self.rou.ell
        top = 2 * ell - 1
        if top > self.qg.ht_bound:
            raise DegreeBoundError(
                f"structure constants need ht_bound ≥ {top}, configured {self.qg.ht_bound}"
            )
        classical = classical_component(self.qg, self.varpi)
        target = a_component(self.qg, self.varpi * top, LEVEL_ZETA, self.rou)
        labels, basis = [], []
        for c in range(ell):
            zc = self.z_power(c)
            for weight, vals in zip(classical.weights, classical.values):
                labels.append(f"z^{c}*a1[{format_weight(weight, self.qg.datum)}]")
                basis.append(target.coordinates(self.raise_to(zc * self.classical(vals, 1), top).num))
        if any(b is None for b in basis):
            raise QrootsError("a free basis element left A_ζ at the top level")
        table = []
        for a in range(ell):
            row = []
            for b in range(ell):
                product = self.raise_to(self.z_power(a) * self.z_power(b), top)
                local = target.coordinates(product.num)
                coords = None if local is None else coordinates(basis, local, self.rou.domain)
                if coords is None:
                    raise QrootsError(f"z^{a}·z^{b} is outside the span of the free basis")
                row.append(coords)
            table.append(row)
        return labels, table

    def presentation(self) -> Dict[str, Any]:
        """Multiplication table of 1, z, …, z^{ℓ−1} over the classical sub-chart, for dumping."""
        labels, table = self.structure_constants()
        return {
            "ell": self.rou.ell,
            "word": [i + 1 for i in self.word],
            "basis": labels,
            "structure_constants": [
                [[self.rou.format(c) for c in coords] for coords in row] for row in table
            ],
            "Z": self.z_ell_witness(),
        }


def theta_weight_index(classical: ClassicalComponent, word: Sequence[int], qg: QuantumGroup) -> int:
    target = qg.datum.act(tuple(reversed(tuple(word))), classical.lam)
    idx = [j for j, w in enumerate(classical.weights) if w == target]
    if len(idx) != 1:
        raise QrootsError("classical extremal space is not one-dimensional")
    return idx[0]


def chart(qg: QuantumGroup, rou: RootOfUnity, word: Sequence[int] = (), level: int = 1) -> ChartAlgebra:
    return ChartAlgebra(qg, rou, word, level)
