"""
The Drinfeld pairing τ: U^{≥0} × U^{≤0} → Q(v) and dual PBW bases.

τ is evaluated on triangular words: τ(k_λ e_E, f_F k_μ) equals
q^{(λ, wt E)} q^{−(λ,μ)} τ(e_E, f_F), and τ(e_E, f_F) comes from either of the
two comultiplication recursions in `WordAlgebra`.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Sequence, Tuple
from weakref import WeakKeyDictionary

from .errors import SingularGramError
from .linalg import det, inverse
from .logging_config import get_logger
from .qscalars import FIELD, QScalar, RootOfUnity, V, ZERO, format_scalar
from .rootdata import WeightVec
from .uqalg import QuantumGroup, UElem
from .uqalg.words import Grade, WordElem, grades_up_to

logger = get_logger(__name__)


class Normalization(str, Enum):
    """Where the scalar correction of a dual pair lives."""

    PLAIN = "plain"  # y_p = f^n, x_p dual
    LUSZTIG_E = "a"  # x_p = e^{(m)}, y_p dual
    LUSZTIG_F = "b"  # y_p = f^{(n)}, x_p dual


@dataclass(frozen=True)
class DualBases:
    """Bases of U^+_γ and U^-_{-γ} with τ(x_p, y_q) = δ_pq."""

    grade: Grade
    normalization: Normalization
    monos: Tuple[Tuple[int, ...], ...]
    xs: Tuple[UElem, ...]
    ys: Tuple[UElem, ...]
    beta: WeightVec

    def __len__(self) -> int:
        return len(self.xs)

    def pairs(self) -> List[Tuple[UElem, UElem, WeightVec]]:
        return [(x, y, self.beta) for x, y in zip(self.xs, self.ys)]


@dataclass(frozen=True)
class DualityWitness:
    """Integrality of one renormalized dual basis at a root of unity."""

    grade: Grade
    normalization: Normalization
    integral: bool
    unimodular: bool
    determinant: str

    @property
    def ok(self) -> bool:
        return self.integral and self.unimodular


class PairingTable:
    """Gram matrices of τ per grade and normalization, with their inverses."""

    def __init__(self, qg: QuantumGroup):
        self.qg = qg
        self.words = qg.words
        self._gram: Dict[Tuple[Grade, Normalization], Tuple[List[List[QScalar]], List[List[QScalar]]]] = {}
        self._duals: Dict[Tuple[Grade, Normalization], DualBases] = {}
        self._antipode: Dict[object, UElem] = {}

    # τ on elements

    def _split(self, a: UElem, side: str) -> WordElem:
        raw = self.qg.to_words(a)
        for f_word, _, e_word in raw:
            if side == "plus" and f_word:
                raise ValueError("first argument of τ must lie in U^{≥0}")
            if side == "minus" and e_word:
                raise ValueError("second argument of τ must lie in U^{≤0}")
        return raw

    def _evaluate(self, x: UElem, y: UElem, right: bool) -> QScalar:
        datum = self.qg.datum
        pair = self.words.tau_right if right else self.words.tau
        total = ZERO
        for (_, lam, e_word), cx in self._split(x, "plus").items():
            wt_e = self.words.weight(e_word)
            for (f_word, mu, _), cy in self._split(y, "minus").items():
                value = pair(e_word, f_word)
                if value:
                    shift = datum.vexp(lam, wt_e) - datum.vexp(lam, mu)
                    total = total + cx * cy * V ** shift * value
        return total

    def tau(self, x: UElem, y: UElem) -> QScalar:
        return self._evaluate(x, y, right=False)

    def tau_right(self, x: UElem, y: UElem) -> QScalar:
        """τ through the recursion on the first argument."""
        return self._evaluate(x, y, right=True)

    # Gram matrices and dual bases

    def gram(self, grade: Sequence[int], normalization: Normalization = Normalization.PLAIN):
        """(G, G^{-1}) with G[m][n] = τ(x-side monomial m, y-side monomial n)."""
        grade = tuple(grade)
        normalization = Normalization(normalization)
        key = (grade, normalization)
        if key not in self._gram:
            self.words.check_height(grade)
            plus = self.qg.plus_basis(grade, divided=normalization is Normalization.LUSZTIG_E)
            minus = self.qg.minus_basis(grade, divided=normalization is Normalization.LUSZTIG_F)
            g = [[self.tau(x, y) for y in minus] for x in plus]
            if det(g, FIELD) == FIELD.zero:
                raise SingularGramError(f"τ is degenerate at grade {grade}")
            self._gram[key] = (g, inverse(g, FIELD) if g else [])
            logger.debug("Pairing Gram built", grade=list(grade), normalization=normalization.value,
                         dim=len(g))
        return self._gram[key]

    def dual_bases(self, grade: Sequence[int],
                   normalization: Normalization = Normalization.PLAIN) -> DualBases:
        grade = tuple(grade)
        normalization = Normalization(normalization)
        key = (grade, normalization)
        if key in self._duals:
            return self._duals[key]
        qg = self.qg
        monos = tuple(qg.grade_monos(grade))
        beta = qg.datum.from_alpha_coords(grade)
        if not any(grade):
            one = qg.one()
            bases = DualBases(grade, normalization, monos, (one,), (one,), beta)
            self._duals[key] = bases
            return bases
        _, ginv = self.gram(grade, normalization)
        plus = qg.plus_basis(grade, divided=normalization is Normalization.LUSZTIG_E)
        minus = qg.minus_basis(grade, divided=normalization is Normalization.LUSZTIG_F)
        size = len(monos)
        if normalization is Normalization.LUSZTIG_E:
            xs = tuple(plus)
            ys = tuple(
                sum((minus[n] * ginv[n][q] for n in range(size)), qg.zero()) for q in range(size)
            )
        else:
            ys = tuple(minus)
            xs = tuple(
                sum((plus[m] * ginv[p][m] for m in range(size)), qg.zero()) for p in range(size)
            )
        bases = DualBases(grade, normalization, monos, xs, ys, beta)
        self._duals[key] = bases
        return bases

    def dual_bases_up_to(self, height: int,
                         normalization: Normalization = Normalization.PLAIN) -> List[DualBases]:
        """Dual bases for every grade γ ∈ Q⁺ with ht(γ) ≤ height."""
        grades = sorted(grades_up_to(self.qg.rank, height), key=lambda g: (sum(g), g))
        return [self.dual_bases(g, normalization) for g in grades]

    # Commutation through τ

    def _antipode_of(self, key: object) -> UElem:
        if key not in self._antipode:
            self._antipode[key] = self.qg.antipode(self.qg.monomial(key))
        return self._antipode[key]

    def commute(self, x: UElem, y: UElem, order: str = "yx") -> UElem:
        """y·x (order "yx") or x·y (order "xy") for x ∈ U^{≥0}, y ∈ U^{≤0}.

        yx = Σ τ(x₍₀₎, S(y₍₀₎)) τ(x₍₂₎, y₍₂₎) x₍₁₎ y₍₁₎
        xy = Σ τ(x₍₀₎, y₍₀₎) τ(x₍₂₎, S(y₍₂₎)) y₍₁₎ x₍₁₎
        """
        self._split(x, "plus")
        self._split(y, "minus")
        qg = self.qg
        dx = qg.coproduct_iterated(x)
        dy = qg.coproduct_iterated(y)
        total = qg.zero()
        for (x0, x1, x2), cx in dx.terms.items():
            for (y0, y1, y2), cy in dy.terms.items():
                if order == "yx":
                    c = self.tau(qg.monomial(x0), self._antipode_of(y0))
                    if c:
                        c = c * self.tau(qg.monomial(x2), qg.monomial(y2))
                    if c:
                        total = total + qg.monomial(x1) * qg.monomial(y1) * (cx * cy * c)
                elif order == "xy":
                    c = self.tau(qg.monomial(x0), qg.monomial(y0))
                    if c:
                        c = c * self.tau(qg.monomial(x2), self._antipode_of(y2))
                    if c:
                        total = total + qg.monomial(y1) * qg.monomial(x1) * (cx * cy * c)
                else:
                    raise ValueError(f"order must be 'yx' or 'xy', got {order!r}")
        return total

    # Integrality at a root of unity

    def pm_duality_check(self, grade: Sequence[int], rou: RootOfUnity) -> List[DualityWitness]:
        """Check that the dual side of variants (a) and (b) is an 𝔸-basis.

        In variant (a) the y_p must have 𝔸-coordinates against the f^n and
        the coordinate matrix must be invertible over 𝔸; symmetrically for
        the x_p of variant (b) against the e^n.
        """
        grade = tuple(grade)
        out = []
        for normalization in (Normalization.LUSZTIG_E, Normalization.LUSZTIG_F):
            bases = self.dual_bases(grade, normalization)
            side = bases.ys if normalization is Normalization.LUSZTIG_E else bases.xs
            keys = [
                (m, self.qg.datum.zero(), self.qg.empty) if normalization is Normalization.LUSZTIG_E
                else (self.qg.empty, self.qg.datum.zero(), m)
                for m in bases.monos
            ] if any(grade) else [(self.qg.empty, self.qg.datum.zero(), self.qg.empty)]
            matrix = [[elem.coeff(k) for k in keys] for elem in side]
            integral = all(rou.regular(c) for row in matrix for c in row)
            d = det(matrix, FIELD)
            unimodular = bool(d) and rou.valuation(d) == 0
            out.append(DualityWitness(grade, normalization, integral, unimodular, format_scalar(d)))
        return out


_TABLES: "WeakKeyDictionary[QuantumGroup, PairingTable]" = WeakKeyDictionary()


def pairing_table(qg: QuantumGroup) -> PairingTable:
    if qg not in _TABLES:
        _TABLES[qg] = PairingTable(qg)
    return _TABLES[qg]


def tau(x: UElem, y: UElem) -> QScalar:
    """τ(x, y) for x ∈ U^{≥0}, y ∈ U^{≤0}."""
    return pairing_table(x.qg).tau(x, y)


def tau_right(x: UElem, y: UElem) -> QScalar:
    return pairing_table(x.qg).tau_right(x, y)


def dual_bases(qg: QuantumGroup, grade: Sequence[int],
               normalization: Normalization | str = Normalization.PLAIN) -> DualBases:
    return pairing_table(qg).dual_bases(grade, Normalization(normalization))


def dual_bases_up_to(qg: QuantumGroup, height: int,
                     normalization: Normalization | str = Normalization.PLAIN) -> List[DualBases]:
    return pairing_table(qg).dual_bases_up_to(height, Normalization(normalization))


def commute_via_pairing(x: UElem, y: UElem, order: str = "yx") -> UElem:
    return pairing_table(x.qg).commute(x, y, order)


def pm_duality_check(qg: QuantumGroup, grade: Sequence[int], rou: RootOfUnity) -> List[DualityWitness]:
    return pairing_table(qg).pm_duality_check(grade, rou)
