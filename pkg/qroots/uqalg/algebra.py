"""
The quantized enveloping algebra U over Q(v) for a fixed root datum.
"""

from typing import Any, Dict, Iterable, List, Optional, Sequence

from ..config import get_settings
from ..logging_config import get_logger
from ..qscalars import ONE, QScalar, RootOfUnity, ZERO, scalar
from ..rootdata import RootDatum, WeightVec
from .element import Key, Mono, TensorUElem, UElem
from .pbw import PBWBasis
from .torus import TorusLabel, label_in_weights, unit_label, weight_in_basis
from .words import WordAlgebra, WordElem, WordKey, add_into

logger = get_logger(__name__)


class QuantumGroup:
    """U_q(g) in PBW coordinates.

    Generator indices and root indices are 0-based here; the text grammar
    and the CLI use 1-based names.
    """

    def __init__(self, datum: RootDatum, ht_bound: Optional[int] = None):
        self.datum = datum
        self.ht_bound = ht_bound if ht_bound is not None else get_settings().default_ht_bound
        self.words = WordAlgebra(datum, self.ht_bound)
        self.pbw = PBWBasis(self.words)
        self.rank = datum.rank
        self.n = datum.n_positive
        self.empty: Mono = (0,) * self.n
        self._to_words: Dict[Key, WordElem] = {}
        logger.debug(
            "Quantum group created", type=datum.cartan_type, ht_bound=self.ht_bound
        )

    # Constructors

    def zero(self) -> UElem:
        return UElem(self)

    def one(self) -> UElem:
        return self.scalar(ONE)

    def scalar(self, c: Any) -> UElem:
        return UElem(self, {(self.empty, self.datum.zero(), self.empty): scalar(c)})

    def monomial(self, key: Key, c: Any = ONE) -> UElem:
        return UElem(self, {key: scalar(c)})

    def k(self, lam: Sequence[int]) -> UElem:
        return self.monomial((self.empty, WeightVec(lam), self.empty))

    def unit_mono(self, k: int, m: int = 1) -> Mono:
        return tuple(m if j == k else 0 for j in range(self.n))

    def e_root(self, k: int, power: int = 1, divided: bool = False) -> UElem:
        key = (self.empty, self.datum.zero(), self.unit_mono(k, power))
        c = ONE / self.pbw.lusztig_factor(key[2]) if divided else ONE
        return self.monomial(key, c)

    def f_root(self, k: int, power: int = 1, divided: bool = False) -> UElem:
        key = (self.unit_mono(k, power), self.datum.zero(), self.empty)
        c = ONE / self.pbw.lusztig_factor(key[0]) if divided else ONE
        return self.monomial(key, c)

    def e(self, i: int) -> UElem:
        return self.from_words(self.words.gen_e(i))

    def f(self, i: int) -> UElem:
        return self.from_words(self.words.gen_f(i))

    def ki(self, i: int, power: int = 1) -> UElem:
        """k_i^{power} = k_{power·α_i}."""
        return self.k(self.datum.alpha(i) * power)

    def root_vector(self, k: int, kind: str = "e") -> UElem:
        """e_{β_k} or f_{β_k} computed through the braid action (k 0-based)."""
        x = self.pbw.root_vector(k, kind)
        return self.from_words(x)

    # Conversions

    def to_words(self, a: UElem) -> WordElem:
        out: WordElem = {}
        for key, c in a.terms.items():
            for wk, cw in self._key_words(key).items():
                add_into(out, wk, c * cw)
        return out

    def _key_words(self, key: Key) -> WordElem:
        if key not in self._to_words:
            fmono, lam, emono = key
            out: WordElem = {}
            fw = self.pbw.mono_to_words(fmono, "f")
            ew = self.pbw.mono_to_words(emono, "e")
            for f_word, cf in fw.items():
                for e_word, ce in ew.items():
                    add_into(out, (f_word, lam, e_word), cf * ce)
            self._to_words[key] = out
        return self._to_words[key]

    def _word_key_pbw(self, wk: WordKey) -> Dict[Key, QScalar]:
        f_word, lam, e_word = wk
        out: Dict[Key, QScalar] = {}
        for fm, cf in self.pbw.word_to_monos(f_word, "f").items():
            for em, ce in self.pbw.word_to_monos(e_word, "e").items():
                add_into(out, (fm, lam, em), cf * ce)
        return out

    def from_words(self, x: WordElem) -> UElem:
        out: Dict[Key, QScalar] = {}
        for wk, c in x.items():
            for key, ck in self._word_key_pbw(wk).items():
                add_into(out, key, c * ck)
        return UElem(self, out)

    # Algebra

    def multiply(self, a: UElem, b: UElem) -> UElem:
        if not a or not b:
            return self.zero()
        return self.from_words(self.words.multiply(self.to_words(a), self.to_words(b)))

    def normal_form(self, factors: Iterable[Any]) -> UElem:
        """Product of generators, elements and scalars, in PBW form."""
        out = self.one()
        for factor in factors:
            out = out * factor if isinstance(factor, UElem) else out * scalar(factor)
        return out

    def commutator(self, a: UElem, b: UElem) -> UElem:
        return a * b - b * a

    def key_weight(self, key: Key) -> WeightVec:
        fmono, _, emono = key
        out = self.datum.zero()
        for k, beta in enumerate(self.datum.betas):
            out = out + beta * (emono[k] - fmono[k])
        return out

    def weight(self, a: UElem) -> Optional[WeightVec]:
        """The Q-weight of a homogeneous element, None otherwise."""
        weights = {self.key_weight(key) for key in a.terms}
        if len(weights) == 1:
            return weights.pop()
        if not weights:
            return self.datum.zero()
        return None

    # Hopf structure

    def coproduct(self, a: UElem) -> TensorUElem:
        raw = self.words.coproduct(self.to_words(a))
        out: Dict[Any, QScalar] = {}
        for (left, right), c in raw.items():
            for kl, cl in self._word_key_pbw(left).items():
                for kr, cr in self._word_key_pbw(right).items():
                    add_into(out, (kl, kr), c * cl * cr)
        return TensorUElem(self, 2, out)

    def coproduct_iterated(self, a: UElem) -> TensorUElem:
        """Δ₂ = (Δ⊗id)∘Δ."""
        return self.coproduct(a).apply(0, self.coproduct)

    def counit(self, a: UElem) -> QScalar:
        total = ZERO
        for (fmono, _, emono), c in a.terms.items():
            if not any(fmono) and not any(emono):
                total = total + c
        return total

    def antipode(self, a: UElem) -> UElem:
        return self.from_words(self.words.antipode(self.to_words(a)))

    def antipode_inverse(self, a: UElem) -> UElem:
        """S² = Ad(k_{−2ρ}), hence S^{-1}(x) = k_{2ρ} S(x) k_{−2ρ}."""
        two_rho = self.datum.rho * 2
        return self.k(two_rho) * self.antipode(a) * self.k(-two_rho)

    def braid_T(self, i: int, sign: int, a: UElem) -> UElem:
        """T_i (sign +1) or T_i^{-1} (sign −1)."""
        return self.from_words(self.words.braid(i, sign, self.to_words(a)))

    def braid_word(self, word: Sequence[int], a: UElem, sign: int = 1) -> UElem:
        """T_{i1}⋯T_{ir}(a) (rightmost first)."""
        out = a
        for i in reversed(tuple(word)):
            out = self.braid_T(i, sign, out)
        return out

    # Integral forms

    def lusztig_factor(self, key: Key) -> QScalar:
        fmono, _, emono = key
        return self.pbw.lusztig_factor(fmono) * self.pbw.lusztig_factor(emono)

    def lusztig_key(self, fmono: Mono, emono: Mono, label: Optional[TorusLabel] = None) -> Key:
        return (fmono, label if label is not None else unit_label(self.datum), emono)

    def key_to_lusztig(self, key: Key) -> Dict[Key, QScalar]:
        """f^m k_λ e^n against the basis f^{(m)} k_μ ∏[K_i;0,t_i] e^{(n)}."""
        fmono, lam, emono = key
        factor = self.lusztig_factor(key)
        return {(fmono, label, emono): c * factor for label, c in weight_in_basis(self.datum, lam)}

    def to_lusztig(self, a: UElem) -> Dict[Key, QScalar]:
        """Coordinates in Lusztig's 𝔸-basis, keyed (fmono, TorusLabel, emono)."""
        out: Dict[Key, QScalar] = {}
        for key, c in a.terms.items():
            for lkey, b in self.key_to_lusztig(key).items():
                out[lkey] = out.get(lkey, ZERO) + c * b
        return {k: c for k, c in out.items() if c}

    def from_lusztig(self, coords: Dict[Key, Any]) -> UElem:
        out: Dict[Key, QScalar] = {}
        for (fmono, label, emono), c in coords.items():
            coeff = scalar(c) / self.lusztig_factor((fmono, label, emono))
            for lam, b in label_in_weights(self.datum, label):
                out[(fmono, lam, emono)] = out.get((fmono, lam, emono), ZERO) + coeff * b
        return UElem(self, out)

    def coords(self, a: UElem, form: str = "DK") -> Dict[Key, QScalar]:
        if form.upper() == "L":
            return self.to_lusztig(a)
        return dict(a.terms)

    def is_integral(self, a: UElem, rou: RootOfUnity, form: str = "DK") -> bool:
        """All coordinates in the chosen 𝔸-basis are regular at ζ′."""
        return all(rou.regular(c) for c in self.coords(a, form).values())

    # Grades

    def grade_monos(self, grade: Sequence[int]) -> List[Mono]:
        """PBW exponent vectors of U^+ in the given α-grade."""
        if not any(grade):
            return [self.empty]
        return self.pbw.table(tuple(grade), "e").monos

    def plus_basis(self, grade: Sequence[int], divided: bool = False) -> List[UElem]:
        zero = self.datum.zero()
        out = []
        for m in self.grade_monos(grade):
            key = (self.empty, zero, m)
            c = ONE / self.pbw.lusztig_factor(m) if divided else ONE
            out.append(self.monomial(key, c))
        return out

    def minus_basis(self, grade: Sequence[int], divided: bool = False) -> List[UElem]:
        zero = self.datum.zero()
        out = []
        for m in self.grade_monos(grade):
            key = (m, zero, self.empty)
            c = ONE / self.pbw.lusztig_factor(m) if divided else ONE
            out.append(self.monomial(key, c))
        return out
