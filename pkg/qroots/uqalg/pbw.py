"""
Root vectors and PBW bases attached to the fixed reduced word of w0.
"""

from typing import Dict, List, Tuple

from ..errors import QrootsError
from ..linalg import inverse
from ..logging_config import get_logger
from ..qscalars import FIELD, ONE, QScalar, ZERO, qfact
from ..rootdata import Word
from .words import Grade, WordAlgebra, WordElem, add_into

logger = get_logger(__name__)

Mono = Tuple[int, ...]


class PBWTable:
    """Change of basis between basis words and PBW monomials, one grade at a time."""

    def __init__(self, grade: Grade, monos: List[Mono], rows: List[Dict[Word, QScalar]],
                 words: Tuple[Word, ...]):
        self.grade = grade
        self.monos = monos
        self.words = words
        self.rows = rows
        matrix = [[row.get(w, ZERO) for w in words] for row in rows]
        inv = inverse(matrix, FIELD) if matrix else []
        # word -> {mono: coeff}
        self.word_to_mono: Dict[Word, Dict[Mono, QScalar]] = {}
        for j, w in enumerate(words):
            expansion = {}
            for m, mono in enumerate(monos):
                c = inv[j][m]
                if c:
                    expansion[mono] = c
            self.word_to_mono[w] = expansion


class PBWBasis:
    """e_{β_N}^{m_N}⋯e_{β_1}^{m_1} and f_{β_N}^{m_N}⋯f_{β_1}^{m_1}."""

    def __init__(self, words: WordAlgebra):
        self.words = words
        self.datum = words.datum
        self.n = self.datum.n_positive
        self.beta_grades: List[Grade] = [
            tuple(self.datum.alpha_coords(b)) for b in self.datum.betas
        ]
        self._root_e: Dict[int, WordElem] = {}
        self._root_f: Dict[int, WordElem] = {}
        self._tables: Dict[Tuple[str, Grade], PBWTable] = {}

    def root_vector(self, k: int, kind: str) -> WordElem:
        """e_{β_k} = T_{i1}⋯T_{i(k-1)}(e_{ik}), k 0-based."""
        cache = self._root_e if kind == "e" else self._root_f
        if k not in cache:
            word = self.datum.w0_word
            i_k = word[k]
            x = self.words.gen_e(i_k) if kind == "e" else self.words.gen_f(i_k)
            for i in reversed(word[:k]):
                x = self.words.braid(i, 1, x)
            pure = self.words.is_plus(x) if kind == "e" else self.words.is_minus(x)
            if not pure:
                raise QrootsError(f"root vector {kind}_beta{k + 1} left its half of U")
            cache[k] = x
            logger.debug("Root vector built", kind=kind, k=k + 1, terms=len(x))
        return cache[k]

    def _half(self, x: WordElem, kind: str) -> Dict[Word, QScalar]:
        if kind == "e":
            return {e: c for (_, _, e), c in x.items()}
        return {f: c for (f, _, _), c in x.items()}

    def _half_product(self, x: Dict[Word, QScalar], y: Dict[Word, QScalar],
                      kind: str) -> Dict[Word, QScalar]:
        out: Dict[Word, QScalar] = {}
        for a, ca in x.items():
            for b, cb in y.items():
                coords = self.words.ecoords(a + b) if kind == "e" else self.words.fcoords(a + b)
                for w, cw in coords.items():
                    add_into(out, w, ca * cb * cw)
        return out

    def mono_grade(self, mono: Mono) -> Grade:
        grade = [0] * self.words.rank
        for m, g in zip(mono, self.beta_grades):
            for i, c in enumerate(g):
                grade[i] += m * c
        return tuple(grade)

    def monomial_words(self, mono: Mono, kind: str) -> Dict[Word, QScalar]:
        """x_{β_N}^{m_N}⋯x_{β_1}^{m_1} in basis words."""
        out: Dict[Word, QScalar] = {(): ONE}
        for k in range(self.n - 1, -1, -1):
            root = self._half(self.root_vector(k, kind), kind)
            for _ in range(mono[k]):
                out = self._half_product(out, root, kind)
        return out

    def table(self, grade: Grade, kind: str) -> PBWTable:
        key = (kind, grade)
        if key not in self._tables:
            basis = self.words.basis(grade)
            weight = self.datum.from_alpha_coords(grade)
            monos = [tuple(m) for m in self.datum.pbw_exponents(weight)]
            rows = [self.monomial_words(m, kind) for m in monos]
            words = basis.e_words if kind == "e" else basis.f_words
            if len(monos) != len(words):
                raise QrootsError(
                    f"{len(monos)} PBW monomials against dimension {len(words)} at {grade}"
                )
            self._tables[key] = PBWTable(grade, monos, rows, words)
            logger.debug("PBW table built", kind=kind, grade=list(grade), size=len(monos))
        return self._tables[key]

    def monos(self, grade: Grade) -> List[Mono]:
        return self.table(grade, "e").monos

    def mono_to_words(self, mono: Mono, kind: str) -> Dict[Word, QScalar]:
        if not any(mono):
            return {(): ONE}
        table = self.table(self.mono_grade(mono), kind)
        return table.rows[table.monos.index(mono)]

    def word_to_monos(self, word: Word, kind: str) -> Dict[Mono, QScalar]:
        if not word:
            return {(0,) * self.n: ONE}
        return self.table(self.words.grade(word), kind).word_to_mono[word]

    def lusztig_factor(self, mono: Mono) -> QScalar:
        """Π [m_k]_{q_βk}!, the ratio between plain and divided monomials."""
        out = ONE
        for k, m in enumerate(mono):
            if m > 1:
                out = out * qfact(m, self.words.qd.qbeta(self.datum.betas[k]))
        return out
