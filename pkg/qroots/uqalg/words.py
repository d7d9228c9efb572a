"""
Triangular words f_F k_λ e_E and the straightening engine behind U.

U^+ is the free algebra on the e_i modulo the radical of the Drinfeld pairing
(which is the q-Serre ideal), and likewise for U^-. Per Q⁺-grade we pick
basis words with a nonsingular Gram block of τ and read off coordinates of
any word from its pairing values, so no Serre constants are hand-coded.

A reduced word element is a dict {(F, λ, E): coeff} with F and E basis words.
"""

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Any, Dict, List, Sequence, Tuple

from ..errors import DegreeBoundError, SingularGramError
from ..linalg import independent_rows, inverse, rref
from ..logging_config import get_logger
from ..qscalars import FIELD, ONE, V, ZERO, QData, QScalar, qfact
from ..rootdata import RootDatum, WeightVec, Word

logger = get_logger(__name__)

Grade = Tuple[int, ...]
WordKey = Tuple[Word, WeightVec, Word]
WordElem = Dict[WordKey, QScalar]


def add_into(target: Dict[Any, QScalar], key: Any, c: QScalar) -> None:
    """target[key] += c, dropping zeros."""
    if not c:
        return
    total = target.get(key, ZERO) + c
    if total:
        target[key] = total
    else:
        target.pop(key, None)


@dataclass(frozen=True)
class GradeBasis:
    """Basis words of U^±_γ and the inverse of their τ Gram block."""

    grade: Grade
    words: Tuple[Word, ...]
    e_words: Tuple[Word, ...]
    f_words: Tuple[Word, ...]
    inv_block: Tuple[Tuple[QScalar, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.e_words)


class WordAlgebra:
    """Reduced triangular words with multiplication, Δ, S and the braid action."""

    def __init__(self, datum: RootDatum, ht_bound: int):
        self.datum = datum
        self.ht_bound = ht_bound
        self.rank = datum.rank
        self.qd = QData(datum)
        self.zero_weight = datum.zero()
        self.alphas = datum.simple_roots
        # d·(α_i, α_j)
        self.aa = [[datum.vexp(ai, aj) for aj in self.alphas] for ai in self.alphas]
        self.qi = [self.qd.qi(i) for i in range(self.rank)]
        # τ(e_i, f_i)
        self.tau_simple = [ONE / (q ** -1 - q) for q in self.qi]
        self._tau: Dict[Tuple[Word, Word], QScalar] = {}
        self._tau_right: Dict[Tuple[Word, Word], QScalar] = {}
        self._bases: Dict[Grade, GradeBasis] = {}
        self._words: Dict[Grade, Tuple[Word, ...]] = {}
        self._ecoords: Dict[Word, Dict[Word, QScalar]] = {}
        self._fcoords: Dict[Word, Dict[Word, QScalar]] = {}
        self._ef: Dict[Tuple[Word, Word], WordElem] = {}
        self._delta_e: Dict[Word, List[Tuple[WeightVec, Word, Word, QScalar]]] = {}
        self._delta_f: Dict[Word, List[Tuple[Word, Word, WeightVec, QScalar]]] = {}
        self._braid: Dict[Tuple[int, int, str, Word], WordElem] = {}
        self._antipode: Dict[Tuple[str, Word], WordElem] = {}

    # Grades and weights

    def grade(self, word: Sequence[int]) -> Grade:
        counts = [0] * self.rank
        for i in word:
            counts[i] += 1
        return tuple(counts)

    def weight(self, word: Sequence[int]) -> WeightVec:
        return self.datum.from_alpha_coords(self.grade(word))

    def _vexp_simple(self, counts: Sequence[int], j: int) -> int:
        """d·(Σ counts_i α_i, α_j)."""
        return sum(c * self.aa[i][j] for i, c in enumerate(counts) if c)

    def words(self, grade: Grade) -> Tuple[Word, ...]:
        """All words in the simple indices with the given letter counts."""
        if grade not in self._words:
            out: List[Word] = []

            def rec(left: List[int], acc: Word) -> None:
                if not any(left):
                    out.append(acc)
                    return
                for i in range(self.rank):
                    if left[i]:
                        left[i] -= 1
                        rec(left, acc + (i,))
                        left[i] += 1

            rec(list(grade), ())
            self._words[grade] = tuple(out)
        return self._words[grade]

    def check_height(self, grade: Grade) -> None:
        if sum(grade) > self.ht_bound:
            raise DegreeBoundError(
                f"height {sum(grade)} exceeds ht_bound={self.ht_bound} (grade {grade})"
            )

    # Drinfeld pairing on words

    def tau(self, a: Word, b: Word) -> QScalar:
        """τ(e_a, f_b) via τ(x, y₁y₂) = (τ⊗τ)(Δx, y₁⊗y₂)."""
        if len(a) != len(b):
            return ZERO
        if not b:
            return ONE
        key = (a, b)
        if key in self._tau:
            return self._tau[key]
        if self.grade(a) != self.grade(b):
            self._tau[key] = ZERO
            return ZERO
        j, rest = b[0], b[1:]
        total = ZERO
        prefix = [0] * self.rank
        for p, ap in enumerate(a):
            if ap == j:
                sub = self.tau(a[:p] + a[p + 1:], rest)
                if sub:
                    total = total + V ** self._vexp_simple(prefix, j) * sub
            prefix[ap] += 1
        total = total * self.tau_simple[j]
        self._tau[key] = total
        return total

    def tau_right(self, a: Word, b: Word) -> QScalar:
        """τ(e_a, f_b) via τ(x₁x₂, y) = (τ⊗τ)(x₂⊗x₁, Δy)."""
        if len(a) != len(b):
            return ZERO
        if not a:
            return ONE
        key = (a, b)
        if key in self._tau_right:
            return self._tau_right[key]
        if self.grade(a) != self.grade(b):
            self._tau_right[key] = ZERO
            return ZERO
        i, rest = a[0], a[1:]
        total = ZERO
        prefix = [0] * self.rank
        for p, bp in enumerate(b):
            if bp == i:
                sub = self.tau_right(rest, b[:p] + b[p + 1:])
                if sub:
                    total = total + V ** self._vexp_simple(prefix, i) * sub
            prefix[bp] += 1
        total = total * self.tau_simple[i]
        self._tau_right[key] = total
        return total

    # Per-grade bases

    def basis(self, grade: Grade) -> GradeBasis:
        if grade in self._bases:
            return self._bases[grade]
        self.check_height(grade)
        ws = self.words(grade)
        n = len(ws)
        gram = [[self.tau(a, b) for b in ws] for a in ws]
        rows = independent_rows(gram, FIELD, n)
        sub = [gram[r] for r in rows]
        _, cols = rref(sub, FIELD, n)
        if len(cols) != len(rows):
            raise SingularGramError(f"pairing block at grade {grade} is singular")
        block = [[sub[r][c] for c in cols] for r in range(len(rows))]
        inv = inverse(block, FIELD) if block else []
        basis = GradeBasis(
            grade=grade,
            words=ws,
            e_words=tuple(ws[r] for r in rows),
            f_words=tuple(ws[c] for c in cols),
            inv_block=tuple(tuple(row) for row in inv),
        )
        self._bases[grade] = basis
        logger.debug("Word basis built", grade=list(grade), words=n, dim=basis.dim)
        return basis

    def dim(self, grade: Grade) -> int:
        return self.basis(grade).dim

    def ecoords(self, a: Word) -> Dict[Word, QScalar]:
        """e_a in the basis words of U^+."""
        if a in self._ecoords:
            return self._ecoords[a]
        basis = self.basis(self.grade(a))
        if a in basis.e_words:
            out = {a: ONE}
        else:
            pairings = [self.tau(a, b) for b in basis.f_words]
            out = {}
            for r, word in enumerate(basis.e_words):
                c = ZERO
                for j, pj in enumerate(pairings):
                    if pj:
                        c = c + pj * basis.inv_block[j][r]
                if c:
                    out[word] = c
        self._ecoords[a] = out
        return out

    def fcoords(self, b: Word) -> Dict[Word, QScalar]:
        """f_b in the basis words of U^-."""
        if b in self._fcoords:
            return self._fcoords[b]
        basis = self.basis(self.grade(b))
        if b in basis.f_words:
            out = {b: ONE}
        else:
            pairings = [self.tau(a, b) for a in basis.e_words]
            out = {}
            for j, word in enumerate(basis.f_words):
                c = ZERO
                for r, pr in enumerate(pairings):
                    if pr:
                        c = c + basis.inv_block[j][r] * pr
                if c:
                    out[word] = c
        self._fcoords[b] = out
        return out

    def reduce(self, raw: WordElem) -> WordElem:
        """Rewrite arbitrary words over the per-grade basis words."""
        out: WordElem = {}
        for (f_word, lam, e_word), c in raw.items():
            if not c:
                continue
            for f2, cf in self.fcoords(f_word).items():
                for e2, ce in self.ecoords(e_word).items():
                    add_into(out, (f2, lam, e2), c * cf * ce)
        return out

    # Generators

    def one(self) -> WordElem:
        return {((), self.zero_weight, ()): ONE}

    def gen_e(self, i: int) -> WordElem:
        return {((), self.zero_weight, (i,)): ONE}

    def gen_f(self, i: int) -> WordElem:
        return {((i,), self.zero_weight, ()): ONE}

    def gen_k(self, lam: WeightVec) -> WordElem:
        return {((), WeightVec(lam), ()): ONE}

    # Multiplication

    def _ef_raw(self, a: Word, b: Word) -> WordElem:
        """e_a f_b = Σ c f_{b'} k_μ e_{a'} with raw words."""
        if not a or not b:
            return {(b, self.zero_weight, a): ONE}
        key = (a, b)
        if key in self._ef:
            return self._ef[key]
        i, head = a[-1], a[:-1]
        out: WordElem = {}
        for (b2, mu, a2), c in self._ef_raw(head, b).items():
            add_into(out, (b2, mu, a2 + (i,)), c)
        alpha = self.alphas[i]
        denom = self.qi[i] - self.qi[i] ** -1
        suffix = [0] * self.rank
        for p in range(len(b) - 1, -1, -1):
            if b[p] == i:
                x = self._vexp_simple(suffix, i)
                c_plus = V ** (-x) / denom
                c_minus = -(V ** x) / denom
                rest = b[:p] + b[p + 1:]
                for (b2, mu, a2), c in self._ef_raw(head, rest).items():
                    y = self._vexp_simple(self.grade(a2), i)
                    add_into(out, (b2, mu + alpha, a2), c * c_plus * V ** (-y))
                    add_into(out, (b2, mu - alpha, a2), c * c_minus * V ** y)
            suffix[b[p]] += 1
        self._ef[key] = out
        return out

    def multiply(self, x: WordElem, y: WordElem) -> WordElem:
        raw: WordElem = {}
        for (f1, l1, e1), c1 in x.items():
            for (f2, l2, e2), c2 in y.items():
                for (b2, mu, a2), c in self._ef_raw(e1, f2).items():
                    shift = self.datum.vexp(l1, self.weight(b2)) + self.datum.vexp(
                        l2, self.weight(a2)
                    )
                    add_into(raw, (f1 + b2, l1 + mu + l2, a2 + e2), c1 * c2 * c * V ** (-shift))
        return self.reduce(raw)

    def product(self, factors: Sequence[WordElem]) -> WordElem:
        out = self.one()
        for factor in factors:
            out = self.multiply(out, factor)
        return out

    def scale(self, c: QScalar, x: WordElem) -> WordElem:
        if not c:
            return {}
        return {key: c * v for key, v in x.items()}

    def add(self, x: WordElem, y: WordElem, sign: int = 1) -> WordElem:
        out = dict(x)
        for key, c in y.items():
            add_into(out, key, c if sign > 0 else -c)
        return out

    # Hopf structure

    def delta_e(self, word: Word) -> List[Tuple[WeightVec, Word, Word, QScalar]]:
        """Δ(e_E) = Σ c k_μ e_{E'} ⊗ e_{E''} over basis words."""
        if word in self._delta_e:
            return self._delta_e[word]
        raw: Dict[Tuple[WeightVec, Word, Word], QScalar] = {}
        n = len(word)
        for mask in range(1 << n):
            right = [r for r in range(n) if mask >> r & 1]
            left = [t for t in range(n) if not mask >> t & 1]
            exponent = 0
            for r in right:
                for t in left:
                    if t < r:
                        exponent -= self.aa[word[r]][word[t]]
            mu = self.zero_weight
            for r in right:
                mu = mu + self.alphas[word[r]]
            key = (mu, tuple(word[t] for t in left), tuple(word[r] for r in right))
            add_into(raw, key, V ** exponent)
        out: Dict[Tuple[WeightVec, Word, Word], QScalar] = {}
        for (mu, lw, rw), c in raw.items():
            for l2, cl in self.ecoords(lw).items():
                for r2, cr in self.ecoords(rw).items():
                    add_into(out, (mu, l2, r2), c * cl * cr)
        listed = [(mu, lw, rw, c) for (mu, lw, rw), c in out.items()]
        self._delta_e[word] = listed
        return listed

    def delta_f(self, word: Word) -> List[Tuple[Word, Word, WeightVec, QScalar]]:
        """Δ(f_F) = Σ c f_{F'} ⊗ f_{F''} k_{−ν} over basis words."""
        if word in self._delta_f:
            return self._delta_f[word]
        raw: Dict[Tuple[Word, Word, WeightVec], QScalar] = {}
        n = len(word)
        for mask in range(1 << n):
            right = [t for t in range(n) if mask >> t & 1]
            left = [s for s in range(n) if not mask >> s & 1]
            exponent = 0
            for s in left:
                for t in right:
                    if t > s:
                        exponent += self.aa[word[s]][word[t]]
            nu = self.zero_weight
            for s in left:
                nu = nu + self.alphas[word[s]]
            key = (tuple(word[s] for s in left), tuple(word[t] for t in right), nu)
            add_into(raw, key, V ** exponent)
        out: Dict[Tuple[Word, Word, WeightVec], QScalar] = {}
        for (lw, rw, nu), c in raw.items():
            for l2, cl in self.fcoords(lw).items():
                for r2, cr in self.fcoords(rw).items():
                    add_into(out, (l2, r2, nu), c * cl * cr)
        listed = [(lw, rw, nu, c) for (lw, rw, nu), c in out.items()]
        self._delta_f[word] = listed
        return listed

    def coproduct(self, x: WordElem) -> Dict[Tuple[WordKey, WordKey], QScalar]:
        out: Dict[Tuple[WordKey, WordKey], QScalar] = {}
        for (f_word, lam, e_word), c in x.items():
            for fl, fr, nu, cf in self.delta_f(f_word):
                for mu, el, er, ce in self.delta_e(e_word):
                    left = (fl, lam + mu, el)
                    right = (fr, lam - nu, er)
                    add_into(out, (left, right), c * cf * ce)
        return out

    def counit(self, x: WordElem) -> QScalar:
        total = ZERO
        for (f_word, _, e_word), c in x.items():
            if not f_word and not e_word:
                total = total + c
        return total

    def _antipode_word(self, kind: str, word: Word) -> WordElem:
        key = (kind, word)
        if key not in self._antipode:
            factors = []
            for i in reversed(word):
                if kind == "e":
                    # S(e_i) = −k_i^{-1} e_i
                    factors.append({((), -self.alphas[i], (i,)): -ONE})
                else:
                    # S(f_i) = −f_i k_i
                    factors.append({((i,), self.alphas[i], ()): -ONE})
            self._antipode[key] = self.product(factors)
        return self._antipode[key]

    def antipode(self, x: WordElem) -> WordElem:
        out: WordElem = {}
        for (f_word, lam, e_word), c in x.items():
            img = self.product(
                [
                    self._antipode_word("e", e_word),
                    self.gen_k(-lam),
                    self._antipode_word("f", f_word),
                ]
            )
            out = self.add(out, self.scale(c, img))
        return out

    # Braid group action

    def _divided_word(self, i: int, n: int) -> Tuple[Word, QScalar]:
        """e_i^{(n)} as (word, 1/[n]_i!)."""
        return (i,) * n, ONE / qfact(n, self.qi[i])

    def _braid_generator(self, i: int, sign: int, kind: str, j: int) -> WordElem:
        qi = self.qi[i]
        ai = self.alphas[i]
        z = self.zero_weight
        if i == j:
            if kind == "e":
                if sign > 0:
                    # T_i(e_i) = −f_i k_i
                    return {((i,), ai, ()): -ONE}
                # T_i^{-1}(e_i) = −k_i^{-1} f_i
                return {((i,), -ai, ()): -(V ** self.aa[i][i])}
            if sign > 0:
                # T_i(f_i) = −k_i^{-1} e_i
                return {((), -ai, (i,)): -ONE}
            # T_i^{-1}(f_i) = −e_i k_i
            return {((), ai, (i,)): -(V ** -self.aa[i][i])}
        r = -self.datum.cartan[i][j]
        raw: WordElem = {}
        for s in range(r + 1):
            left, cl = self._divided_word(i, r - s)
            right, cr = self._divided_word(i, s)
            sgn = -ONE if s % 2 else ONE
            if kind == "e":
                if sign > 0:
                    word = left + (j,) + right
                else:
                    word = right + (j,) + left
                add_into(raw, ((), z, word), sgn * qi ** (-s) * cl * cr)
            else:
                if sign > 0:
                    word = right + (j,) + left
                else:
                    word = left + (j,) + right
                add_into(raw, (word, z, ()), sgn * qi ** s * cl * cr)
        return self.reduce(raw)

    def _braid_word(self, i: int, sign: int, kind: str, word: Word) -> WordElem:
        key = (i, sign, kind, word)
        if key not in self._braid:
            self._braid[key] = self.product(
                [self._braid_generator(i, sign, kind, j) for j in word]
            )
        return self._braid[key]

    def braid(self, i: int, sign: int, x: WordElem) -> WordElem:
        """T_i (sign +1) or T_i^{-1} (sign −1)."""
        out: WordElem = {}
        for (f_word, lam, e_word), c in x.items():
            img = self.product(
                [
                    self._braid_word(i, sign, "f", f_word),
                    self.gen_k(self.datum.reflect(i, lam)),
                    self._braid_word(i, sign, "e", e_word),
                ]
            )
            out = self.add(out, self.scale(c, img))
        return out

    def is_plus(self, x: WordElem) -> bool:
        return all(not f and lam.is_zero() for (f, lam, _) in x)

    def is_minus(self, x: WordElem) -> bool:
        return all(not e and lam.is_zero() for (_, lam, e) in x)


def grades_up_to(rank: int, height: int) -> List[Grade]:
    """All grades of total height ≤ height."""
    return [g for g in cartesian(range(height + 1), repeat=rank) if sum(g) <= height]
