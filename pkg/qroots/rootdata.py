"""
Root data, weight lattices and Weyl group words for the supported Cartan types.

Weights are stored in fundamental-weight coordinates. Indices are 0-based
internally; user-facing text (words, `w1`, `b2`) is 1-based.
"""

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import Matrix, Rational

from .config import get_settings
from .errors import NonReducedWordError, UnsupportedTypeError
from .logging_config import get_logger
from .models.schemas import RootDatumInfo

logger = get_logger(__name__)

CARTAN_MATRICES: Dict[str, Tuple[Tuple[int, ...], ...]] = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    # alpha_1 long
    "B2": ((2, -1), (-2, 2)),
}

# (alpha_i, alpha_i) / 2
SYMMETRIZERS: Dict[str, Tuple[int, ...]] = {
    "A1": (1,),
    "A2": (1, 1),
    "B2": (2, 1),
}

N_POSITIVE: Dict[str, int] = {"A1": 1, "A2": 3, "B2": 4}

Word = Tuple[int, ...]


class WeightVec(tuple):
    """An integral weight in fundamental-weight coordinates."""

    def __new__(cls, coords: Iterable[int]) -> "WeightVec":
        return super().__new__(cls, tuple(int(c) for c in coords))

    @classmethod
    def zero(cls, rank: int) -> "WeightVec":
        return cls((0,) * rank)

    @classmethod
    def unit(cls, rank: int, i: int) -> "WeightVec":
        return cls(1 if j == i else 0 for j in range(rank))

    def __add__(self, other: "WeightVec") -> "WeightVec":  # type: ignore[override]
        return WeightVec(a + b for a, b in zip(self, other))

    def __sub__(self, other: "WeightVec") -> "WeightVec":
        return WeightVec(a - b for a, b in zip(self, other))

    def __neg__(self) -> "WeightVec":
        return WeightVec(-a for a in self)

    def __mul__(self, k: int) -> "WeightVec":  # type: ignore[override]
        return WeightVec(k * a for a in self)

    __rmul__ = __mul__  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not any(self)

    def is_dominant(self) -> bool:
        return all(a >= 0 for a in self)

    def __repr__(self) -> str:
        return f"WeightVec{tuple(self)}"


@dataclass(frozen=True)
class RootDatum:
    """Cartan data, lattices, positive roots and a reduced word for w0."""

    cartan_type: str
    cartan: Tuple[Tuple[int, ...], ...]
    symmetrizer: Tuple[int, ...]
    w0_word: Word
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @cached_property
    def index(self) -> int:
        """d = |Λ/Q| = det of the Cartan matrix."""
        return abs(int(Matrix(self.cartan).det()))

    @cached_property
    def _gram_d(self) -> Tuple[Tuple[int, ...], ...]:
        # d * (ϖ_i, ϖ_j) as integers; G = D A^{-1}
        a_inv = Matrix(self.cartan).inv()
        g = Matrix.diag(*self.symmetrizer) * a_inv
        rows = []
        for i in range(self.rank):
            rows.append(tuple(int(self.index * g[i, j]) for j in range(self.rank)))
        return tuple(rows)

    def vexp(self, lam: Sequence[int], mu: Sequence[int]) -> int:
        """d·(λ, μ): the exponent of v in q^{(λ,μ)}."""
        g = self._gram_d
        total = 0
        for i, a in enumerate(lam):
            if a:
                row = g[i]
                for j, b in enumerate(mu):
                    if b:
                        total += a * b * row[j]
        return total

    def form(self, lam: Sequence[int], mu: Sequence[int]) -> Rational:
        return Rational(self.vexp(lam, mu), self.index)

    def zero(self) -> WeightVec:
        return WeightVec.zero(self.rank)

    def fundamental(self, i: int) -> WeightVec:
        return WeightVec.unit(self.rank, i)

    def alpha(self, i: int) -> WeightVec:
        return WeightVec(self.cartan[j][i] for j in range(self.rank))

    @cached_property
    def simple_roots(self) -> Tuple[WeightVec, ...]:
        return tuple(self.alpha(i) for i in range(self.rank))

    @cached_property
    def rho(self) -> WeightVec:
        return WeightVec((1,) * self.rank)

    def coroot(self, lam: Sequence[int], i: int) -> int:
        """⟨λ, α_i^∨⟩."""
        return lam[i]

    def qi_vexp(self, i: int) -> int:
        """Exponent of v in q_i."""
        return self.index * self.symmetrizer[i]

    def root_vexp(self, beta: Sequence[int]) -> int:
        """Exponent of v in q_β = q^{(β,β)/2}."""
        return self.vexp(beta, beta) // 2

    def reflect(self, i: int, lam: WeightVec) -> WeightVec:
        return lam - self.alpha(i) * lam[i]

    def act(self, word: Sequence[int], lam: WeightVec) -> WeightVec:
        """s_{i1}⋯s_{ir}(λ), rightmost reflection applied first."""
        out = WeightVec(lam)
        for i in reversed(tuple(word)):
            out = self.reflect(i, out)
        return out

    @cached_property
    def _adjugate(self) -> Tuple[Tuple[int, ...], ...]:
        # index * A^{-1}, integral
        a_inv = Matrix(self.cartan).inv()
        return tuple(
            tuple(int(self.index * a_inv[i, j]) for j in range(self.rank))
            for i in range(self.rank)
        )

    def _scaled_alpha_coords(self, lam: Sequence[int]) -> Tuple[int, ...]:
        adj = self._adjugate
        return tuple(
            sum(adj[i][j] * lam[j] for j in range(self.rank)) for i in range(self.rank)
        )

    def alpha_coords(self, lam: Sequence[int]) -> Tuple[int, ...]:
        """Coordinates of λ in the simple-root basis; λ must lie in Q."""
        scaled = self._scaled_alpha_coords(lam)
        if any(c % self.index for c in scaled):
            raise ValueError(f"{tuple(lam)} is not in the root lattice")
        return tuple(c // self.index for c in scaled)

    def coset_split(self, lam: Sequence[int]) -> Tuple[WeightVec, Tuple[int, ...]]:
        """λ = ν + Σ n_i α_i with ν having α-coordinates in [0, 1)."""
        powers = tuple(c // self.index for c in self._scaled_alpha_coords(lam))
        return WeightVec(lam) - self.from_alpha_coords(powers), powers

    def in_root_lattice(self, lam: Sequence[int]) -> bool:
        return not any(c % self.index for c in self._scaled_alpha_coords(lam))

    def from_alpha_coords(self, coords: Sequence[int]) -> WeightVec:
        out = self.zero()
        for i, c in enumerate(coords):
            if c:
                out = out + self.alpha(i) * c
        return out

    def ht(self, lam: Sequence[int]) -> int:
        return sum(self.alpha_coords(lam))

    @cached_property
    def betas(self) -> Tuple[WeightVec, ...]:
        """β_k = s_{i1}⋯s_{i(k-1)}(α_{ik}) for the fixed word."""
        return tuple(
            self.act(self.w0_word[:k], self.alpha(self.w0_word[k]))
            for k in range(len(self.w0_word))
        )

    @property
    def n_positive(self) -> int:
        return len(self.w0_word)

    @cached_property
    def positive_roots(self) -> Tuple[WeightVec, ...]:
        return tuple(sorted(set(self.betas), key=lambda b: (self.ht(b), self.alpha_coords(b))))

    def is_reduced(self, word: Sequence[int]) -> bool:
        return _is_reduced(self.cartan, tuple(word))

    def dot_twist(self, word: Sequence[int], lam: WeightVec) -> Tuple[Rational, WeightVec]:
        """((wλ − λ, ρ), wλ)."""
        image = self.act(word, lam)
        return self.form(image - lam, self.rho), image

    @cached_property
    def weyl_elements(self) -> Tuple[Word, ...]:
        """One shortest word per Weyl group element (orbit of ρ)."""
        seen = {self.rho: ()}
        queue = deque([((), self.rho)])
        while queue:
            word, image = queue.popleft()
            for i in range(self.rank):
                # left multiplication: s_i w
                nxt = self.reflect(i, image)
                if nxt not in seen:
                    seen[nxt] = (i,) + word
                    queue.append(((i,) + word, nxt))
        return tuple(sorted(seen.values(), key=lambda w: (len(w), w)))

    def same_element(self, w1: Sequence[int], w2: Sequence[int]) -> bool:
        return self.act(w1, self.rho) == self.act(w2, self.rho)

    @cached_property
    def reduced_words_of_w0(self) -> Tuple[Word, ...]:
        return _reduced_words(self.cartan, len(self.w0_word) or _count_positive(self.cartan))

    def pbw_exponents(self, gamma: Sequence[int]) -> List[Tuple[int, ...]]:
        """All (m_1..m_N) with Σ m_k β_k = γ, in a fixed order."""
        key = ("pbw", tuple(gamma))
        if key not in self._cache:
            target = self.alpha_coords(gamma)
            beta_coords = [self.alpha_coords(b) for b in self.betas]
            found: List[Tuple[int, ...]] = []

            def rec(k: int, rest: Tuple[int, ...], acc: Tuple[int, ...]) -> None:
                if k == len(beta_coords):
                    if not any(rest):
                        found.append(acc)
                    return
                b = beta_coords[k]
                m = 0
                while all(r - m * c >= 0 for r, c in zip(rest, b)):
                    rec(k + 1, tuple(r - m * c for r, c in zip(rest, b)), acc + (m,))
                    m += 1

            if any(c < 0 for c in target):
                self._cache[key] = []
            else:
                rec(0, target, ())
                self._cache[key] = sorted(found, reverse=True)
        return list(self._cache[key])

    def weights_of_height(self, h: int) -> List[WeightVec]:
        """All γ ∈ Q⁺ with ht(γ) = h."""
        out = []

        def rec(i: int, left: int, acc: Tuple[int, ...]) -> None:
            if i == self.rank - 1:
                out.append(self.from_alpha_coords(acc + (left,)))
                return
            for c in range(left + 1):
                rec(i + 1, left - c, acc + (c,))

        rec(0, h, ())
        return out

    def info(self) -> RootDatumInfo:
        return RootDatumInfo(
            type=self.cartan_type,
            w0_word=[i + 1 for i in self.w0_word],
            positive_roots=[list(self.alpha_coords(b)) for b in self.betas],
        )


def _reflect(cartan: Tuple[Tuple[int, ...], ...], i: int, lam: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(lam[j] - lam[i] * cartan[j][i] for j in range(len(cartan)))


def _is_reduced(cartan: Tuple[Tuple[int, ...], ...], word: Word) -> bool:
    # reduced iff s_{i1}⋯s_{i(k-1)}(α_{ik}) is positive for every k
    rank = len(cartan)
    a_inv = Matrix(cartan).inv()
    for k, ik in enumerate(word):
        lam = tuple(cartan[j][ik] for j in range(rank))
        for i in reversed(word[:k]):
            lam = _reflect(cartan, i, lam)
        coords = a_inv * Matrix(list(lam))
        if any(c < 0 for c in coords):
            return False
    return True


def _count_positive(cartan: Tuple[Tuple[int, ...], ...]) -> int:
    for name, matrix in CARTAN_MATRICES.items():
        if matrix == cartan:
            return N_POSITIVE[name]
    raise UnsupportedTypeError(f"unknown Cartan matrix {cartan}")


def _reduced_words(cartan: Tuple[Tuple[int, ...], ...], length: int) -> Tuple[Word, ...]:
    rank = len(cartan)
    words: List[Word] = []

    def rec(prefix: Word) -> None:
        if len(prefix) == length:
            words.append(prefix)
            return
        for i in range(rank):
            cand = prefix + (i,)
            if _is_reduced(cartan, cand):
                rec(cand)

    rec(())
    return tuple(words)


@lru_cache(maxsize=None)
def build_root_datum(cartan_type: str, w0_word: Optional[Tuple[int, ...]] = None) -> RootDatum:
    """Build the root datum; w0_word uses 0-based indices."""
    cartan_type = cartan_type.upper()
    if cartan_type not in CARTAN_MATRICES:
        raise UnsupportedTypeError(f"unsupported Cartan type {cartan_type!r}")
    if cartan_type == "B2" and not get_settings().enable_b2:
        raise UnsupportedTypeError("type B2 is behind the enable_b2 setting")
    cartan = CARTAN_MATRICES[cartan_type]
    n_pos = _count_positive(cartan)
    if w0_word is None:
        w0_word = _reduced_words(cartan, n_pos)[0]
    else:
        w0_word = tuple(int(i) for i in w0_word)
        if any(i < 0 or i >= len(cartan) for i in w0_word):
            raise NonReducedWordError(f"word {w0_word} uses an index outside the rank")
        if len(w0_word) != n_pos or not _is_reduced(cartan, w0_word):
            raise NonReducedWordError(
                f"word {tuple(i + 1 for i in w0_word)} is not a reduced word for w0"
            )
    datum = RootDatum(cartan_type, cartan, SYMMETRIZERS[cartan_type], w0_word)
    logger.debug("Root datum built", type=cartan_type, w0_word=list(w0_word))
    return datum
