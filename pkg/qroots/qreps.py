"""
Weight modules over U: Verma windows, finite-dimensional simples, their
𝔸-lattices and Weyl modules at ζ, ★-duals, tensor products and the braid
operators T_i.

A module stores one matrix per generator with column j the image of basis
vector j. At the 𝔽-level every element of U acts through its expansion in
triangular words; a ζ-level module remembers the 𝔽-module and the 𝔸-lattice
it was specialized from and acts by lifting.
"""

from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .errors import NotRegularError, QrootsError, WindowError
from .linalg import (
    identity,
    independent_rows,
    inverse,
    is_zero_matrix,
    lattice_span,
    mat_add,
    mat_scale,
    mat_sub,
    matmul,
    matvec,
    rank,
    transpose,
    zeros,
    coordinates,
)
from .logging_config import get_logger
from .qscalars import (
    FIELD,
    ONE,
    QScalar,
    RootOfUnity,
    V,
    at_one,
    exp_coeff,
    qbinom,
    qfact,
    valuation_at_one,
)
from .rootdata import WeightVec
from .uqalg import QuantumGroup, UElem, ZetaUElem, format_weight
from .uqalg.element import Mono
from .uqalg.words import Grade, grades_up_to

logger = get_logger(__name__)

Matrix = List[List[Any]]
Vector = List[Any]

LEVEL_F = "F"
LEVEL_ZETA = "zeta"


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; basis (i, j) of the product sits at i·dim(b) + j."""
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


class WeightModule:
    """A finite weight window of a U-module, at the 𝔽-level or at ζ."""

    def __init__(
        self,
        qg: QuantumGroup,
        weights: Sequence[WeightVec],
        e: Sequence[Matrix],
        f: Sequence[Matrix],
        *,
        level: str = LEVEL_F,
        rou: Optional[RootOfUnity] = None,
        highest: Optional[WeightVec] = None,
        lowest: Optional[WeightVec] = None,
        degrees: Optional[Sequence[WeightVec]] = None,
        labels: Optional[Sequence[Any]] = None,
        parent: Optional["WeightModule"] = None,
        lattice: Optional["LatticeBasis"] = None,
        divided: Optional[Callable[[str, int, int], Matrix]] = None,
        name: str = "",
    ):
        if level == LEVEL_ZETA and rou is None:
            raise ValueError("a ζ-level module needs its root of unity")
        self.qg = qg
        self.datum = qg.datum
        self.weights: Tuple[WeightVec, ...] = tuple(WeightVec(w) for w in weights)
        self.e: Tuple[Matrix, ...] = tuple(e)
        self.f: Tuple[Matrix, ...] = tuple(f)
        self.level = level
        self.rou = rou
        self.highest = highest
        self.lowest = lowest
        self.degrees = tuple(degrees) if degrees is not None else self.weights
        self.labels = tuple(labels) if labels is not None else tuple(range(len(self.weights)))
        self.parent = parent
        self.lattice = lattice
        self._divided_source = divided
        self.name = name
        self._word_cache: Dict[Tuple[str, Tuple[int, ...]], Matrix] = {}
        self._divided_cache: Dict[Tuple[str, int, int], Matrix] = {}

    # Shape

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def domain(self) -> Any:
        return FIELD if self.level == LEVEL_F else self.rou.domain

    def zero_vector(self) -> Vector:
        return [self.domain.zero] * self.dim

    def basis_vector(self, j: int) -> Vector:
        vec = self.zero_vector()
        vec[j] = self.domain.one
        return vec

    def identity(self) -> Matrix:
        return identity(self.dim, self.domain)

    def character(self) -> Dict[WeightVec, int]:
        return dict(Counter(self.weights))

    def character_json(self) -> Dict[str, int]:
        return {
            format_weight(w, self.datum): n
            for w, n in sorted(self.character().items(), key=lambda item: tuple(item[0]))
        }

    # Scalars at this level

    def vscalar(self, k: int) -> Any:
        """v^k, or ζ′^k at the ζ-level."""
        return V**k if self.level == LEVEL_F else self.rou.zpow(k)

    def k_diagonal(self, lam: Sequence[int]) -> List[Any]:
        return [self.vscalar(self.datum.vexp(lam, w)) for w in self.weights]

    def k_matrix(self, lam: Sequence[int]) -> Matrix:
        out = zeros(self.dim, self.dim, self.domain)
        for j, c in enumerate(self.k_diagonal(lam)):
            out[j][j] = c
        return out

    def ki_matrix(self, i: int, power: int = 1) -> Matrix:
        return self.k_matrix(self.datum.alpha(i) * power)

    # Action

    def _word_matrix(self, kind: str, word: Tuple[int, ...]) -> Matrix:
        """x_{w1}⋯x_{wr} for a word in the letters e_i or f_i."""
        key = (kind, word)
        if key not in self._word_cache:
            gens = self.e if kind == "e" else self.f
            out = self.identity()
            for i in word:
                out = matmul(out, gens[i], self.domain)
            self._word_cache[key] = out
        return self._word_cache[key]

    def matrix(self, u: Any) -> Matrix:
        """The matrix of u ∈ U (𝔽-level) or u ∈ U_ζ, U_ζ^L (ζ-level)."""
        if self.level == LEVEL_ZETA:
            lifted = u.lift() if isinstance(u, ZetaUElem) else u
            return self.lattice.specialize_matrix(self.parent.matrix(lifted))
        if isinstance(u, ZetaUElem):
            raise ValueError("a ζ-element cannot act on an 𝔽-level module")
        out = zeros(self.dim, self.dim, FIELD)
        for (f_word, lam, e_word), c in self.qg.to_words(u).items():
            left = self._word_matrix("f", f_word)
            right = self._word_matrix("e", e_word)
            diag = self.k_diagonal(lam)
            middle = [[diag[r] * x for x in row] for r, row in enumerate(right)]
            out = mat_add(out, mat_scale(c, matmul(left, middle, FIELD)))
        return out

    def act(self, u: Any, vec: Vector) -> Vector:
        return matvec(self.matrix(u), vec, self.domain)

    def divided_matrix(self, kind: str, i: int, n: int) -> Matrix:
        """e_i^{(n)} or f_i^{(n)} on the window."""
        if n == 0:
            return self.identity()
        key = (kind, i, n)
        if key not in self._divided_cache:
            if self._divided_source is not None:
                value = self._divided_source(kind, i, n)
            elif self.level == LEVEL_F:
                gen = self.e[i] if kind == "e" else self.f[i]
                power = self.identity()
                for _ in range(n):
                    power = matmul(power, gen, FIELD)
                value = mat_scale(ONE / qfact(n, V ** self.datum.qi_vexp(i)), power)
            else:
                parent = self.parent.divided_matrix(kind, i, n)
                value = self.lattice.specialize_matrix(parent)
            self._divided_cache[key] = value
        return self._divided_cache[key]

    # Certification on the window

    def relation_defects(self) -> List[str]:
        """Names of defining relations that fail as matrix identities."""
        datum = self.datum
        dom = self.domain
        failures: List[str] = []
        for i in range(datum.rank):
            for name, gen, shift in (("e", self.e[i], datum.alpha(i)), ("f", self.f[i], -datum.alpha(i))):
                if not self._homogeneous(gen, shift):
                    failures.append(f"{name}{i + 1} is not homogeneous of weight {list(shift)}")
        for i in range(datum.rank):
            qi = self.vscalar(datum.qi_vexp(i))
            for j in range(datum.rank):
                lhs = mat_sub(matmul(self.e[i], self.f[j], dom), matmul(self.f[j], self.e[i], dom))
                if i == j:
                    rhs = mat_scale(
                        dom.one / (qi - dom.one / qi),
                        mat_sub(self.ki_matrix(i), self.ki_matrix(i, -1)),
                    )
                    lhs = mat_sub(lhs, rhs)
                if not is_zero_matrix(lhs):
                    failures.append(f"[e{i + 1}, f{j + 1}]")
        if self.level == LEVEL_F:
            for i in range(datum.rank):
                for j in range(datum.rank):
                    if i == j:
                        continue
                    r = 1 - datum.coroot(datum.alpha(j), i)
                    for name, gens in (("e", self.e), ("f", self.f)):
                        total = zeros(self.dim, self.dim, dom)
                        for s in range(r + 1):
                            c = qbinom(r, s, V ** datum.qi_vexp(i)) * (-1) ** s
                            word = (i,) * (r - s) + (j,) + (i,) * s
                            total = mat_add(total, mat_scale(c, self._word_matrix(name, word)))
                        if not is_zero_matrix(total):
                            failures.append(f"Serre {name}{i + 1}{j + 1}")
        return failures

    def _homogeneous(self, mat: Matrix, shift: WeightVec) -> bool:
        return all(
            not x or self.weights[r] == self.weights[c] + shift
            for r, row in enumerate(mat)
            for c, x in enumerate(row)
        )

    def divided_bound(self, i: int) -> int:
        """Largest n for which e_i^{(n)} or f_i^{(n)} can be nonzero on the window."""
        pairings = [self.datum.coroot(w, i) for w in self.weights]
        if not pairings:
            return 0
        return (max(pairings) - min(pairings)) // 2

    def __repr__(self) -> str:
        return f"WeightModule({self.name or 'M'}, dim={self.dim}, level={self.level})"


# Verma windows and simples

def _mono_element(qg: QuantumGroup, mono: Mono, kind: str, divided: bool = False) -> UElem:
    zero = qg.datum.zero()
    key = (qg.empty, zero, mono) if kind == "e" else (mono, zero, qg.empty)
    c = ONE / qg.pbw.lusztig_factor(mono) if divided else ONE
    return qg.monomial(key, c)


def _grades(qg: QuantumGroup, depth: int) -> List[Grade]:
    return sorted(grades_up_to(qg.rank, depth), key=lambda g: (sum(g), g))


def verma(qg: QuantumGroup, lam: Sequence[int], sign: int = -1, depth: Optional[int] = None) -> WeightModule:
    """M_−(λ) (highest weight λ, basis f^F v) or M_+(λ) (lowest weight λ, basis e^E v)."""
    from .config import get_settings

    lam = WeightVec(lam)
    depth = get_settings().default_depth if depth is None else depth
    if depth < 0:
        raise ValueError("depth must be non-negative")
    datum = qg.datum
    kind = "f" if sign < 0 else "e"
    labels: List[Tuple[Grade, Mono]] = []
    weights: List[WeightVec] = []
    for grade in _grades(qg, depth):
        beta = datum.from_alpha_coords(grade)
        for mono in qg.grade_monos(grade):
            labels.append((grade, mono))
            weights.append(lam - beta if sign < 0 else lam + beta)
    index = {label[1]: j for j, label in enumerate(labels)}
    dim = len(labels)
    e_mats = [zeros(dim, dim, FIELD) for _ in range(qg.rank)]
    f_mats = [zeros(dim, dim, FIELD) for _ in range(qg.rank)]
    for j, (_, mono) in enumerate(labels):
        basis = _mono_element(qg, mono, kind)
        for i in range(qg.rank):
            if sign < 0:
                raising = qg.e(i) * basis
                for (fm, mu, em), c in raising.terms.items():
                    if not any(em):
                        e_mats[i][index[fm]][j] += c * V ** datum.vexp(mu, lam)
                lowering = qg.f(i) * basis
                for (fm, _, _), c in lowering.terms.items():
                    if fm in index:
                        f_mats[i][index[fm]][j] += c
            else:
                raising = qg.e(i) * basis
                for (_, _, em), c in raising.terms.items():
                    if em in index:
                        e_mats[i][index[em]][j] += c
                lowering = basis * qg.f(i)
                for (fm, mu, em), c in lowering.terms.items():
                    if not any(fm):
                        wt = lam + qg.key_weight((qg.empty, mu, em))
                        f_mats[i][index[em]][j] -= c * V ** datum.vexp(mu, wt)
    logger.debug("Verma window built", weight=list(lam), sign=sign, depth=depth, dim=dim)
    return WeightModule(
        qg,
        weights,
        e_mats,
        f_mats,
        highest=lam if sign < 0 else None,
        lowest=lam if sign > 0 else None,
        labels=labels,
        name=f"M{'-' if sign < 0 else '+'}({format_weight(lam, datum)})",
    )


def _extremal_depth(qg: QuantumGroup, lam: WeightVec) -> int:
    datum = qg.datum
    return datum.ht(lam - datum.act(datum.w0_word, lam))


def shapovalov_block(module: WeightModule, grade: Grade, sign: int) -> Tuple[List[int], Matrix]:
    """Indices of a Verma window in one grade and the contravariant form there.

    Entry [m][n] is the coefficient of the extremal vector in x^{m} b_n, where
    x^{m} runs over the opposite PBW monomials of the grade.
    """
    qg = module.qg
    idx = [j for j, (g, _) in enumerate(module.labels) if g == grade]
    opposite = "e" if sign < 0 else "f"
    block = []
    for j in idx:
        mono = module.labels[j][1]
        column_source = module.matrix(_mono_element(qg, mono, opposite))
        block.append([column_source[0][n] for n in idx])
    return idx, block


def radical_quotient(module: WeightModule, sign: int) -> WeightModule:
    """The quotient of a Verma window by the radical of its contravariant form."""
    qg = module.qg
    grades = sorted({g for g, _ in module.labels}, key=lambda g: (sum(g), g))
    kept: List[int] = []
    blocks: Dict[Grade, Tuple[List[int], Matrix, List[int]]] = {}
    for grade in grades:
        idx, block = shapovalov_block(module, grade, sign)
        pivots = independent_rows(transpose(block, FIELD, len(idx)), FIELD, len(idx))
        blocks[grade] = (idx, block, pivots)
        kept.extend(idx[p] for p in pivots)
    position = {j: n for n, j in enumerate(kept)}
    dim = len(kept)

    def reduce(vector: Vector, grade: Grade) -> Dict[int, QScalar]:
        if grade not in blocks:
            return {}
        idx, block, pivots = blocks[grade]
        if not pivots:
            return {}
        local = [vector[j] for j in idx]
        target = matvec(block, local, FIELD)
        columns = [[row[p] for row in block] for p in pivots]
        coeffs = coordinates(columns, target, FIELD)
        if coeffs is None:
            raise QrootsError(f"contravariant form reduction failed at grade {grade}")
        return {position[idx[p]]: c for p, c in zip(pivots, coeffs) if c}

    def generator(mats: Sequence[Matrix]) -> List[Matrix]:
        out = []
        for mat in mats:
            new = zeros(dim, dim, FIELD)
            for n, j in enumerate(kept):
                column = [row[j] for row in mat]
                support = [r for r, x in enumerate(column) if x]
                if not support:
                    continue
                grade = module.labels[support[0]][0]
                for r, c in reduce(column, grade).items():
                    new[r][n] = c
            out.append(new)
        return out

    weights = [module.weights[j] for j in kept]
    labels = [module.labels[j] for j in kept]
    return WeightModule(
        qg,
        weights,
        generator(module.e),
        generator(module.f),
        highest=module.highest,
        lowest=module.lowest,
        labels=labels,
        name=module.name.replace("M", "L", 1),
    )


def simple_fd(qg: QuantumGroup, lam: Sequence[int], sign: int = -1) -> WeightModule:
    """L_−(λ) with highest weight λ (sign −1) or L_+(−λ) with lowest weight −λ (sign +1)."""
    lam = WeightVec(lam)
    if not lam.is_dominant():
        raise QrootsError(f"{format_weight(lam, qg.datum)} is not dominant")
    return _simple_fd(qg, lam, sign)


@lru_cache(maxsize=128)
def _simple_fd(qg: QuantumGroup, lam: WeightVec, sign: int) -> WeightModule:
    depth = _extremal_depth(qg, lam)
    window = verma(qg, lam if sign < 0 else -lam, sign, depth)
    module = radical_quotient(window, sign)
    logger.debug("Simple module built", weight=list(lam), sign=sign, dim=module.dim)
    return module


# 𝔸-lattices and Weyl modules at ζ

@dataclass
class LatticeBasis:
    """An 𝔸-basis of a lattice inside an 𝔽-module.

    `columns[j]` is the j-th lattice vector in the module's coordinates; the
    lattice basis is ordered so that it stays adapted to the weight spaces.
    """

    module: WeightModule
    columns: List[Vector]
    valuation: Callable[[QScalar], int]
    specializer: Callable[[QScalar], Any]

    @cached_property
    def matrix(self) -> Matrix:
        return transpose(self.columns, FIELD, self.module.dim) if self.columns else []

    @cached_property
    def inverse(self) -> Matrix:
        return inverse(self.matrix, FIELD)

    @cached_property
    def weights(self) -> Tuple[WeightVec, ...]:
        out = []
        for col in self.columns:
            j = next(r for r, x in enumerate(col) if x)
            out.append(self.module.weights[j])
        return tuple(out)

    def coords(self, vector: Vector) -> Vector:
        return matvec(self.inverse, vector, FIELD)

    def is_integral(self, vector: Vector) -> bool:
        return all(not c or self.valuation(c) >= 0 for c in self.coords(vector))

    def specialize_vector(self, vector: Vector) -> Vector:
        return [self._special(c) for c in self.coords(vector)]

    def specialize_matrix(self, mat: Matrix) -> Matrix:
        conj = matmul(self.inverse, matmul(mat, self.matrix, FIELD), FIELD)
        return [[self._special(c) for c in row] for row in conj]

    def _special(self, c: QScalar) -> Any:
        if c and self.valuation(c) < 0:
            raise NotRegularError("operator does not preserve the lattice")
        return self.specializer(c)

    def dual(self, dual_module: WeightModule) -> "LatticeBasis":
        """The dual lattice inside the ★-dual module: its basis matrix is (B^{-1})ᵀ."""
        return LatticeBasis(
            dual_module,
            [list(row) for row in self.inverse],
            self.valuation,
            self.specializer,
        )


def _divided_generators(module: WeightModule) -> Dict[Grade, List[Vector]]:
    """Images f^{(F)} v of the highest vector, grouped by grade."""
    qg = module.qg
    top = module.basis_vector(0)
    out: Dict[Grade, List[Vector]] = {}
    grades = sorted({g for g, _ in module.labels}, key=lambda g: (sum(g), g))
    for grade in grades:
        gens = []
        for mono in qg.grade_monos(grade):
            gens.append(module.act(_mono_element(qg, mono, "f", divided=True), top))
        out[grade] = gens
    return out


def _build_lattice(module: WeightModule, valuation: Callable[[QScalar], int],
                   specializer: Callable[[QScalar], Any]) -> LatticeBasis:
    generators = _divided_generators(module)
    columns: List[Vector] = []
    for grade, gens in generators.items():
        idx = [j for j, (g, _) in enumerate(module.labels) if g == grade]
        local = [[vec[j] for j in idx] for vec in gens]
        span = lattice_span(local, valuation, len(idx))
        if len(span) != len(idx):
            raise QrootsError(
                f"divided powers span rank {len(span)} of {len(idx)} at grade {list(grade)}"
            )
        for vec in span:
            full = module.zero_vector()
            for j, x in zip(idx, vec):
                full[j] = x
            columns.append(full)
    return LatticeBasis(module, columns, valuation, specializer)


def lattice_and_weyl(
    qg: QuantumGroup, lam: Sequence[int], rou: RootOfUnity
) -> Tuple[LatticeBasis, WeightModule]:
    """L_{−,𝔸}(λ) = U_𝔸^L·v_λ and the Weyl module L_{−,ζ}(λ) it specializes to."""
    simple = simple_fd(qg, lam)
    lattice = _build_lattice(simple, rou.valuation, rou.specialize)
    e_z = [lattice.specialize_matrix(m) for m in simple.e]
    f_z = [lattice.specialize_matrix(m) for m in simple.f]
    weyl = WeightModule(
        qg,
        lattice.weights,
        e_z,
        f_z,
        level=LEVEL_ZETA,
        rou=rou,
        highest=simple.highest,
        labels=simple.labels,
        parent=simple,
        lattice=lattice,
        name=simple.name.replace("L", "W", 1),
    )
    logger.debug("Weyl module built", weight=list(WeightVec(lam)), ell=rou.ell, dim=weyl.dim)
    return lattice, weyl


def lattice_split_witness(qg: QuantumGroup, lattice: LatticeBasis, rou: RootOfUnity) -> Dict[str, Any]:
    """The divided-power images reduce to a spanning set modulo ζ′ in every weight.

    Full specialized rank of the generators in lattice coordinates means the
    quotient of the Verma lattice by the kernel is torsion free, so the
    surjection onto the lattice splits over 𝔸.
    """
    module = lattice.module
    ranks = {}
    ok = True
    for grade, gens in _divided_generators(module).items():
        weight = module.highest - qg.datum.from_alpha_coords(grade)
        idx = [j for j, w in enumerate(lattice.weights) if w == weight]
        if not idx:
            continue
        local = [[vec[j] for j in idx] for vec in map(lattice.specialize_vector, gens)]
        r = rank(local, rou.domain, len(idx))
        ranks[str(list(grade))] = [r, len(idx)]
        ok = ok and r == len(idx)
    return {"ok": ok, "ranks": ranks}


def star_dual(module: WeightModule) -> WeightModule:
    """M★ with ⟨u m*, m⟩ = ⟨m*, S(u) m⟩.

    The dual vector m*_j has actual weight −wt(m_j); `degrees` keeps wt(m_j).
    """
    qg = module.qg
    if module.level == LEVEL_ZETA:
        parent_dual = star_dual(module.parent)
        lattice = module.lattice.dual(parent_dual)
        return WeightModule(
            qg,
            [-w for w in module.weights],
            [lattice.specialize_matrix(m) for m in parent_dual.e],
            [lattice.specialize_matrix(m) for m in parent_dual.f],
            level=LEVEL_ZETA,
            rou=module.rou,
            highest=-module.lowest if module.lowest is not None else None,
            lowest=-module.highest if module.highest is not None else None,
            degrees=module.weights,
            labels=module.labels,
            parent=parent_dual,
            lattice=lattice,
            name=f"{module.name}*",
        )
    dim = module.dim
    e_dual = []
    f_dual = []
    for i in range(qg.rank):
        # S(e_i) = −k_i^{-1} e_i, S(f_i) = −f_i k_i
        s_e = mat_scale(-ONE, matmul(module.ki_matrix(i, -1), module.e[i], FIELD))
        s_f = mat_scale(-ONE, matmul(module.f[i], module.ki_matrix(i), FIELD))
        e_dual.append(transpose(s_e, FIELD, dim))
        f_dual.append(transpose(s_f, FIELD, dim))
    return WeightModule(
        qg,
        [-w for w in module.weights],
        e_dual,
        f_dual,
        highest=-module.lowest if module.lowest is not None else None,
        lowest=-module.highest if module.highest is not None else None,
        degrees=module.weights,
        labels=module.labels,
        name=f"{module.name}*",
    )


def double_dual_isomorphism(module: WeightModule) -> Matrix:
    """ψ: M★★ → M intertwining the actions; S² = Ad(k_{−2ρ}) gives ψ = k_{2ρ}."""
    return module.k_matrix(module.datum.rho * 2)


def tensor(m1: WeightModule, m2: WeightModule) -> WeightModule:
    """M₁⊗M₂ through Δe_i = e_i⊗1 + k_i⊗e_i and Δf_i = f_i⊗k_i^{-1} + 1⊗f_i."""
    if m1.level != LEVEL_F or m2.level != LEVEL_F:
        raise ValueError("tensor products are built at the 𝔽-level")
    qg = m1.qg
    i1, i2 = m1.identity(), m2.identity()
    e_mats, f_mats = [], []
    for i in range(qg.rank):
        e_mats.append(mat_add(kron(m1.e[i], i2), kron(m1.ki_matrix(i), m2.e[i])))
        f_mats.append(mat_add(kron(m1.f[i], m2.ki_matrix(i, -1)), kron(i1, m2.f[i])))
    weights = [a + b for a in m1.weights for b in m2.weights]
    labels = [(a, b) for a in m1.labels for b in m2.labels]
    return WeightModule(qg, weights, e_mats, f_mats, labels=labels, name=f"{m1.name}⊗{m2.name}")


def direct_sum(m1: WeightModule, m2: WeightModule) -> WeightModule:
    def block(a: Matrix, b: Matrix) -> Matrix:
        n1, n2 = len(a), len(b)
        out = zeros(n1 + n2, n1 + n2, m1.domain)
        for r in range(n1):
            out[r][:n1] = a[r]
        for r in range(n2):
            out[n1 + r][n1:] = b[r]
        return out

    return WeightModule(
        m1.qg,
        m1.weights + m2.weights,
        [block(a, b) for a, b in zip(m1.e, m2.e)],
        [block(a, b) for a, b in zip(m1.f, m2.f)],
        level=m1.level,
        rou=m1.rou,
        labels=[(0, x) for x in m1.labels] + [(1, x) for x in m2.labels],
        name=f"{m1.name}⊕{m2.name}",
    )


# Braid operators

def _h_exponent(module: WeightModule, i: int, wt: WeightVec) -> int:
    """v-exponent of q^{(λ,α_i)((λ,α_i^∨)+1)/2} on M_λ."""
    datum = module.datum
    n = datum.coroot(wt, i)
    return datum.vexp(wt, datum.alpha(i)) * (n + 1) // 2


def _series(module: WeightModule, i: int, n_max: int,
            term: Callable[[int], Matrix]) -> Matrix:
    out = module.identity()
    for n in range(1, n_max + 1):
        out = mat_add(out, term(n))
    return out


def braid_T_matrix(module: WeightModule, i: int, form: int = 1, sign: int = 1) -> Matrix:
    """T_i on the window, in either product form of the exp_{q_i^{-1}} factors.

    Each exp factor is rewritten in divided powers so that the same formula
    serves the 𝔽-level and the ζ-level.
    """
    dom = module.domain
    qi = module.datum.qi_vexp(i)
    n_max = module.divided_bound(i)
    vs = module.vscalar

    def kd(kind: str, n: int, k_power: int) -> Matrix:
        return matmul(module.ki_matrix(i, k_power), module.divided_matrix(kind, i, n), dom)

    if form == 1:
        a = _series(module, i, n_max, lambda n: mat_scale(vs(qi * n * (n + 1) // 2), kd("f", n, n)))
        b = _series(module, i, n_max, lambda n: mat_scale(
            vs(-qi * n * (n - 1) // 2) * (-1) ** n, module.divided_matrix("e", i, n)))
        c = _series(module, i, n_max, lambda n: mat_scale(
            vs(qi * (-3 * n * (n - 1) // 2 - n)), kd("f", n, -n)))
    elif form == 2:
        a = _series(module, i, n_max, lambda n: mat_scale(
            vs(qi * n * (n + 1) // 2) * (-1) ** n, kd("e", n, -n)))
        b = _series(module, i, n_max, lambda n: mat_scale(
            vs(-qi * n * (n - 1) // 2), module.divided_matrix("f", i, n)))
        c = _series(module, i, n_max, lambda n: mat_scale(
            vs(qi * (-3 * n * (n - 1) // 2 - n)) * (-1) ** n, kd("e", n, n)))
    else:
        raise ValueError(f"unknown product form {form}")
    h = zeros(module.dim, module.dim, dom)
    for j, wt in enumerate(module.weights):
        h[j][j] = vs(_h_exponent(module, i, wt))
    out = matmul(a, matmul(b, matmul(c, h, dom), dom), dom)
    return out if sign > 0 else inverse(out, dom)


def braid_T_module(i: int, module: WeightModule, vec: Vector, sign: int = 1, form: int = 1) -> Vector:
    return matvec(braid_T_matrix(module, i, form, sign), vec, module.domain)


def braid_word_matrix(module: WeightModule, word: Sequence[int], sign: int = 1) -> Matrix:
    """T_{i1}⋯T_{ir} on the window."""
    out = module.identity()
    for i in word:
        out = matmul(out, braid_T_matrix(module, i, sign=sign), module.domain)
    return out


def intertwining_defect(module: WeightModule, i: int, u: UElem) -> bool:
    """True when T_i(u m) = T_i(u) T_i(m) fails on the window."""
    t = braid_T_matrix(module, i)
    lhs = matmul(t, module.matrix(u), module.domain)
    rhs = matmul(module.matrix(module.qg.braid_T(i, 1, u)), t, module.domain)
    return not is_zero_matrix(mat_sub(lhs, rhs))


def weight_map_defect(module: WeightModule, i: int) -> bool:
    """True when T_i does not send M_λ into M_{s_iλ}."""
    t = braid_T_matrix(module, i)
    for r, row in enumerate(t):
        for c, x in enumerate(row):
            if x and module.weights[r] != module.datum.reflect(i, module.weights[c]):
                return True
    return False


def delta_T_defect(m1: WeightModule, m2: WeightModule, i: int) -> Matrix:
    """ΔT_i − exp_{q_i}(q_i^{-2}(q_i−q_i^{-1}) e_ik_i^{-1}⊗f_ik_i)(T_i⊗T_i) on M₁⊗M₂."""
    both = tensor(m1, m2)
    lhs = braid_T_matrix(both, i)
    qi = V ** m1.datum.qi_vexp(i)
    x = mat_scale(
        (qi - ONE / qi) / qi**2,
        kron(matmul(m1.e[i], m1.ki_matrix(i, -1), FIELD), matmul(m2.f[i], m2.ki_matrix(i), FIELD)),
    )
    exp_x = both.identity()
    power = both.identity()
    n = 0
    while True:
        n += 1
        power = matmul(power, x, FIELD)
        if is_zero_matrix(power):
            break
        if n > both.dim:
            raise WindowError("exp series does not terminate on the tensor window")
        exp_x = mat_add(exp_x, mat_scale(exp_coeff(n, qi), power))
    rhs = matmul(exp_x, kron(braid_T_matrix(m1, i), braid_T_matrix(m2, i)), FIELD)
    return mat_sub(lhs, rhs)


# Classical pullback through the Frobenius map

def classical_lattice(qg: QuantumGroup, lam: Sequence[int]) -> LatticeBasis:
    """The Z[v, v^{-1}]-form of L_−(λ), localized at v = 1; its specialization is L̄(λ)."""
    return _build_lattice(simple_fd(qg, lam), valuation_at_one, at_one)


def classical_divided(
    qg: QuantumGroup, lam: Sequence[int]
) -> Tuple[List[WeightVec], Callable[[str, int, int], Matrix]]:
    """The classical simple L̄(λ): weights and rational divided-power matrices."""
    lattice = classical_lattice(qg, lam)
    simple = lattice.module

    def divided(kind: str, i: int, n: int) -> Matrix:
        return lattice.specialize_matrix(simple.divided_matrix(kind, i, n))

    return list(lattice.weights), divided


def classical_pullback(
    qg: QuantumGroup, lam: Sequence[int], rou: RootOfUnity
) -> Tuple[WeightModule, Callable[[str, int, int], Matrix]]:
    """π*L̄(λ) as a ζ-level module, with the classical divided powers alongside."""
    weights, classical = classical_divided(qg, lam)
    ell = rou.ell
    dim = len(weights)

    def lift(mat: Matrix) -> Matrix:
        return [[rou.rational(x) for x in row] for row in mat]

    def divided(kind: str, i: int, n: int) -> Matrix:
        if n % ell:
            return zeros(dim, dim, rou.domain)
        return lift(classical(kind, i, n // ell))

    zero = zeros(dim, dim, rou.domain)
    module = WeightModule(
        qg,
        [w * ell for w in weights],
        [zero] * qg.rank,
        [zero] * qg.rank,
        level=LEVEL_ZETA,
        rou=rou,
        divided=divided,
        name=f"Fr*L({format_weight(WeightVec(lam), qg.datum)})",
    )
    return module, lambda kind, i, n: lift(classical(kind, i, n))


def classical_braid(dim: int, domain: Any, divided: Callable[[str, int, int], Matrix], i: int) -> Matrix:
    """exp(f̄_i) exp(−ē_i) exp(f̄_i) from classical divided powers."""
    def exp(kind: str, sign: int) -> Matrix:
        out = identity(dim, domain)
        for n in range(1, dim + 1):
            out = mat_add(out, mat_scale(domain.convert(sign**n), divided(kind, i, n)))
        return out

    f = exp("f", 1)
    return matmul(f, matmul(exp("e", -1), f, domain), domain)


def pullback_braid_defect(qg: QuantumGroup, lam: Sequence[int], rou: RootOfUnity, i: int) -> bool:
    """True when T_i on π*L̄(λ) differs from exp(f̄_i)exp(−ē_i)exp(f̄_i)."""
    module, classical = classical_pullback(qg, lam, rou)
    quantum = braid_T_matrix(module, i)
    expected = classical_braid(module.dim, rou.domain, classical, i)
    return not is_zero_matrix(mat_sub(quantum, expected))


# Characters of the torus

def chi_independence_witness(qg: QuantumGroup, rou: RootOfUnity, lam: Sequence[int],
                             mu: Sequence[int]) -> Dict[str, Any]:
    """An element h of U_ζ^{L,0} with χ_λ(h) = 1 and χ_μ(h) = 0.

    h is an affine combination of one [k_i; 0; t]; χ_ν([k_i; 0; t]) is the
    Gaussian binomial [⟨ν, α_i^∨⟩ choose t]_{q_i} at ζ.
    """
    datum = qg.datum
    lam, mu = WeightVec(lam), WeightVec(mu)
    if lam == mu:
        raise ValueError("χ-independence needs distinct weights")
    for i in range(datum.rank):
        n, m = datum.coroot(lam, i), datum.coroot(mu, i)
        if n == m:
            continue
        qi = V ** datum.qi_vexp(i)
        bound = abs(n) + abs(m) + rou.ell + 1
        for t in range(bound + 1):
            a = rou.specialize(qbinom(n, t, qi))
            b = rou.specialize(qbinom(m, t, qi))
            if a != b:
                return {
                    "index": i + 1,
                    "t": t,
                    "chi_lambda": rou.format(a),
                    "chi_mu": rou.format(b),
                    "element": f"([K{i + 1};0;{t}] - ({rou.format(b)}))/({rou.format(a - b)})",
                }
    raise QrootsError("no separating torus element found")
