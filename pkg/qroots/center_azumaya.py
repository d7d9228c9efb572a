"""
Centers, the variety 𝒱 and the Azumaya fibers.

Group-level computations use the defining representation of SL₂: a point of
K is (n₁h, n₂h^{-1}) with n₁ = [[1, b], [0, 1]], n₂ = [[1, 0], [c, 1]] and
h = diag(h, h^{-1}); a torus point t is recorded by θ_ϖ(t). The Frobenius
center is evaluated on K through the Drinfeld pairing: e^ℓ ↦ τ_ℓ·c,
f^ℓ ↦ τ_ℓ·b/(σ_ℓ h²) and k_{ℓϖ} ↦ h, where τ_ℓ = τ(e^ℓ, f^{(ℓ)}) and
S(e^{(ℓ)}) = σ_ℓ k_{−ℓα} e^{(ℓ)} at ζ. With these values the algebraic and
the geometric evaluation of Ω₁, Ω₂ agree.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Rational

from .diffops import EElem, from_a, from_u, lattice_element, omega
from .errors import (
    DegreeBoundError,
    NotCentralError,
    NotOnVarietyError,
    QrootsError,
    UnsupportedTypeError,
    WindowError,
)
from .linalg import coordinates, inverse, matmul, nullspace, rank
from .logging_config import get_logger
from .pairing import tau
from .qcoord import (
    AElem,
    a1_basis,
    a1_embed,
    a_component,
    act,
    chart,
    classical_component,
    multiply_a,
    theta_vector,
)
from .qreps import LEVEL_F, LEVEL_ZETA
from .qscalars import FIELD, ONE, ZERO, RootOfUnity, V
from .rootdata import WeightVec
from .uqalg import Key, QuantumGroup, UElem, ZetaUElem, format_weight, specialize_u

logger = get_logger(__name__)

GroupAlgebraElem = Dict[WeightVec, Any]
Matrix2 = Tuple[Tuple[Any, Any], Tuple[Any, Any]]


def _require_a1(qg: QuantumGroup, what: str) -> None:
    if qg.datum.cartan_type != "A1":
        raise UnsupportedTypeError(f"{what} is modelled for A1, not {qg.datum.cartan_type}")


def _as_domain(rou: RootOfUnity, x: Any) -> Any:
    return x if hasattr(x, "rep") else rou.rational(x)


def _power(dom: Any, x: Any, n: int) -> Any:
    out = dom.one
    base = x if n >= 0 else dom.one / x
    for _ in range(abs(n)):
        out = out * base
    return out


# Frobenius center

def _zeta_generators(qg: QuantumGroup, rou: RootOfUnity) -> List[Tuple[str, ZetaUElem]]:
    gens = []
    for i in range(qg.rank):
        gens.append((f"e{i + 1}", specialize_u(qg.e(i), rou)))
        gens.append((f"f{i + 1}", specialize_u(qg.f(i), rou)))
        gens.append((f"k_w{i + 1}", specialize_u(qg.k(qg.datum.fundamental(i)), rou)))
    return gens


def central_defects(z: Union[UElem, ZetaUElem]) -> List[str]:
    """Names of the generators e_i, f_i, k_{ϖ_i} that fail to commute with z."""
    qg = z.qg
    if isinstance(z, ZetaUElem):
        return [name for name, g in _zeta_generators(qg, z.rou) if z.commutator(g)]
    gens = []
    for i in range(qg.rank):
        gens += [(f"e{i + 1}", qg.e(i)), (f"f{i + 1}", qg.f(i)),
                 (f"k_w{i + 1}", qg.k(qg.datum.fundamental(i)))]
    return [name for name, g in gens if z * g - g * z]


@lru_cache(maxsize=None)
def zfr_generators(qg: QuantumGroup, rou: RootOfUnity) -> Tuple[Tuple[str, ZetaUElem], ...]:
    """e_β^ℓ, f_β^ℓ for β ∈ Δ⁺ and k_{±ℓϖ_i}, each certified central in U_ζ."""
    ell = rou.ell
    datum = qg.datum
    out = []
    for k in range(qg.n):
        out.append((f"e_b{k + 1}^{ell}", specialize_u(qg.e_root(k, ell), rou)))
        out.append((f"f_b{k + 1}^{ell}", specialize_u(qg.f_root(k, ell), rou)))
    for i in range(qg.rank):
        for sign in (1, -1):
            lam = datum.fundamental(i) * (sign * ell)
            out.append((f"k[{format_weight(lam, datum)}]", specialize_u(qg.k(lam), rou)))
    for name, z in out:
        failing = central_defects(z)
        if failing:
            raise NotCentralError(f"{name} does not commute with {', '.join(failing)} at ζ")
    logger.debug("Frobenius center generators certified", type=datum.cartan_type, ell=ell,
                 count=len(out))
    return tuple(out)


@dataclass(frozen=True)
class FrobeniusConstants:
    """τ_ℓ = τ(e^ℓ, f^{(ℓ)}) and σ_ℓ with S(e^{(ℓ)}) = σ_ℓ k_{−ℓα} e^{(ℓ)}, at ζ."""

    tau_ell: Any
    sigma_ell: Any


@lru_cache(maxsize=None)
def frobenius_constants(qg: QuantumGroup, rou: RootOfUnity) -> FrobeniusConstants:
    _require_a1(qg, "the Frobenius center evaluation")
    ell = rou.ell
    tau_ell = rou.specialize(tau(qg.e_root(0, ell), qg.f_root(0, ell, divided=True)))
    antipode = qg.antipode(qg.e_root(0, ell, divided=True)).terms
    key = (qg.empty, qg.datum.alpha(0) * (-ell), (ell,))
    if set(antipode) != {key}:
        raise QrootsError("S(e^(ℓ)) is not a multiple of k_{−ℓα} e^(ℓ)")
    return FrobeniusConstants(tau_ell, rou.specialize(antipode[key] * qg.lusztig_factor(key)))


@dataclass(frozen=True)
class KPoint:
    """(n₁h, n₂h^{-1}) ∈ K ⊂ SL₂ × SL₂ with coordinates in Q(ζ′)."""

    rou: RootOfUnity
    b: Any
    c: Any
    h: Any

    @classmethod
    def of(cls, rou: RootOfUnity, b: Any = 0, c: Any = 0, h: Any = 1) -> "KPoint":
        return cls(rou, _as_domain(rou, b), _as_domain(rou, c), _as_domain(rou, h))

    @property
    def domain(self) -> Any:
        return self.rou.domain

    def k1(self) -> List[List[Any]]:
        dom = self.domain
        return [[self.h, self.b / self.h], [dom.zero, dom.one / self.h]]

    def k2(self) -> List[List[Any]]:
        dom = self.domain
        return [[dom.one / self.h, dom.zero], [self.c / self.h, self.h]]

    def kappa(self) -> List[List[Any]]:
        """κ(k) = k₁k₂^{-1} = n₁h²n₂^{-1}."""
        return matmul(self.k1(), inverse(self.k2(), self.domain), self.domain)

    def __mul__(self, other: "KPoint") -> "KPoint":
        dom = self.domain
        m1 = matmul(self.k1(), other.k1(), dom)
        m2 = matmul(self.k2(), other.k2(), dom)
        h = m1[0][0]
        return KPoint(self.rou, m1[0][1] * h, m2[1][0] * h, h)


def zfr_key_value(qg: QuantumGroup, key: Key, k: KPoint) -> Any:
    """Value at k of a PBW monomial f^{aℓ} k_{ℓμ} e^{bℓ} of Z_Fr."""
    rou = k.rou
    ell = rou.ell
    fm, mu, em = key
    if fm[0] % ell or em[0] % ell or mu[0] % ell:
        raise QrootsError(
            f"monomial f^{fm[0]} k[{format_weight(mu, qg.datum)}] e^{em[0]} is not in the Frobenius center"
        )
    consts = frobenius_constants(qg, rou)
    dom = rou.domain
    e_value = consts.tau_ell * k.c
    f_value = consts.tau_ell * k.b / (consts.sigma_ell * k.h * k.h)
    return (_power(dom, f_value, fm[0] // ell) * _power(dom, k.h, mu[0] // ell)
            * _power(dom, e_value, em[0] // ell))


def zfr_evaluate(z: ZetaUElem, k: KPoint) -> Any:
    """The function on K attached to z ∈ Z_Fr(U_ζ)."""
    _require_a1(z.qg, "zfr_evaluate")
    if z.form != "DK":
        raise QrootsError("Frobenius center elements are read in the De Concini–Kac form")
    total = k.domain.zero
    for key, c in z.terms.items():
        total = total + c * zfr_key_value(z.qg, key, k)
    return total


# Harish-Chandra center

def hc_iota(z: Union[UElem, ZetaUElem]) -> GroupAlgebraElem:
    """ι(z) = (ε⊗1⊗ε)(z) as {μ: coefficient of e(μ)}, for central z."""
    failing = central_defects(z)
    if failing:
        raise NotCentralError(f"element does not commute with {', '.join(failing)}")
    if isinstance(z, ZetaUElem) and z.form != "DK":
        raise QrootsError("ι is read in the De Concini–Kac form")
    out: GroupAlgebraElem = {}
    for (fm, mu, em), c in z.terms.items():
        if not any(fm) and not any(em):
            out[WeightVec(mu)] = c
    return out


def dot_invariant(qg: QuantumGroup, image: GroupAlgebraElem, rou: Optional[RootOfUnity] = None) -> bool:
    """ι-image lies in 𝕂[2Λ] and is fixed by w∘e(λ) = q^{(wλ−λ,ρ)}e(wλ)."""
    datum = qg.datum
    zero = ZERO if rou is None else rou.domain.zero
    if any(c % 2 for mu in image for c in mu):
        return False
    for word in datum.weyl_elements:
        moved: GroupAlgebraElem = {}
        for mu, c in image.items():
            exponent, target = datum.dot_twist(word, mu)
            k = int(exponent * datum.index)
            factor = V**k if rou is None else rou.zpow(k)
            moved[target] = moved.get(target, zero) + c * factor
        if {m: c for m, c in moved.items() if c} != image:
            return False
    return True


def casimir(qg: QuantumGroup) -> UElem:
    """C = fe + (qk + q^{-1}k^{-1})/(q − q^{-1})²."""
    _require_a1(qg, "the Casimir element")
    q = V ** qg.datum.qi_vexp(0)
    gap = q - ONE / q
    return qg.f(0) * qg.e(0) + (qg.ki(0) * q + qg.ki(0, -1) * (ONE / q)) * (ONE / gap**2)


def _ga_multiply(a: GroupAlgebraElem, b: GroupAlgebraElem) -> GroupAlgebraElem:
    out: GroupAlgebraElem = {}
    for mu, c in a.items():
        for nu, d in b.items():
            key = mu + nu
            out[key] = out.get(key, ZERO) + c * d
    return {k: c for k, c in out.items() if c}


def dot_orbit_sum(qg: QuantumGroup, lam: Sequence[int]) -> GroupAlgebraElem:
    """Σ over the dot orbit of e(−2λ)."""
    datum = qg.datum
    start = WeightVec(lam) * -2
    out: GroupAlgebraElem = {}
    for word in datum.weyl_elements:
        exponent, target = datum.dot_twist(word, start)
        out[target] = V ** int(exponent * datum.index)
    return out


def m_lambda(qg: QuantumGroup, lam: Sequence[int]) -> UElem:
    """The central element with ι(m(λ)) the dot-orbit sum of e(−2λ), as a polynomial in C."""
    _require_a1(qg, "m(λ)")
    lam = WeightVec(lam)
    if not lam.is_dominant():
        raise QrootsError(f"{format_weight(lam, qg.datum)} is not dominant")
    target = dot_orbit_sum(qg, lam)
    c = casimir(qg)
    iota_c = hc_iota(c)
    powers: List[GroupAlgebraElem] = [{qg.datum.zero(): ONE}]
    for _ in range(lam[0]):
        powers.append(_ga_multiply(powers[-1], iota_c))
    weights = sorted({mu for p in powers for mu in p} | set(target), key=tuple)
    basis = [[p.get(mu, ZERO) for mu in weights] for p in powers]
    coeffs = coordinates(basis, [target.get(mu, ZERO) for mu in weights], FIELD)
    if coeffs is None:
        raise QrootsError(f"no polynomial in C has ι-image the orbit sum of e(−2λ) for λ={list(lam)}")
    out = qg.zero()
    for j, a in enumerate(coeffs):
        if a:
            out = out + (c**j) * a
    return out


# The variety 𝒱

def _diag(rou: RootOfUnity, x: Any) -> List[List[Any]]:
    dom = rou.domain
    return [[x, dom.zero], [dom.zero, dom.one / x]]


@dataclass(frozen=True)
class VPoint:
    """(N⁻g, k, t) with g a 2×2 representative and t recorded by θ_ϖ(t)."""

    g: Matrix2
    k: KPoint
    t: Any

    @property
    def rou(self) -> RootOfUnity:
        return self.k.rou

    def g_matrix(self) -> List[List[Any]]:
        return [list(row) for row in self.g]

    def torus(self, power: int) -> List[List[Any]]:
        """t^power in the defining representation."""
        return _diag(self.rou, _power(self.rou.domain, self.t, power))


def make_point(rou: RootOfUnity, g: Sequence[Sequence[Any]], k: KPoint, t: Any) -> VPoint:
    matrix = tuple(tuple(_as_domain(rou, x) for x in row) for row in g)
    return VPoint(matrix, k, _as_domain(rou, t))


def trivial_point(rou: RootOfUnity, c: Any, t: Any) -> VPoint:
    """g = 1, k = (t^ℓ, n₂t^{−ℓ}): κ(k) = t^{2ℓ}n₂^{-1}."""
    dom = rou.domain
    t = _as_domain(rou, t)
    k = KPoint(rou, dom.zero, _as_domain(rou, c), _power(dom, t, rou.ell))
    return make_point(rou, [[1, 0], [0, 1]], k, t)


def open_cell_point(rou: RootOfUnity, x: Any, t: Any, h: Any) -> VPoint:
    """g = [[1, x], [0, 1]] with b = x(TH − 1), c = (H − T)/(xT), T = θ_ϖ(t)^{2ℓ}, H = h²."""
    dom = rou.domain
    x, t, h = (_as_domain(rou, v) for v in (x, t, h))
    if not x:
        raise ValueError("the open-cell family needs x ≠ 0")
    big_t = _power(dom, t, 2 * rou.ell)
    big_h = h * h
    k = KPoint(rou, x * (big_t * big_h - dom.one), (big_h - big_t) / (x * big_t), h)
    return make_point(rou, [[1, x], [0, 1]], k, t)


def off_variety_point(rou: RootOfUnity, b: Any, c: Any, t: Any) -> VPoint:
    """g = 1 with an upper unitriangular factor n₁ ≠ 1: the N⁺ part of κ(k) survives."""
    dom = rou.domain
    b, t = _as_domain(rou, b), _as_domain(rou, t)
    if not b:
        raise ValueError("an off-variety point needs b ≠ 0")
    k = KPoint(rou, b, _as_domain(rou, c), _power(dom, t, rou.ell))
    return make_point(rou, [[1, 0], [0, 1]], k, t)


def sample_points(rou: RootOfUnity, count: int, seed: int = 0) -> List[VPoint]:
    """Deterministic points of 𝒱 alternating between the two families."""
    rng = np.random.default_rng(seed)
    out = []
    for n in range(count):
        p, q = (int(v) for v in rng.integers(1, 6, size=2))
        r = int(rng.integers(2, 5))
        if n % 2 == 0:
            out.append(trivial_point(rou, Rational(p, q), Rational(r, p)))
        else:
            out.append(open_cell_point(rou, Rational(p, r), Rational(q, r), Rational(r, q)))
    return out


def v_contains(pt: VPoint) -> bool:
    """g κ(k) g^{-1} ∈ t^{2ℓ} N⁻."""
    rou = pt.rou
    dom = rou.domain
    g = pt.g_matrix()
    m = matmul(matmul(g, pt.k.kappa(), dom), inverse(g, dom), dom)
    big_t = _power(dom, pt.t, 2 * rou.ell)
    return not m[0][1] and m[0][0] == big_t and m[1][1] == dom.one / big_t


def classical_value(rou: RootOfUnity, values: Dict[Any, Any], degree: int, row: Sequence[Any]) -> Any:
    """φ̄(g) for φ̄ ∈ Ā(degree·ϖ) from the first row of g.

    φ̄(g) = Σ_N g₁₁^{k−N} g₁₂^N φ̄(ē^{(N)}).
    """
    dom = rou.domain
    total = dom.zero
    for (n,), x in values.items():
        total = total + _as_domain(rou, x) * _power(dom, row[0], degree - n) * _power(dom, row[1], n)
    return total


def _frobenius_values(phi: AElem) -> Dict[int, Dict[Tuple[int], Any]]:
    ell = phi.rou.ell
    out: Dict[int, Dict[Tuple[int], Any]] = {}
    for (lam, mono), x in phi.values.items():
        if lam[0] % ell or mono[0] % ell:
            raise QrootsError("coefficient is not in the classical subring A₁")
        out.setdefault(lam[0] // ell, {})[(mono[0] // ell,)] = x
    return out


def evaluate_ze(w: EElem, pt: VPoint) -> Any:
    """Value at pt of an element of A₁ ⊗ Z_Fr ⊗ ℂ[ℓΛ]."""
    rou = pt.rou
    dom = rou.domain
    row = pt.g[0]
    total = dom.zero
    for (key, nu), phi in w.terms.items():
        a_value = dom.zero
        for degree, values in _frobenius_values(phi).items():
            a_value = a_value + classical_value(rou, values, degree, row)
        if not a_value:
            continue
        total = total + a_value * zfr_key_value(w.qg, key, pt.k) * _power(dom, pt.t, nu[0])
    return total


@dataclass(frozen=True)
class OmegaValues:
    first: Any
    second: Any
    first_geometric: Any
    second_geometric: Any

    @property
    def routes_agree(self) -> bool:
        return self.first == self.first_geometric and self.second == self.second_geometric

    @property
    def equal(self) -> bool:
        return self.first == self.second


def omega_on_variety(qg: QuantumGroup, values: Dict[Any, Any], degree: int, pt: VPoint) -> OmegaValues:
    """(Ω₁(φ), Ω₂(φ)) at pt for φ = a1(φ̄), φ̄ ∈ Ā(degree·ϖ), by both routes."""
    _require_a1(qg, "omega_on_variety")
    rou = pt.rou
    dom = rou.domain
    lam = qg.datum.fundamental(0) * degree
    phi = a1_embed(qg, rou, lam, values)
    first = evaluate_ze(omega(phi, 1), pt)
    second = evaluate_ze(omega(phi, 2), pt)
    g = pt.g_matrix()
    x1 = matmul(matmul(pt.torus(rou.ell), g, dom), pt.k.k2(), dom)
    x2 = matmul(matmul(pt.torus(-rou.ell), g, dom), pt.k.k1(), dom)
    out = OmegaValues(first, second, classical_value(rou, values, degree, x1[0]),
                      classical_value(rou, values, degree, x2[0]))
    logger.debug("Ω evaluated on a point", degree=degree, routes_agree=out.routes_agree,
                 equal=out.equal)
    return out


def v_contains_via_omega(qg: QuantumGroup, pt: VPoint) -> bool:
    """Ω₁(φ) = Ω₂(φ) at pt for φ running over the basis of Ā(ϖ)."""
    classical = classical_component(qg, qg.datum.fundamental(0))
    return all(omega_on_variety(qg, vals, 1, pt).equal for vals in classical.values)


def t_mu(qg: QuantumGroup, rou: RootOfUnity, mu: Sequence[int]) -> Tuple[Any, ...]:
    """θ_{ϖ_i}(t_μ) = ζ^{(ϖ_i, μ)}."""
    datum = qg.datum
    return tuple(rou.zpow(datum.vexp(datum.fundamental(i), mu)) for i in range(qg.rank))


def xi_mu(qg: QuantumGroup, pt: VPoint, mu: Sequence[int]) -> VPoint:
    """(N⁻g, k, t) ↦ (N⁻g, k, t_μ t)."""
    _require_a1(qg, "ξ_μ")
    return VPoint(pt.g, pt.k, pt.t * t_mu(qg, pt.rou, mu)[0])


def h_ur(qg: QuantumGroup, rou: RootOfUnity, torus: Sequence[Any]) -> bool:
    """t ∈ H_ur: θ_α(t)^{2ℓ} = 1 forces θ_α(t)² = ζ^{−(2ρ,α)} for α simple or highest."""
    datum = qg.datum
    dom = rou.domain
    torus = [_as_domain(rou, x) for x in torus]
    highest = max(datum.positive_roots, key=datum.ht)
    for alpha in set(datum.simple_roots) | {highest}:
        theta = dom.one
        for i, a in enumerate(alpha):
            theta = theta * _power(dom, torus[i], a)
        if _power(dom, theta, 2 * rou.ell) == dom.one:
            if theta * theta != rou.zpow(-datum.vexp(datum.rho * 2, alpha)):
                return False
    return True


# ZE^{(ℓ)}

def ze_centrality_defects(qg: QuantumGroup, rou: RootOfUnity) -> List[str]:
    """Commutators that should vanish in E_ζ: A₁ with U_ζ, and Z_Fr, e(ℓλ) with A_ζ(ϖ_i)."""
    datum = qg.datum
    failing = []
    for i in range(qg.rank):
        varpi = datum.fundamental(i)
        for j, phi in enumerate(a1_basis(qg, rou, varpi)):
            ep = from_a(phi)
            for name, u in _zeta_generators(qg, rou):
                eu = from_u(u)
                if ep * eu != eu * ep:
                    failing.append(f"A1[{i + 1}.{j}]/{name}")
        for j, phi in enumerate(a_component(qg, varpi, LEVEL_ZETA, rou).basis):
            ep = from_a(phi)
            for name, z in zfr_generators(qg, rou):
                ez = from_u(z)
                if ep * ez != ez * ep:
                    failing.append(f"A[{i + 1}.{j}]/{name}")
            for m in range(qg.rank):
                lat = lattice_element(qg, datum.fundamental(m) * rou.ell, LEVEL_ZETA, rou)
                if ep * lat != lat * ep:
                    failing.append(f"A[{i + 1}.{j}]/e(l*w{m + 1})")
    return failing


def a1_counit_defects(qg: QuantumGroup, rou: RootOfUnity) -> List[str]:
    """U_ζ acts on A₁ through the counit: e_i, f_i kill it and k_{ϖ_i} fixes it."""
    failing = []
    for i in range(qg.rank):
        for j, phi in enumerate(a1_basis(qg, rou, qg.datum.fundamental(i))):
            for name, u in _zeta_generators(qg, rou):
                expected = phi if name.startswith("k") else phi.scale(rou.domain.zero)
                if act(u, phi) != expected:
                    failing.append(f"{name}·A1[{i + 1}.{j}]")
    return failing


def braid_zfr_defects(qg: QuantumGroup, rou: RootOfUnity) -> List[str]:
    """T_i^{±1} carries each Z_Fr generator to a central element with Frobenius PBW support."""
    ell = rou.ell
    failing = []
    for name, z in zfr_generators(qg, rou):
        for i in range(qg.rank):
            for sign in (1, -1):
                image = specialize_u(qg.braid_T(i, sign, z.lift()), rou)
                frobenius = all(not (x % ell) for fm, mu, em in image.terms for x in (*fm, *mu, *em))
                if not frobenius or central_defects(image):
                    failing.append(f"T{i + 1}^{sign}({name})")
    return failing


def separates_points(qg: QuantumGroup, points: Sequence[VPoint]) -> bool:
    """Distinct K-coordinates of the sample are told apart by the Z_Fr generators."""
    _require_a1(qg, "point separation")
    if not points:
        return True
    gens = zfr_generators(qg, points[0].rou)
    seen: Dict[Tuple, Tuple] = {}
    for pt in points:
        k = pt.k
        values = tuple(zfr_evaluate(z, k) for _, z in gens)
        coords = (k.b, k.c, k.h)
        if seen.setdefault(values, coords) != coords:
            return False
    return True


# Poisson structure

def poisson_bracket(
    a: Union[UElem, EElem], b: Union[UElem, EElem], rou: RootOfUnity
) -> Union[ZetaUElem, EElem]:
    """{ā, b̄} = ([a, b]/ℓ(q^ℓ − q^{−ℓ})) at ζ for 𝔸-lifts a, b."""
    q = V ** a.qg.datum.index
    ell = rou.ell
    denom = (q**ell - ONE / q**ell) * ell
    if isinstance(a, UElem) and isinstance(b, UElem):
        return specialize_u((a * b - b * a) * (ONE / denom), rou)
    if isinstance(a, EElem) and isinstance(b, EElem):
        if a.level != LEVEL_F or b.level != LEVEL_F:
            raise QrootsError("Poisson brackets need 𝔽-level lifts")
        return (a * b - b * a).scale(ONE / denom).specialize(rou)
    raise TypeError("both lifts must be in U or both in E")


@dataclass
class PoissonReport:
    """Exact brackets of the A1 generators against the dual-group prediction."""

    k_e_matches: bool
    k_f_matches: bool
    e_f_shape: bool
    e_f_constant: Optional[str]
    point_values: List[Dict[str, str]] = field(default_factory=list)

    @property
    def matches(self) -> bool:
        return self.k_e_matches and self.k_f_matches and self.e_f_shape


def manin_prediction(qg: QuantumGroup, rou: RootOfUnity, points: Sequence[KPoint] = ()) -> PoissonReport:
    """Compare the brackets {k_{ℓϖ}, e^ℓ}, {k_{ℓϖ}, f^ℓ} and {e^ℓ, f^ℓ}.

    The first two are ±(ϖ,α)/2 times the product, the last is c(k_{ℓα} − k_{−ℓα}).
    """
    _require_a1(qg, "the Poisson prediction")
    datum = qg.datum
    ell = rou.ell
    varpi, alpha = datum.fundamental(0), datum.alpha(0)
    half = rou.rational(datum.form(varpi, alpha) / 2)
    e_l, f_l, big_k = qg.e_root(0, ell), qg.f_root(0, ell), qg.k(varpi * ell)
    k_e = poisson_bracket(big_k, e_l, rou)
    k_f = poisson_bracket(big_k, f_l, rou)
    e_f = poisson_bracket(e_l, f_l, rou)
    pred_k_e = specialize_u(qg.monomial((qg.empty, varpi * ell, (ell,))), rou) * half
    pred_k_f = specialize_u(qg.monomial(((ell,), varpi * ell, qg.empty)), rou) * (-half)
    up, down = (qg.empty, alpha * ell, qg.empty), (qg.empty, alpha * -ell, qg.empty)
    constant = e_f.terms.get(up)
    shape = set(e_f.terms) == {up, down} and e_f.terms[down] == -constant
    report = PoissonReport(k_e == pred_k_e, k_f == pred_k_f, shape,
                           rou.format(constant) if shape else None)
    for k in points:
        report.point_values.append({
            "k_e": rou.format(zfr_evaluate(k_e, k)),
            "k_e_predicted": rou.format(zfr_evaluate(pred_k_e, k)),
            "k_f": rou.format(zfr_evaluate(k_f, k)),
            "k_f_predicted": rou.format(zfr_evaluate(pred_k_f, k)),
            "e_f": rou.format(zfr_evaluate(e_f, k)),
        })
    logger.info("Poisson prediction compared", k_e=report.k_e_matches, k_f=report.k_f_matches,
                e_f_shape=report.e_f_shape)
    return report


def _complex(rou: RootOfUnity, a: Any) -> complex:
    coeffs = a.to_list()
    n = len(coeffs)
    w = np.exp(2j * np.pi / rou.ell)
    return complex(sum(float(c) * w ** (n - 1 - i) for i, c in enumerate(coeffs)))


_E = np.array([[0, 1], [0, 0]], dtype=complex)
_H = np.array([[1, 0], [0, -1]], dtype=complex)
_F = np.array([[0, 0], [1, 0]], dtype=complex)
_ZERO2 = np.zeros((2, 2), dtype=complex)


def _eps(x: np.ndarray, y: np.ndarray) -> complex:
    return complex(np.trace(x @ y))


def _eps2(x: Tuple[np.ndarray, np.ndarray], y: Tuple[np.ndarray, np.ndarray]) -> complex:
    return _eps(x[0], y[0]) - _eps(x[1], y[1])


def _ad(g: np.ndarray, x: np.ndarray) -> np.ndarray:
    return g @ x @ np.linalg.inv(g)


def _split(pair: Tuple[np.ndarray, np.ndarray]) -> Tuple[np.ndarray, Tuple[np.ndarray, np.ndarray]]:
    """(a₁, a₂) = (s, s) + (k₁, k₂), k₁ ∈ 𝔥 + 𝔫⁺ and k₂ ∈ −𝔥 + 𝔫⁻ matching."""
    a1, a2 = pair
    s = a2[0, 1] * _E + (a1[0, 0] + a2[0, 0]) / 2 * _H + a1[1, 0] * _F
    return s, (a1 - s, a2 - s)


def poisson_tensor(pt: VPoint) -> np.ndarray:
    """The Poisson tensor on (N⁻∖G)×K×H at pt in the cotangent basis L̄*_η (2), R*_ξ (3), L*_ϖ."""
    rou = pt.rou
    ell = rou.ell
    g = np.array([[_complex(rou, x) for x in row] for row in pt.g], dtype=complex)
    k1 = np.array([[_complex(rou, x) for x in row] for row in pt.k.k1()], dtype=complex)
    k2 = np.array([[_complex(rou, x) for x in row] for row in pt.k.k2()], dtype=complex)
    k_basis = [(_E, _ZERO2), (_H, -_H), (_ZERO2, _F)]
    killer = _ad(np.linalg.inv(g), _F)
    row = np.array([[_eps(killer, y1 - y2) for y1, y2 in k_basis]])
    _, _, vh = np.linalg.svd(row)
    etas = []
    for coeffs in vh[1:].conj():
        etas.append((sum(c * y[0] for c, y in zip(coeffs, k_basis)),
                     sum(c * y[1] for c, y in zip(coeffs, k_basis))))
    xis = [_E, _H, _F]
    c_varpi = _H / 2
    n = len(etas) + len(xis) + 1
    p = np.zeros((n, n), dtype=complex)
    ad_g = [(_ad(g, e1), _ad(g, e2)) for e1, e2 in etas]
    for a, x in enumerate(ad_g):
        for b, y in enumerate(ad_g):
            s, _ = _split(x)
            p[a, b] = _eps2((s, s), y)
    k1_inv, k2_inv = np.linalg.inv(k1), np.linalg.inv(k2)
    moved = [(_ad(k1_inv, xi), _ad(k2_inv, xi)) for xi in xis]
    off = len(etas)
    for a, x in enumerate(moved):
        for b, y in enumerate(moved):
            _, kx = _split(x)
            p[off + a, off + b] = -_eps2(kx, y)
    for a, eta in enumerate(etas):
        for b, xi in enumerate(xis):
            value = _eps2((xi, xi), eta)
            p[a, off + b] = value
            p[off + b, a] = -value
        shifted = _ad(np.linalg.inv(g), c_varpi)
        value = -_eps2((shifted, shifted), eta) / (2 * ell)
        p[a, n - 1] = value
        p[n - 1, a] = -value
    return p


@dataclass(frozen=True)
class PoissonRank:
    rank: int
    radical: int
    antisymmetric: bool


def poisson_rank_at(pt: VPoint, tol: float = 1e-8) -> PoissonRank:
    if not v_contains(pt):
        raise NotOnVarietyError("point does not satisfy g κ(k) g^{-1} ∈ t^{2ℓ}N⁻")
    p = poisson_tensor(pt)
    r = int(np.linalg.matrix_rank(p, tol=tol))
    out = PoissonRank(r, p.shape[0] - r, bool(np.allclose(p, -p.T, atol=tol)))
    logger.debug("Poisson tensor rank", rank=out.rank, radical=out.radical)
    return out


# Fibers

@dataclass
class FiberAlgebra:
    """A finite-dimensional algebra by structure constants: b_i b_j = Σ_k table[i, j][k] b_k."""

    domain: Any
    labels: Tuple[str, ...]
    table: Dict[Tuple[int, int], List[Any]]
    unit: List[Any]

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis_vector(self, i: int) -> List[Any]:
        dom = self.domain
        return [dom.one if j == i else dom.zero for j in range(self.dim)]

    def multiply(self, x: Sequence[Any], y: Sequence[Any]) -> List[Any]:
        dom = self.domain
        out = [dom.zero] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in enumerate(self.table[(i, j)]):
                    if c:
                        out[k] = out[k] + a * b * c
        return out

    def is_associative(self) -> bool:
        n = self.dim
        basis = [self.basis_vector(i) for i in range(n)]
        for i in range(n):
            for j in range(n):
                ij = self.table[(i, j)]
                for k in range(n):
                    if self.multiply(ij, basis[k]) != self.multiply(basis[i], self.table[(j, k)]):
                        return False
        return True

    def has_unit(self) -> bool:
        return all(
            self.multiply(self.unit, self.basis_vector(i)) == self.basis_vector(i)
            == self.multiply(self.basis_vector(i), self.unit)
            for i in range(self.dim)
        )

    def center_dimension(self) -> int:
        n = self.dim
        rows = []
        for j in range(n):
            for k in range(n):
                rows.append([self.table[(i, j)][k] - self.table[(j, i)][k] for i in range(n)])
        return len(nullspace(rows, self.domain, n))

    def trace_form_rank(self) -> int:
        n = self.dim
        dom = self.domain
        traces = [sum((self.table[(k, m)][m] for m in range(n)), dom.zero) for k in range(n)]
        form = [[sum((self.table[(i, j)][k] * traces[k] for k in range(n)), dom.zero)
                 for j in range(n)] for i in range(n)]
        return rank(form, dom, n)


def matrix_algebra(n: int, domain: Any) -> FiberAlgebra:
    """M_n with basis E_ij."""
    labels = tuple(f"E{i}{j}" for i in range(n) for j in range(n))
    size = n * n
    table = {}
    for a in range(size):
        for b in range(size):
            i, j = divmod(a, n)
            k, m = divmod(b, n)
            vec = [domain.zero] * size
            if j == k:
                vec[i * n + m] = domain.one
            table[(a, b)] = vec
    unit = [domain.one if a // n == a % n else domain.zero for a in range(size)]
    return FiberAlgebra(domain, labels, table, unit)


def matrix_algebra_witness(algebra: FiberAlgebra) -> Dict[str, Any]:
    n = isqrt(algebra.dim)
    center = algebra.center_dimension()
    trace_rank = algebra.trace_form_rank()
    ok = n * n == algebra.dim and center == 1 and trace_rank == algebra.dim
    return {"dim": algebra.dim, "n": n, "center_dim": center, "trace_form_rank": trace_rank, "ok": ok}


def is_full_matrix_algebra(algebra: FiberAlgebra) -> bool:
    """dim n², scalar center and nondegenerate trace form."""
    return matrix_algebra_witness(algebra)["ok"]


def _weyl_table(
    ell: int, dom: Any, c0: Any, omega_: Any, z0: Any, e0: Any
) -> Dict[Tuple[int, int], List[Any]]:
    """Structure constants of ⟨z, e | ez = c₀ + ωze, z^ℓ = z₀, e^ℓ = e₀⟩ on z^a e^b."""
    qint = [dom.zero]
    for m in range(1, 2 * ell):
        qint.append(qint[-1] + _power(dom, omega_, m - 1))

    def reduce(terms: Dict[Tuple[int, int], Any]) -> Dict[Tuple[int, int], Any]:
        out: Dict[Tuple[int, int], Any] = {}
        for (a, b), c in terms.items():
            while a >= ell:
                a, c = a - ell, c * z0
            while b >= ell:
                b, c = b - ell, c * e0
            if c:
                out[(a, b)] = out.get((a, b), dom.zero) + c
        return out

    def left_e(terms: Dict[Tuple[int, int], Any]) -> Dict[Tuple[int, int], Any]:
        out: Dict[Tuple[int, int], Any] = {}
        for (m, n), c in terms.items():
            out[(m, n + 1)] = out.get((m, n + 1), dom.zero) + c * _power(dom, omega_, m)
            if m:
                out[(m - 1, n)] = out.get((m - 1, n), dom.zero) + c * c0 * qint[m]
        return reduce(out)

    table = {}
    for a in range(ell):
        for b in range(ell):
            for c in range(ell):
                for d in range(ell):
                    terms = {(c, d): dom.one}
                    for _ in range(b):
                        terms = left_e(terms)
                    terms = reduce({(m + a, n): x for (m, n), x in terms.items()})
                    vec = [dom.zero] * (ell * ell)
                    for (m, n), x in terms.items():
                        vec[m * ell + n] = vec[m * ell + n] + x
                    table[(a * ell + b, c * ell + d)] = vec
    return table


def _ratio(x: AElem, y: AElem) -> Any:
    key = next(iter(y.values))
    r = x.values.get(key, y.rou.domain.zero) / y.values[key]
    if x != y.scale(r):
        raise QrootsError("elements are not proportional")
    return r


def fiber_at(qg: QuantumGroup, rou: RootOfUnity, pt: VPoint, level: int = 1) -> FiberAlgebra:
    """The fiber at pt of the degree-0 chart algebra on ℬ_e, generated by z and j(e)."""
    _require_a1(qg, "fiber_at")
    if not v_contains(pt):
        raise NotOnVarietyError("point does not satisfy g κ(k) g^{-1} ∈ t^{2ℓ}N⁻")
    try:
        ch = chart(qg, rou, (), level)
    except DegreeBoundError as exc:
        raise WindowError(f"chart level {level} is out of reach: {exc.message}") from exc
    dom = rou.domain
    ell = rou.ell
    classical = classical_component(qg, qg.datum.fundamental(0))
    s_bar, t_bar, _ = ch.classical_coordinate()
    row = pt.g[0]
    s_value = classical_value(rou, classical.values[s_bar], 1, row)
    if not s_value:
        raise WindowError("point lies off the chart ℬ_e")
    r = ch.z_ell_factor()
    if r is None:
        raise QrootsError("z^ℓ is not central in the chart")
    z0 = r / ch.s_ell_factor() * classical_value(rou, classical.values[t_bar], 1, row) / s_value
    e_zeta = specialize_u(qg.e(0), rou)
    e0 = zfr_evaluate(specialize_u(qg.e_root(0, ell), rou), pt.k)
    if act(e_zeta, ch.s):
        raise QrootsError("the chart denominator is not a highest weight vector")
    c0 = _ratio(act(e_zeta, ch.t), ch.s)
    k_alpha = specialize_u(qg.ki(0), rou)
    omega_ = _ratio(act(k_alpha, ch.t), ch.t) / _ratio(act(k_alpha, ch.s), ch.s)
    labels = tuple(f"z^{a}e^{b}" for a in range(ell) for b in range(ell))
    unit = [dom.one] + [dom.zero] * (ell * ell - 1)
    fiber = FiberAlgebra(dom, labels, _weyl_table(ell, dom, c0, omega_, z0, e0), unit)
    logger.debug("Fiber built", dim=fiber.dim, z0=rou.format(z0), e0=rou.format(e0))
    return fiber


def xi_mu_twist(
    qg: QuantumGroup, rou: RootOfUnity, mu: Sequence[int], word: Sequence[int] = ()
) -> Dict[str, Any]:
    """Conjugation by c ∈ A_ζ(μ)_{w^{-1}μ}: A₁ and Z_Fr fixed, e(λ) scaled by ζ^{(λ,μ)}."""
    datum = qg.datum
    mu = WeightVec(mu)
    try:
        c = theta_vector(qg, word, mu, LEVEL_ZETA, rou)
    except DegreeBoundError as exc:
        raise WindowError(f"window too small for c of weight {list(mu)}: {exc.message}") from exc
    classical_failing = []
    for i in range(qg.rank):
        for j, phi in enumerate(a1_basis(qg, rou, datum.fundamental(i))):
            if multiply_a(phi, c) != multiply_a(c, phi):
                classical_failing.append(f"A1[{i + 1}.{j}]")
    ec = from_a(c)
    zfr_failing = []
    for name, z in zfr_generators(qg, rou):
        ez = from_u(z)
        if ez * ec != ec * ez:
            zfr_failing.append(name)
    sigma_failing = []
    factors = {}
    for i in range(qg.rank):
        lam = datum.fundamental(i)
        factor = rou.zpow(datum.vexp(lam, mu))
        sigma = lattice_element(qg, lam, LEVEL_ZETA, rou)
        factors[f"w{i + 1}"] = rou.format(factor)
        if sigma * ec != (ec * sigma).scale(factor):
            sigma_failing.append(f"w{i + 1}")
    out = {
        "mu": list(mu),
        "classical_failing": classical_failing,
        "zfr_failing": zfr_failing,
        "sigma_failing": sigma_failing,
        "sigma_factors": factors,
        "ok": not (classical_failing or zfr_failing or sigma_failing),
    }
    logger.debug("ξ_μ twist certified", mu=list(mu), ok=out["ok"])
    return out
