from itertools import product
from typing import List

from ..qcoord import (
    AElem,
    a1_basis,
    a_component,
    act,
    chart,
    hopf_pair,
    multiply_a,
    one,
    theta_vector,
)
from ..qreps import LEVEL_F, LEVEL_ZETA, simple_fd
from ..rootdata import WeightVec
from ..uqalg import format_weight
from .base import BaseSuite, SuiteContext, check, passed, require, skipped
from .hopf import generators


def _small_weights(ctx: SuiteContext) -> List[WeightVec]:
    datum = ctx.datum
    return [datum.fundamental(i) for i in range(datum.rank)]


def chart_levels(ctx: SuiteContext) -> List[int]:
    """Filtration levels the configured height bound allows, capped by chart_level."""
    top = (ctx.cfg.ht_bound + 1) // ctx.cfg.ell - 1
    return list(range(min(ctx.cfg.chart_level, top) + 1)) if top >= 0 else []


def q_commutes(a: AElem, b: AElem) -> bool:
    left, right = multiply_a(a, b), multiply_a(b, a)
    if not right:
        return not left
    key = next(iter(right.values))
    ratio = left.values.get(key, right.domain.zero) / right.values[key]
    return left == right.scale(ratio)


class CoordRingSuite(BaseSuite):
    name = "coordring"
    description = "The graded coordinate ring A, its U-action, extremal vectors and the A1 charts"

    @check("graded-components")
    def graded_components(self, ctx: SuiteContext):
        qg, rou = ctx.qg, ctx.rou
        dims = {}
        weights = _small_weights(ctx) + [ctx.datum.fundamental(0) * 2]
        for lam in weights:
            f_level = a_component(qg, lam, LEVEL_F)
            z_level = a_component(qg, lam, LEVEL_ZETA, rou)
            expected = simple_fd(qg, lam).dim
            require(f_level.dim == expected and z_level.dim == expected,
                    "dim A(λ) differs from dim L(λ)", weight=lam, f=f_level.dim, zeta=z_level.dim)
            dims[format_weight(lam, qg.datum)] = expected
        for lam, mu in product(_small_weights(ctx), repeat=2):
            for level in (LEVEL_F, LEVEL_ZETA):
                target = a_component(qg, lam + mu, level, rou if level == LEVEL_ZETA else None)
                for a, b in product(a_component(qg, lam, level, rou if level == LEVEL_ZETA else None).basis,
                                    a_component(qg, mu, level, rou if level == LEVEL_ZETA else None).basis):
                    require(target.coordinates(multiply_a(a, b)) is not None,
                            "A(λ)A(μ) is not contained in A(λ+μ)", lam=lam, mu=mu, level=level)
        unit = one(qg)
        sample = a_component(qg, ctx.datum.fundamental(0)).basis
        for a, b, c in product(sample, repeat=3):
            require(multiply_a(multiply_a(a, b), c) == multiply_a(a, multiply_a(b, c)),
                    "multiplication is not associative")
        for a in sample:
            require(multiply_a(unit, a) == a == multiply_a(a, unit), "1 is not a unit")
        return passed(dimensions=dims)

    @check("u-action")
    def u_action(self, ctx: SuiteContext):
        qg = ctx.qg
        gens = generators(ctx)
        lam = ctx.datum.fundamental(0)
        comp = a_component(qg, lam)
        second = a_component(qg, ctx.datum.fundamental(ctx.datum.rank - 1))
        for phi in comp.basis:
            for (n1, u1), (n2, u2) in product(gens, repeat=2):
                require(act(u1 * u2, phi) == act(u1, act(u2, phi)), "(u₁u₂)·φ ≠ u₁·(u₂·φ)",
                        u1=n1, u2=n2)
            for name, u in gens:
                image = act(u, phi)
                require(comp.coordinates(image) is not None, "u·φ leaves A(λ)", u=name)
                for _, x in gens:
                    require(hopf_pair(image, x) == hopf_pair(phi, x * u), "⟨u·φ, x⟩ ≠ ⟨φ, xu⟩",
                            u=name)
                delta = qg.coproduct(u)
                for psi in second.basis:
                    expected = AElem(qg, {})
                    for (k1, k2), c in delta.terms.items():
                        piece = multiply_a(act(qg.monomial(k1), phi), act(qg.monomial(k2), psi))
                        expected = expected + piece.scale(c)
                    require(act(u, multiply_a(phi, psi)) == expected,
                            "u·(φψ) ≠ Σ (u₍₁₎·φ)(u₍₂₎·ψ)", u=name)
        return passed(dim=comp.dim)

    @check("extremal-vectors")
    def extremal_vectors(self, ctx: SuiteContext):
        qg = ctx.qg
        datum = ctx.datum
        checked = 0
        for word in ((), datum.w0_word):
            for i in range(datum.rank):
                lam = datum.fundamental(i)
                theta = theta_vector(qg, word, lam)
                for mu in _small_weights(ctx):
                    comp = a_component(qg, mu)
                    for j in range(comp.dim):
                        require(q_commutes(theta, comp.basis[j]),
                                "Θ_w does not q-commute with a weight vector",
                                word=[k + 1 for k in word], lam=lam, mu=mu, index=j)
                        checked += 1
        return passed(pairs=checked)

    @check("frobenius-subring")
    def frobenius_subring(self, ctx: SuiteContext):
        qg, rou = ctx.qg, ctx.rou
        datum = ctx.datum
        varpi = datum.fundamental(0)
        degrees = [1, 2] if ctx.is_a1 else [1]
        needed = max(datum.ht(varpi * (k * rou.ell) - datum.act(datum.w0_word, varpi * (k * rou.ell)))
                     for k in degrees)
        if needed > qg.ht_bound:
            return skipped(f"A₁ up to degree {degrees[-1]}ℓϖ needs ht_bound ≥ {needed}")
        basis = a1_basis(qg, rou, varpi)
        if ctx.is_a1:
            target = a_component(qg, varpi * (2 * rou.ell), LEVEL_ZETA, rou)
            for a, b in product(basis, repeat=2):
                require(target.coordinates(multiply_a(a, b)) is not None,
                        "A₁(ϖ)A₁(ϖ) leaves A_ζ(2ℓϖ)")
        return passed(dim=len(basis), degree=format_weight(varpi * rou.ell, datum))

    @check("charts")
    def charts(self, ctx: SuiteContext):
        unsupported = ctx.require_types("A1")
        if unsupported is not None:
            return unsupported
        levels = chart_levels(ctx)
        if not levels:
            return skipped(f"ht_bound {ctx.cfg.ht_bound} is below ℓ − 1")
        qg, rou = ctx.qg, ctx.rou
        out = {}
        for word in ((), (0,)):
            algebra = chart(qg, rou, word, levels[-1])
            for k in levels:
                witness = algebra.freeness_witness(k)
                require(witness["ok"], "chart is not free over the classical chart", word=list(word),
                        level=k, witness=witness)
            require(algebra.central_witness()["ok"], "classical chart coordinates do not commute with z",
                    word=list(word))
            z_ell = algebra.z_ell_witness()
            require(z_ell["ok"], "z^ℓ is not a classical coordinate", word=list(word), witness=z_ell)
            kappa = algebra.s_ell_factor()
            require(bool(kappa), "s^ℓ vanishes", word=list(word))
            entry = {"levels": levels, "z_ell": z_ell["factor"], "s_ell": rou.format(kappa)}
            if 2 * rou.ell - 1 <= qg.ht_bound:
                entry["presentation"] = algebra.presentation()
            out["s" if word else "e"] = entry
        return passed(charts=out)
