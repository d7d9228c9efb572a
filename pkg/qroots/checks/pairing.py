from itertools import product
from typing import List

from ..errors import SingularGramError
from ..pairing import (
    Normalization,
    commute_via_pairing,
    dual_bases,
    pairing_table,
    pm_duality_check,
    tau,
    tau_right,
)
from ..qscalars import ONE, V, ZERO, format_scalar
from ..uqalg.words import Grade, grades_up_to
from .base import BaseSuite, SuiteContext, check, passed, require


def _height(ctx: SuiteContext, cap: int = 4) -> int:
    return min(ctx.cfg.depth, ctx.qg.ht_bound, cap)


def _grades(ctx: SuiteContext, height: int) -> List[Grade]:
    return sorted((g for g in grades_up_to(ctx.qg.rank, height) if any(g)), key=lambda g: (sum(g), g))


class PairingSuite(BaseSuite):
    name = "pairing"
    description = "The Drinfeld pairing: defining identities, dual bases and integral duality"

    @check("defining-identities")
    def defining_identities(self, ctx: SuiteContext):
        qg = ctx.qg
        datum = qg.datum
        for i in range(qg.rank):
            qi = V ** datum.qi_vexp(i)
            for j in range(qg.rank):
                expected = ONE / (ONE / qi - qi) if i == j else ZERO
                require(tau(qg.e(i), qg.f(j)) == expected, "τ(e_i, f_j) ≠ δ_ij/(q_i^{-1} − q_i)",
                        i=i + 1, j=j + 1, value=tau(qg.e(i), qg.f(j)))
            lam = datum.fundamental(i)
            require(tau(qg.k(lam), qg.f(i)) == ZERO and tau(qg.e(i), qg.k(lam)) == ZERO,
                    "τ pairs k with a root vector", i=i + 1)
            for j in range(qg.rank):
                mu = datum.fundamental(j)
                require(tau(qg.k(lam), qg.k(mu)) == V ** -datum.vexp(lam, mu),
                        "τ(k_λ, k_μ) ≠ q^{−(λ,μ)}", lam=lam, mu=mu)
        count = 0
        h = _height(ctx, 3)
        for g1, g2 in product(_grades(ctx, h), repeat=2):
            if sum(g1) + sum(g2) > h:
                continue
            total = tuple(a + b for a, b in zip(g1, g2))
            for x in qg.plus_basis(total, divided=False):
                dx = qg.coproduct(x)
                for y1, y2 in product(qg.minus_basis(g1, divided=False), qg.minus_basis(g2, divided=False)):
                    split = dx.contract(lambda a, b: qg.scalar(tau(a, y1) * tau(b, y2)))
                    require(split == qg.scalar(tau(x, y1 * y2)), "τ(x, y₁y₂) ≠ (τ⊗τ)(Δx, y₁⊗y₂)",
                            x=x, y1=y1, y2=y2)
                    count += 1
            for y in qg.minus_basis(total, divided=False):
                dy = qg.coproduct(y)
                for x1, x2 in product(qg.plus_basis(g1, divided=False), qg.plus_basis(g2, divided=False)):
                    split = dy.contract(lambda a, b: qg.scalar(tau(x2, a) * tau(x1, b)))
                    require(split == qg.scalar(tau(x1 * x2, y)), "τ(x₁x₂, y) ≠ (τ⊗τ)(x₂⊗x₁, Δy)",
                            x1=x1, x2=x2, y=y)
                    count += 1
        return passed(coproduct_instances=count, height=h)

    @check("recursions-agree")
    def recursions_agree(self, ctx: SuiteContext):
        qg = ctx.qg
        h = _height(ctx)
        pairs = 0
        for grade in _grades(ctx, h):
            for x, y in product(qg.plus_basis(grade, divided=False), qg.minus_basis(grade, divided=False)):
                require(tau(x, y) == tau_right(x, y), "the two comultiplication recursions differ",
                        x=x, y=y)
                pairs += 1
        return passed(pairs=pairs, height=h)

    @check("pairing-properties")
    def pairing_properties(self, ctx: SuiteContext):
        qg = ctx.qg
        datum = qg.datum
        h = _height(ctx, 3)
        grades = _grades(ctx, h)
        for grade in grades:
            plus = qg.plus_basis(grade, divided=False)
            minus = qg.minus_basis(grade, divided=False)
            for x, y in product(plus, minus):
                require(tau(qg.antipode(x), qg.antipode(y)) == tau(x, y), "τ(S x, S y) ≠ τ(x, y)",
                        x=x, y=y)
                for i in range(qg.rank):
                    lam, mu = datum.fundamental(i), datum.alpha(i)
                    require(tau(x * qg.k(lam), y * qg.k(mu)) == tau(x, y) * V ** -datum.vexp(lam, mu),
                            "τ(x k_λ, y k_μ) ≠ q^{−(λ,μ)} τ(x, y)", x=x, y=y, lam=lam, mu=mu)
            for other in grades:
                if other == grade:
                    continue
                for x, y in product(plus, qg.minus_basis(other, divided=False)):
                    require(tau(x, y) == ZERO, "τ pairs distinct weights", x=x, y=y)
        for g1, g2 in product(grades, repeat=2):
            if sum(g1) + sum(g2) > h:
                continue
            for x, y in product(qg.plus_basis(g1, divided=False), qg.minus_basis(g2, divided=False)):
                require(commute_via_pairing(x, y, "yx") == y * x, "yx through τ disagrees", x=x, y=y)
                require(commute_via_pairing(x, y, "xy") == x * y, "xy through τ disagrees", x=x, y=y)
        return passed(height=h)

    @check("dual-bases")
    def dual_bases_check(self, ctx: SuiteContext):
        qg = ctx.qg
        h = _height(ctx)
        sizes = {}
        for grade in _grades(ctx, h):
            for normalization in Normalization:
                try:
                    pairing_table(qg).gram(grade, normalization)
                except SingularGramError as e:
                    require(False, e.message, grade=list(grade), normalization=normalization.value)
                bases = dual_bases(qg, grade, normalization)
                for p, x in enumerate(bases.xs):
                    for q, y in enumerate(bases.ys):
                        require(tau(x, y) == (ONE if p == q else ZERO), "τ(x_p, y_q) ≠ δ_pq",
                                grade=list(grade), normalization=normalization.value, p=p, q=q)
            sizes[str(list(grade))] = len(qg.grade_monos(grade))
        return passed(dimensions=sizes)

    @check("pm-duality")
    def pm_duality(self, ctx: SuiteContext):
        determinants = {}
        for grade in _grades(ctx, _height(ctx)):
            for w in pm_duality_check(ctx.qg, grade, ctx.rou):
                require(w.integral, "dual basis leaves the integral form", grade=list(grade),
                        normalization=w.normalization.value)
                require(w.unimodular, "dual basis change is not unimodular at ζ", grade=list(grade),
                        normalization=w.normalization.value, determinant=w.determinant)
                determinants[f"{list(grade)}/{w.normalization.value}"] = w.determinant
        return passed(ell=ctx.rou.ell, determinants=determinants, tau_simple=format_scalar(
            tau(ctx.qg.e(0), ctx.qg.f(0))))
