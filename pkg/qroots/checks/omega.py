from typing import List, Tuple

from ..diffops import (
    braid_star,
    braid_star_ideal_witness,
    braid_star_word,
    from_a,
    from_u,
    omega_identity_defects,
    operator_relation_defects,
    rphi_agreement,
    zeta_kernel_witness,
)
from ..qcoord import a_component
from ..rootdata import WeightVec
from ..uqalg import format_weight
from .base import BaseSuite, SuiteContext, check, passed, require
from .hopf import generators


def omega_weights(ctx: SuiteContext) -> List[WeightVec]:
    """A(ϖ) and A(2ϖ) for A1, A(ϖ₁) otherwise."""
    datum = ctx.datum
    varpi = datum.fundamental(0)
    return [varpi, varpi * 2] if ctx.is_a1 else [varpi]


def operator_window(ctx: SuiteContext) -> Tuple[WeightVec, WeightVec]:
    datum = ctx.datum
    return (datum.zero(), datum.fundamental(0))


class OmegaSuite(BaseSuite):
    name = "omega"
    description = "Ω-elements, the operator realization of E and the braid ⋆-action"

    @check("omega-identities")
    def omega_identities(self, ctx: SuiteContext):
        qg = ctx.qg
        datum = ctx.datum
        partner = a_component(qg, datum.fundamental(datum.rank - 1)).basis
        count = 0
        for lam in omega_weights(ctx):
            for phi in a_component(qg, lam).basis:
                for psi in partner:
                    for name, u in generators(ctx):
                        for which in (1, 2):
                            defects = omega_identity_defects(phi, psi, u, which)
                            require(not defects, "Ω identity fails", which=which, weight=lam,
                                    generator=name, defects=defects)
                            count += 1
        return passed(instances=count)

    @check("rphi-agreement")
    def rphi(self, ctx: SuiteContext):
        window = operator_window(ctx)
        sizes = {}
        for lam in omega_weights(ctx):
            for j, phi in enumerate(a_component(ctx.qg, lam).basis):
                witness = rphi_agreement(phi, window)
                require(witness["ok"], "r_φ differs from the operator of Ω₁ or Ω₂", weight=lam,
                        index=j, first=witness["first"], second=witness["second"])
                sizes[format_weight(lam, ctx.datum)] = witness["window_dim"]
        return passed(window=[list(w) for w in window], window_dims=sizes)

    @check("operator-relations")
    def operator_relations(self, ctx: SuiteContext):
        qg = ctx.qg
        window = operator_window(ctx)
        lam = ctx.datum.fundamental(0)
        for phi in a_component(qg, lam).basis:
            for name, u in generators(ctx):
                defects = operator_relation_defects(u, phi, lam, window)
                require(not defects, "relations of D fail on the window", generator=name,
                        defects=defects)
        return passed(window=[list(w) for w in window])

    @check("braid-star-ideal")
    def braid_star_ideal(self, ctx: SuiteContext):
        qg = ctx.qg
        datum = ctx.datum
        basis = a_component(qg, datum.fundamental(0)).basis
        for phi in basis:
            a = from_a(phi)
            for i in range(qg.rank):
                require(braid_star(i, -1, braid_star(i, 1, a)) == a, "T_i^{-1}⋆T_i⋆ is not the identity",
                        i=i + 1)
                for sign in (1, -1):
                    witness = braid_star_ideal_witness(i, sign, phi)
                    require(witness["ok"], "T⋆Ω(φ) leaves the Ω-ideal", i=i + 1, sign=sign,
                            exact=witness["exact"], in_ideal=witness["in_ideal"])
        if datum.cartan_type == "A2":
            samples = [from_a(basis[0]), from_u(qg.e(0)), from_u(qg.f(1))]
            for a in samples:
                require(braid_star_word((0, 1, 0), a) == braid_star_word((1, 0, 1), a),
                        "⋆ violates the braid relation")
        return passed(elements=len(basis))

    @check("zeta-kernel")
    def zeta_kernel(self, ctx: SuiteContext):
        window = operator_window(ctx)
        out = {}
        for i in range(ctx.qg.rank):
            witness = zeta_kernel_witness(ctx.qg, ctx.rou, window, i)
            require(witness["ok"], "e_i^ℓ is not a nonzero element acting by zero", i=i + 1, **witness)
            out[f"e{i + 1}^{ctx.rou.ell}"] = witness
        return passed(witnesses=out)
