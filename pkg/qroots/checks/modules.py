from typing import List

from sympy import Rational

from ..errors import NotRegularError
from ..linalg import is_zero_matrix, matmul, mat_sub
from ..qreps import (
    chi_independence_witness,
    double_dual_isomorphism,
    lattice_and_weyl,
    lattice_split_witness,
    simple_fd,
    star_dual,
    tensor,
)
from ..qscalars import FIELD
from ..rootdata import RootDatum, WeightVec
from ..uqalg import format_weight
from .base import BaseSuite, SuiteContext, check, passed, require


def weyl_dimension(datum: RootDatum, lam: WeightVec) -> int:
    """∏_{β>0} (λ+ρ, β)/(ρ, β)."""
    out = Rational(1)
    for beta in datum.positive_roots:
        out *= datum.form(lam + datum.rho, beta) / datum.form(datum.rho, beta)
    return int(out)


def _weights(ctx: SuiteContext) -> List[WeightVec]:
    datum = ctx.datum
    out = [datum.fundamental(i) for i in range(datum.rank)]
    out.append(datum.fundamental(0) * 2)
    if datum.rank > 1:
        out.append(datum.rho)
    return out


class ModulesSuite(BaseSuite):
    name = "modules"
    description = "Simple modules, Weyl modules at ζ, ★-duals and torus characters"

    @check("simple-modules")
    def simple_modules(self, ctx: SuiteContext):
        datum = ctx.datum
        dims = {}
        for lam in _weights(ctx):
            module = simple_fd(ctx.qg, lam)
            label = format_weight(lam, datum)
            require(module.dim == weyl_dimension(datum, lam), "dimension differs from Weyl's formula",
                    weight=lam, dim=module.dim, expected=weyl_dimension(datum, lam))
            defects = module.relation_defects()
            require(not defects, "defining relations fail on the simple module", weight=lam,
                    defects=defects)
            character = module.character()
            for w, n in character.items():
                for i in range(datum.rank):
                    require(character.get(datum.reflect(i, w), 0) == n, "character is not W-invariant",
                            weight=lam, at=w, i=i + 1)
            dims[label] = module.dim
        return passed(dimensions=dims)

    @check("weyl-modules")
    def weyl_modules(self, ctx: SuiteContext):
        qg, rou = ctx.qg, ctx.rou
        out = {}
        extra = [qg.datum.fundamental(0) * rou.ell] if ctx.is_a1 else []
        for lam in _weights(ctx) + extra:
            lattice, weyl = lattice_and_weyl(qg, lam, rou)
            simple = lattice.module
            require(weyl.dim == simple.dim, "Weyl module has the wrong rank", weight=lam)
            defects = weyl.relation_defects()
            require(not defects, "relations fail on the Weyl module", weight=lam, defects=defects)
            for i in range(qg.rank):
                for n in range(1, simple.divided_bound(i) + 1):
                    for kind in ("e", "f"):
                        try:
                            weyl.divided_matrix(kind, i, n)
                        except NotRegularError:
                            require(False, "divided power leaves the lattice", weight=lam,
                                    generator=f"{kind}{i + 1}^({n})")
            witness = lattice_split_witness(qg, lattice, rou)
            require(witness["ok"], "lattice does not split off the Verma lattice", weight=lam,
                    ranks=witness["ranks"])
            out[format_weight(lam, qg.datum)] = weyl.character_json()
        return passed(ell=rou.ell, characters=out)

    @check("star-duals")
    def star_duals(self, ctx: SuiteContext):
        qg = ctx.qg
        for lam in _weights(ctx)[:2]:
            module = simple_fd(qg, lam)
            dual = star_dual(module)
            require(not dual.relation_defects(), "relations fail on M★", weight=lam)
            double = star_dual(dual)
            psi = double_dual_isomorphism(module)
            for i in range(qg.rank):
                for a, b in ((double.e[i], module.e[i]), (double.f[i], module.f[i])):
                    require(is_zero_matrix(mat_sub(matmul(psi, a, FIELD), matmul(b, psi, FIELD))),
                            "k_{2ρ} does not intertwine M★★ with M", weight=lam, i=i + 1)
            both = tensor(module, dual)
            require(not both.relation_defects(), "relations fail on M⊗M★", weight=lam)
        return passed()

    @check("chi-independence")
    def chi_independence(self, ctx: SuiteContext):
        datum, rou = ctx.datum, ctx.rou
        zero = datum.zero()
        pairs = [(zero, datum.fundamental(i)) for i in range(datum.rank)]
        pairs.append((datum.fundamental(0), datum.fundamental(0) * (rou.ell + 1)))
        witnesses = []
        for lam, mu in pairs:
            witnesses.append({"lambda": format_weight(lam, datum), "mu": format_weight(mu, datum),
                              **chi_independence_witness(ctx.qg, rou, lam, mu)})
        return passed(witnesses=witnesses)
