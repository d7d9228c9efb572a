from ..diffops import local_identity_check
from ..qcoord import a_component, theta_vector
from ..qreps import LEVEL_ZETA
from ..uqalg import format_weight
from .base import BaseSuite, SuiteContext, check, passed, require


class LocalFormulasSuite(BaseSuite):
    name = "local-formulas"
    description = "Localized identities in D′_ζ relating Ω₁ to the highest-weight chart"
    types = ("A1",)

    def _setup(self, ctx: SuiteContext):
        varpi = ctx.datum.fundamental(0)
        for lam in (varpi, varpi * 2):
            s = theta_vector(ctx.qg, (), lam, LEVEL_ZETA, ctx.rou)
            yield lam, s, a_component(ctx.qg, lam, LEVEL_ZETA, ctx.rou)

    @check("local-formula-1")
    def local_formula_1(self, ctx: SuiteContext):
        datum = ctx.datum
        checked = []
        for lam, s, comp in self._setup(ctx):
            for k in range(1, datum.coroot(lam, 0) + 1):
                gamma = datum.alpha(0) * k
                for j in comp.weight_basis(lam - gamma):
                    require(local_identity_check(lam, gamma, comp.basis[j], s),
                            "localized identity fails in D′_ζ", lam=lam, gamma=gamma, index=j)
                    checked.append(f"{format_weight(lam, datum)}/{format_weight(gamma, datum)}")
        return passed(instances=checked)

    @check("local-formula-2")
    def local_formula_2(self, ctx: SuiteContext):
        zero = ctx.datum.zero()
        checked = []
        for lam, s, _ in self._setup(ctx):
            require(local_identity_check(lam, zero, s, s), "φ = s case fails in D′_ζ", lam=lam)
            checked.append(format_weight(lam, ctx.datum))
        return passed(weights=checked)
