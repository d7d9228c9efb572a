from ..linalg import is_zero_matrix, mat_sub
from ..qreps import (
    WeightModule,
    braid_T_matrix,
    delta_T_defect,
    direct_sum,
    intertwining_defect,
    pullback_braid_defect,
    simple_fd,
    weight_map_defect,
)
from .base import BaseSuite, SuiteContext, check, passed, require
from .hopf import generators


def _window(ctx: SuiteContext) -> WeightModule:
    qg = ctx.qg
    varpi = qg.datum.fundamental(0)
    if ctx.is_a1:
        return direct_sum(simple_fd(qg, varpi), simple_fd(qg, varpi * 2))
    return simple_fd(qg, varpi)


class BraidSuite(BaseSuite):
    name = "braid"
    description = "Lusztig braid automorphisms on U and the braid operators on modules"

    @check("braid-relations")
    def braid_relations(self, ctx: SuiteContext):
        qg = ctx.qg
        datum = qg.datum
        for name, u in generators(ctx):
            for i in range(qg.rank):
                require(qg.braid_T(i, -1, qg.braid_T(i, 1, u)) == u, "T_i^{-1}T_i ≠ 1",
                        i=i + 1, generator=name)
                require(qg.braid_T(i, 1, qg.k(datum.fundamental(i))) ==
                        qg.k(datum.reflect(i, datum.fundamental(i))), "T_i(k_λ) ≠ k_{s_iλ}", i=i + 1)
            for i in range(qg.rank):
                for j in range(i + 1, qg.rank):
                    m = {0: 2, 1: 3, 2: 4, 3: 6}[datum.cartan[i][j] * datum.cartan[j][i]]
                    left = tuple((i, j) * m)[:m]
                    right = tuple((j, i) * m)[:m]
                    require(qg.braid_word(left, u) == qg.braid_word(right, u),
                            "braid relation fails", generator=name, i=i + 1, j=j + 1)
        return passed()

    @check("ti-product-forms")
    def ti_product_forms(self, ctx: SuiteContext):
        module = _window(ctx)
        for i in range(ctx.qg.rank):
            for sign in (1, -1):
                one = braid_T_matrix(module, i, form=1, sign=sign)
                two = braid_T_matrix(module, i, form=2, sign=sign)
                require(is_zero_matrix(mat_sub(one, two)), "the two product forms of T_i differ",
                        i=i + 1, sign=sign, module=module.name)
        return passed(module=module.name, dim=module.dim)

    @check("module-intertwining")
    def module_intertwining(self, ctx: SuiteContext):
        module = _window(ctx)
        for i in range(ctx.qg.rank):
            require(not weight_map_defect(module, i), "T_i does not map M_λ to M_{s_iλ}", i=i + 1)
            for name, u in generators(ctx):
                require(not intertwining_defect(module, i, u), "T_i(um) ≠ T_i(u)T_i(m)",
                        i=i + 1, generator=name)
        return passed(module=module.name)

    @check("delta-t")
    def delta_t(self, ctx: SuiteContext):
        qg = ctx.qg
        m = simple_fd(qg, qg.datum.fundamental(0))
        for i in range(qg.rank):
            require(is_zero_matrix(delta_T_defect(m, m, i)), "ΔT_i identity fails on L⊗L", i=i + 1)
        return passed(module=f"{m.name}⊗{m.name}")

    @check("frobenius-pullback")
    def frobenius_pullback(self, ctx: SuiteContext):
        qg = ctx.qg
        lam = qg.datum.fundamental(0)
        for i in range(qg.rank):
            require(not pullback_braid_defect(qg, lam, ctx.rou, i),
                    "T_i on the Frobenius pullback differs from exp(f̄)exp(−ē)exp(f̄)", i=i + 1)
        return passed(weight=lam)
