from itertools import product

from sympy import Rational

from ..center_azumaya import (
    manin_prediction,
    off_variety_point,
    poisson_bracket,
    poisson_rank_at,
    sample_points,
)
from ..errors import NotOnVarietyError
from ..uqalg import specialize_u
from .base import BaseSuite, SuiteContext, check, passed, require


class PoissonSuite(BaseSuite):
    name = "poisson"
    description = "The Poisson bracket Z_Fr inherits from the generic quantum group, and its rank on 𝒱"
    types = ("A1",)

    def _lifts(self, ctx: SuiteContext):
        qg, ell = ctx.qg, ctx.rou.ell
        varpi = ctx.datum.fundamental(0)
        return [
            ("E^l", qg.e_root(0, ell)),
            ("F^l", qg.f_root(0, ell)),
            ("K", qg.k(varpi * ell)),
            ("K^-1", qg.k(varpi * -ell)),
        ]

    @check("poisson-bracket")
    def poisson_bracket_check(self, ctx: SuiteContext):
        rou = ctx.rou
        lifts = self._lifts(ctx)
        for (n1, a), (n2, b) in product(lifts, repeat=2):
            require(poisson_bracket(a, b, rou) == -poisson_bracket(b, a, rou), "{a, b} ≠ −{b, a}",
                    a=n1, b=n2)
        for (n1, a), (n2, b), (n3, c) in product(lifts[:3], repeat=3):
            left = poisson_bracket(a, b * c, rou)
            right = (poisson_bracket(a, b, rou) * specialize_u(c, rou)
                     + specialize_u(b, rou) * poisson_bracket(a, c, rou))
            require(left == right, "{a, bc} ≠ {a, b}c + b{a, c}", a=n1, b=n2, c=n3)
        _, k_plus = lifts[2]
        _, k_minus = lifts[3]
        require(not poisson_bracket(k_plus, k_minus, rou), "{K, K⁻¹} ≠ 0")
        points = [pt.k for pt in sample_points(rou, 4, ctx.cfg.seed)]
        report = manin_prediction(ctx.qg, rou, points)
        require(report.matches, "brackets differ from the dual Poisson group prediction",
                k_e=report.k_e_matches, k_f=report.k_f_matches, e_f_shape=report.e_f_shape)
        return passed(e_f_constant=report.e_f_constant, point_values=report.point_values)

    @check("poisson-rank")
    def poisson_rank(self, ctx: SuiteContext):
        rou = ctx.rou
        ranks = []
        for index, pt in enumerate(sample_points(rou, 4, ctx.cfg.seed)):
            result = poisson_rank_at(pt)
            require(result.antisymmetric, "Poisson tensor is not antisymmetric", index=index)
            require(result.rank == 4 and result.radical == 2,
                    "Poisson tensor does not have rank 4 with a 2-dimensional radical", index=index,
                    rank=result.rank, radical=result.radical)
            ranks.append(result.rank)
        try:
            poisson_rank_at(off_variety_point(rou, Rational(1), Rational(2), Rational(3)))
        except NotOnVarietyError:
            pass
        else:
            require(False, "rank computed at a point off 𝒱")
        return passed(ranks=ranks, radical=2)
