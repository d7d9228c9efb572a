from sympy import Rational

from ..center_azumaya import (
    fiber_at,
    is_full_matrix_algebra,
    matrix_algebra,
    matrix_algebra_witness,
    off_variety_point,
    open_cell_point,
    trivial_point,
    xi_mu,
    xi_mu_twist,
)
from ..errors import NotOnVarietyError
from .base import BaseSuite, SuiteContext, check, passed, require, skipped
from .coordring import chart_levels

_TRIVIAL = [(Rational(1, 2), Rational(2)), (Rational(3), Rational(1, 3)), (Rational(-2), Rational(5, 2))]


class AzumayaSuite(BaseSuite):
    name = "azumaya"
    description = "Fibers of the degree-0 algebra over 𝒱 are full matrix algebras of size ℓ"
    types = ("A1",)

    def _reachable(self, ctx: SuiteContext):
        levels = chart_levels(ctx)
        if 1 not in levels:
            return skipped(f"fibers need chart level 1, ht_bound {ctx.cfg.ht_bound} is too small")
        return None

    @check("fiber-matrix")
    def fiber_matrix(self, ctx: SuiteContext):
        unreachable = self._reachable(ctx)
        if unreachable is not None:
            return unreachable
        qg, rou = ctx.qg, ctx.rou
        ell = rou.ell
        reference = matrix_algebra_witness(matrix_algebra(ell, rou.domain))
        require(reference["ok"], "M_ℓ fails its own witness", witness=reference)
        witnesses = []
        for c, t in _TRIVIAL:
            fiber = fiber_at(qg, rou, trivial_point(rou, c, t))
            require(fiber.dim == ell * ell, "fiber has the wrong dimension", dim=fiber.dim)
            require(fiber.is_associative(), "fiber multiplication is not associative", c=c, t=t)
            require(fiber.has_unit(), "fiber has no unit", c=c, t=t)
            witness = matrix_algebra_witness(fiber)
            require(is_full_matrix_algebra(fiber), "fiber is not a full matrix algebra", c=c, t=t,
                    witness=witness)
            witnesses.append(witness)
        open_cell = []
        for x, t, h in ((Rational(1), Rational(2), Rational(3)), (Rational(1, 2), Rational(1), Rational(2))):
            fiber = fiber_at(qg, rou, open_cell_point(rou, x, t, h))
            witness = matrix_algebra_witness(fiber)
            require(is_full_matrix_algebra(fiber), "open-cell fiber is not a full matrix algebra",
                    x=x, t=t, h=h, witness=witness)
            open_cell.append(witness)
        try:
            fiber_at(qg, rou, off_variety_point(rou, Rational(1), Rational(2), Rational(3)))
        except NotOnVarietyError:
            pass
        else:
            require(False, "fiber built at a point off 𝒱")
        return passed(n=ell, fibers=witnesses, open_cell=open_cell)

    @check("xi-twist")
    def xi_twist(self, ctx: SuiteContext):
        unreachable = self._reachable(ctx)
        if unreachable is not None:
            return unreachable
        qg, rou = ctx.qg, ctx.rou
        datum = ctx.datum
        out = []
        for mu in (datum.zero(), datum.fundamental(0)):
            witness = xi_mu_twist(qg, rou, mu)
            require(witness["ok"], "conjugation by c does not realize ξ_μ", mu=mu, witness=witness)
            c, t = _TRIVIAL[0]
            pt = trivial_point(rou, c, t)
            before = fiber_at(qg, rou, pt)
            after = fiber_at(qg, rou, xi_mu(qg, pt, mu))
            require(before.dim == after.dim and is_full_matrix_algebra(after),
                    "ξ_μ does not carry the fiber to an isomorphic one", mu=mu)
            out.append(witness)
        return passed(twists=out)
