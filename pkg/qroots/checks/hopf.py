from itertools import product
from typing import List, Tuple

from ..qscalars import ONE, V, qbinom
from ..uqalg import UElem
from .base import BaseSuite, SuiteContext, check, passed, require


def generators(ctx: SuiteContext) -> List[Tuple[str, UElem]]:
    qg = ctx.qg
    out = []
    for i in range(qg.rank):
        out += [(f"E{i + 1}", qg.e(i)), (f"F{i + 1}", qg.f(i)),
                (f"k[w{i + 1}]", qg.k(qg.datum.fundamental(i)))]
    return out


def words(ctx: SuiteContext, length: int) -> List[Tuple[str, UElem]]:
    gens = generators(ctx)
    out = [("1", ctx.qg.one())]
    for n in range(1, length + 1):
        for combo in product(gens, repeat=n):
            elem = ctx.qg.one()
            for _, g in combo:
                elem = elem * g
            out.append(("*".join(name for name, _ in combo), elem))
    return out


def word_length(ctx: SuiteContext) -> int:
    return min(ctx.cfg.depth, 4 if ctx.qg.rank == 1 else 3)


class HopfSuite(BaseSuite):
    name = "hopf"
    description = "Defining relations and Hopf axioms on words in the generators"

    @check("defining-relations")
    def defining_relations(self, ctx: SuiteContext):
        qg = ctx.qg
        datum = qg.datum
        require(qg.k(datum.zero()) == qg.one(), "k[0] is not 1")
        for i in range(qg.rank):
            lam, mu = datum.fundamental(i), datum.alpha(i)
            require(qg.k(lam) * qg.k(mu) == qg.k(lam + mu), "k_λ k_μ ≠ k_{λ+μ}", lam=lam, mu=mu)
            for j in range(qg.rank):
                lam = datum.fundamental(j)
                shift = V ** datum.vexp(lam, datum.alpha(i))
                require(qg.k(lam) * qg.e(i) * qg.k(-lam) == qg.e(i) * shift,
                        "k e k^{-1} relation fails", i=i + 1, lam=lam)
                require(qg.k(lam) * qg.f(i) * qg.k(-lam) == qg.f(i) * (ONE / shift),
                        "k f k^{-1} relation fails", i=i + 1, lam=lam)
                bracket = qg.commutator(qg.e(i), qg.f(j))
                if i == j:
                    qi = V ** datum.qi_vexp(i)
                    bracket = bracket - (qg.ki(i) - qg.ki(i, -1)) * (ONE / (qi - ONE / qi))
                require(not bracket, "[e_i, f_j] relation fails", i=i + 1, j=j + 1, defect=bracket)
                if i == j:
                    continue
                r = 1 - datum.coroot(datum.alpha(j), i)
                qi = V ** datum.qi_vexp(i)
                for gen in (qg.e, qg.f):
                    total = qg.zero()
                    for s in range(r + 1):
                        term = gen(i) ** (r - s) * gen(j) * gen(i) ** s
                        total = total + term * (qbinom(r, s, qi) * (-1) ** s)
                    require(not total, "quantum Serre relation fails", i=i + 1, j=j + 1, defect=total)
        return passed("relations reduce to 0 in PBW normal form")

    @check("coassociativity")
    def coassociativity(self, ctx: SuiteContext):
        qg = ctx.qg
        sample = words(ctx, word_length(ctx))
        for name, a in sample:
            delta = qg.coproduct(a)
            require(delta.apply(0, qg.coproduct) == delta.apply(1, qg.coproduct),
                    "(Δ⊗1)Δ ≠ (1⊗Δ)Δ", word=name)
        return passed(words=len(sample))

    @check("counit")
    def counit(self, ctx: SuiteContext):
        qg = ctx.qg
        sample = words(ctx, word_length(ctx))
        for name, a in sample:
            delta = qg.coproduct(a)
            left = delta.contract(lambda x, y: y * qg.counit(x))
            right = delta.contract(lambda x, y: x * qg.counit(y))
            require(left == a and right == a, "counit axiom fails", word=name)
        return passed(words=len(sample))

    @check("antipode")
    def antipode(self, ctx: SuiteContext):
        qg = ctx.qg
        sample = words(ctx, word_length(ctx))
        for name, a in sample:
            delta = qg.coproduct(a)
            unit = qg.scalar(qg.counit(a))
            require(delta.contract(lambda x, y: qg.antipode(x) * y) == unit,
                    "m(S⊗1)Δ ≠ ε", word=name)
            require(delta.contract(lambda x, y: x * qg.antipode(y)) == unit,
                    "m(1⊗S)Δ ≠ ε", word=name)
            require(qg.antipode_inverse(qg.antipode(a)) == a, "S^{-1}S ≠ 1", word=name)
        return passed(words=len(sample))

    @check("coproduct-multiplicative")
    def coproduct_multiplicative(self, ctx: SuiteContext):
        qg = ctx.qg
        gens = generators(ctx)
        for (na, a), (nb, b) in product(gens, repeat=2):
            require(qg.coproduct(a * b) == qg.coproduct(a) * qg.coproduct(b),
                    "Δ(ab) ≠ Δ(a)Δ(b)", a=na, b=nb)
            require(qg.counit(a * b) == qg.counit(a) * qg.counit(b), "ε is not multiplicative",
                    a=na, b=nb)
            require(qg.antipode(a * b) == qg.antipode(b) * qg.antipode(a),
                    "S is not an anti-homomorphism", a=na, b=nb)
        return passed(pairs=len(gens) ** 2)
