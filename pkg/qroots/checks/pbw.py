from typing import List

from ..linalg import det
from ..qscalars import FIELD, format_scalar
from ..rootdata import build_root_datum
from ..uqalg import QuantumGroup, UElem
from ..uqalg.words import grades_up_to
from .base import BaseSuite, SuiteContext, check, passed, require, skipped


def _height(ctx: SuiteContext) -> int:
    return min(ctx.cfg.depth, ctx.qg.ht_bound, 4)


def _grades(ctx: SuiteContext, height: int) -> List[tuple]:
    return [g for g in grades_up_to(ctx.qg.rank, height) if any(g)]


class PBWSuite(BaseSuite):
    name = "pbw"
    description = "PBW straightening stays in the integral forms; w0 words differ by unimodular changes"

    def _products(self, ctx: SuiteContext, divided: bool, form: str):
        qg = ctx.qg
        h = _height(ctx)
        grades = _grades(ctx, h)
        count = 0
        for g1 in grades:
            for g2 in grades:
                if sum(g1) + sum(g2) > h:
                    continue
                sides = (
                    (qg.plus_basis(g1, divided), qg.plus_basis(g2, divided)),
                    (qg.minus_basis(g1, divided), qg.minus_basis(g2, divided)),
                    (qg.plus_basis(g1, divided), qg.minus_basis(g2, divided)),
                )
                for left, right in sides:
                    for x in left:
                        for y in right:
                            z: UElem = x * y
                            require(qg.is_integral(z, ctx.rou, form),
                                    f"product leaves the {form} form", x=x, y=y, product=z)
                            count += 1
        return passed(products=count, height=h)

    @check("straightening-dk")
    def straightening_dk(self, ctx: SuiteContext):
        return self._products(ctx, divided=False, form="DK")

    @check("straightening-lusztig")
    def straightening_lusztig(self, ctx: SuiteContext):
        return self._products(ctx, divided=True, form="L")

    @check("w0-change-of-basis")
    def change_of_basis(self, ctx: SuiteContext):
        datum = ctx.datum
        others = [w for w in datum.reduced_words_of_w0 if w != datum.w0_word]
        if not others:
            return skipped(f"{datum.cartan_type} has a single reduced word for w0")
        qg = ctx.qg
        other = QuantumGroup(build_root_datum(datum.cartan_type, others[0]), qg.ht_bound)
        determinants = {}
        for grade in _grades(ctx, _height(ctx)):
            keys = [qg.lusztig_key(qg.empty, m) for m in qg.grade_monos(grade)]
            rows = []
            for x in other.plus_basis(grade, divided=True):
                coords = qg.to_lusztig(qg.from_words(other.to_words(x)))
                rows.append([coords.get(k, FIELD.zero) for k in keys])
            require(all(ctx.rou.regular(c) for row in rows for c in row),
                    "change of divided PBW basis is not integral", grade=list(grade))
            d = det(rows, FIELD)
            require(bool(d) and ctx.rou.valuation(d) == 0,
                    "change of divided PBW basis is not unimodular", grade=list(grade),
                    determinant=format_scalar(d))
            determinants[str(list(grade))] = format_scalar(d)
        return passed(
            words=[[i + 1 for i in datum.w0_word], [i + 1 for i in others[0]]],
            determinants=determinants,
        )
