from itertools import product

from sympy import Rational

from ..center_azumaya import (
    KPoint,
    a1_counit_defects,
    braid_zfr_defects,
    casimir,
    central_defects,
    dot_invariant,
    dot_orbit_sum,
    h_ur,
    hc_iota,
    m_lambda,
    off_variety_point,
    omega_on_variety,
    sample_points,
    separates_points,
    t_mu,
    v_contains,
    v_contains_via_omega,
    ze_centrality_defects,
    zfr_evaluate,
    zfr_generators,
)
from ..qcoord import classical_component
from ..qscalars import ONE, V, qbinom
from ..uqalg import frobenius_pi, frobenius_pi_tensor, specialize_tensor, specialize_u
from .base import BaseSuite, SuiteContext, check, passed, require, skipped


class CenterSuite(BaseSuite):
    name = "center"
    description = "Frobenius and Harish-Chandra centers and the variety cut out by Ω₁ = Ω₂"

    @check("zfr-central")
    def zfr_central(self, ctx: SuiteContext):
        qg, rou = ctx.qg, ctx.rou
        gens = zfr_generators(qg, rou)
        for i in range(qg.rank):
            qi = V ** qg.datum.qi_vexp(i)
            for k in range(1, rou.ell):
                require(not rou.specialize(qbinom(rou.ell, k, qi)), "[ℓ choose k]_{q_i} ≠ 0 at ζ",
                        i=i + 1, k=k)
        for (n1, z1), (n2, z2) in product(gens, repeat=2):
            require(not z1.commutator(z2), "Frobenius center generators do not commute", a=n1, b=n2)
        out = {"generators": [name for name, _ in gens]}
        if ctx.is_a1:
            points = [KPoint.of(rou, Rational(1, 2), Rational(3), Rational(2)),
                      KPoint.of(rou, Rational(-1), Rational(1, 3), Rational(1, 5))]
            for k in points:
                for (n1, z1), (n2, z2) in product(gens, repeat=2):
                    require(zfr_evaluate(z1 * z2, k) == zfr_evaluate(z1, k) * zfr_evaluate(z2, k),
                            "evaluation on K is not multiplicative", a=n1, b=n2)
        return passed(**out)

    @check("frobenius-map")
    def frobenius_map(self, ctx: SuiteContext):
        qg, rou = ctx.qg, ctx.rou
        top = min(2 * rou.ell, qg.ht_bound)
        pairs = 0
        for i in range(qg.rank):
            k = qg.datum.betas.index(qg.datum.alpha(i))

            def divided(kind, n, k=k):
                return qg.e_root(k, n, divided=True) if kind == "e" else qg.f_root(k, n, divided=True)

            for a, b in product(range(top + 1), repeat=2):
                if a + b > top:
                    continue
                for left, right in (("e", "e"), ("f", "f"), ("f", "e"), ("e", "f")):
                    x = specialize_u(divided(left, a), rou, "L")
                    y = specialize_u(divided(right, b), rou, "L")
                    require(frobenius_pi(x * y) == frobenius_pi(x) * frobenius_pi(y),
                            "π is not multiplicative", i=i + 1, left=f"{left}^({a})", right=f"{right}^({b})")
                    pairs += 1
            for n in range(top + 1):
                for kind in ("e", "f"):
                    x = divided(kind, n)
                    image = frobenius_pi(specialize_u(x, rou, "L"))
                    tensor = frobenius_pi_tensor(specialize_tensor(qg.coproduct(x), rou, "L"), qg, rou)
                    require(tensor == image.coproduct(), "(π⊗π)Δ ≠ Δπ", i=i + 1, element=f"{kind}^({n})")
                    expected = n % rou.ell == 0
                    require(bool(image) == expected, "π does not keep exactly the ℓ-divisible powers",
                            i=i + 1, element=f"{kind}^({n})")
        return passed(products=pairs, top=top)

    @check("hc-image")
    def hc_image(self, ctx: SuiteContext):
        unsupported = ctx.require_types("A1")
        if unsupported is not None:
            return unsupported
        qg = ctx.qg
        datum = ctx.datum
        c = casimir(qg)
        require(not central_defects(c), "the Casimir element is not central", failing=central_defects(c))
        image = hc_iota(c)
        require(dot_invariant(qg, image), "ι(C) is not W∘-invariant", image=image)
        q = V ** datum.qi_vexp(0)
        scale = q / (q - ONE / q) ** 2
        expected = {mu: x * scale for mu, x in dot_orbit_sum(qg, -datum.fundamental(0)).items()}
        require(image == expected, "ι(C) differs from the dot-orbit sum of e(α)", image=image,
                expected=expected)
        out = {}
        for n in (1, 2):
            lam = datum.fundamental(0) * n
            m = m_lambda(qg, lam)
            iota = hc_iota(m)
            require(iota.get(lam * -2) == ONE, "m(λ) is not normalized on e(−2λ)", lam=lam)
            require(iota == dot_orbit_sum(qg, lam) and dot_invariant(qg, iota),
                    "ι(m(λ)) is not the dot-orbit sum", lam=lam)
            out[f"m({n}w)"] = m
        return passed(casimir=c, iota_casimir=image, **out)

    @check("variety-equations")
    def variety_equations(self, ctx: SuiteContext):
        unsupported = ctx.require_types("A1")
        if unsupported is not None:
            return unsupported
        qg, rou = ctx.qg, ctx.rou
        points = sample_points(rou, 10, ctx.cfg.seed)
        outside = [off_variety_point(rou, Rational(1), Rational(2), Rational(3)),
                   off_variety_point(rou, Rational(-2, 3), Rational(1, 2), Rational(1, 2))]
        functions = [(n, vals) for n in (1, 2)
                     for vals in classical_component(qg, qg.datum.fundamental(0) * n).values]
        for index, pt in enumerate(points):
            require(v_contains(pt), "sampled point is not on 𝒱", index=index)
            for n, vals in functions:
                values = omega_on_variety(qg, vals, n, pt)
                require(values.routes_agree, "algebraic and geometric Ω values differ", index=index,
                        degree=n)
                require(values.equal, "Ω₁ ≠ Ω₂ on a point of 𝒱", index=index, degree=n)
        for index, pt in enumerate(outside):
            require(not v_contains(pt), "off-variety sample satisfies the equations", index=index)
            for n, vals in functions:
                require(omega_on_variety(qg, vals, n, pt).routes_agree,
                        "algebraic and geometric Ω values differ off 𝒱", index=index, degree=n)
            require(not v_contains_via_omega(qg, pt), "Ω₁ = Ω₂ at a point off 𝒱", index=index)
        require(separates_points(qg, points + outside), "Z_Fr does not separate the sampled points")
        datum = ctx.datum
        require(h_ur(qg, rou, t_mu(qg, rou, -datum.rho)), "t_{−ρ} is not in H_ur")
        require(not h_ur(qg, rou, t_mu(qg, rou, datum.zero())), "t_0 lies in H_ur")
        return passed(points=len(points), off_variety=len(outside), functions=len(functions))

    @check("ze-center")
    def ze_center(self, ctx: SuiteContext):
        qg, rou = ctx.qg, ctx.rou
        datum = ctx.datum
        varpi = datum.fundamental(0) * rou.ell
        needed = datum.ht(varpi - datum.act(datum.w0_word, varpi))
        if needed > qg.ht_bound:
            return skipped(f"A₁ in degree ℓϖ needs ht_bound ≥ {needed}")
        failing = ze_centrality_defects(qg, rou)
        require(not failing, "ZE^(ℓ) is not central in E_ζ", failing=failing)
        failing = a1_counit_defects(qg, rou)
        require(not failing, "U_ζ does not act on A₁ through the counit", failing=failing)
        failing = braid_zfr_defects(qg, rou)
        require(not failing, "braid automorphisms leave Z_Fr", failing=failing)
        return passed()
