"""
Tests for the centers of U_ζ, the variety 𝒱, the Poisson structure and the
Azumaya fibers, all for A1 at ℓ = 3.
"""

import pytest
from sympy import Rational

from qroots.center_azumaya import (
    KPoint,
    a1_counit_defects,
    casimir,
    central_defects,
    dot_invariant,
    dot_orbit_sum,
    fiber_at,
    h_ur,
    hc_iota,
    is_full_matrix_algebra,
    m_lambda,
    manin_prediction,
    matrix_algebra,
    matrix_algebra_witness,
    off_variety_point,
    omega_on_variety,
    open_cell_point,
    poisson_bracket,
    poisson_rank_at,
    sample_points,
    separates_points,
    t_mu,
    trivial_point,
    v_contains,
    v_contains_via_omega,
    xi_mu,
    xi_mu_twist,
    ze_centrality_defects,
    zfr_evaluate,
    zfr_generators,
)
from qroots.diffops import from_u
from qroots.errors import NotCentralError, NotOnVarietyError, QrootsError
from qroots.qcoord import classical_component
from qroots.qscalars import ONE, V
from qroots.rootdata import WeightVec
from qroots.uqalg import specialize_u


class TestFrobeniusCenter:
    def test_generators_are_central(self, qg1, rou3):
        gens = zfr_generators(qg1, rou3)
        assert [name for name, _ in gens] == ["e_b1^3", "f_b1^3", "k[3w1]", "k[-3w1]"]
        for _, z in gens:
            assert central_defects(z) == []

    def test_generators_off_the_root_of_unity_are_not_central(self, qg1):
        assert central_defects(qg1.e(0)) == ["f1", "k_w1"]
        assert central_defects(qg1.e_root(0, 3)) == ["f1", "k_w1"]

    def test_evaluation_is_multiplicative(self, qg1, rou3):
        gens = dict(zfr_generators(qg1, rou3))
        points = [KPoint.of(rou3, 1, 2, 3), KPoint.of(rou3, Rational(-1, 2), 5, Rational(2, 3))]
        for k in points:
            for a, b in (("e_b1^3", "f_b1^3"), ("k[3w1]", "e_b1^3"), ("f_b1^3", "k[-3w1]")):
                product = zfr_evaluate(gens[a] * gens[b], k)
                assert product == zfr_evaluate(gens[a], k) * zfr_evaluate(gens[b], k)

    def test_evaluation_reads_coordinates(self, qg1, rou3):
        gens = dict(zfr_generators(qg1, rou3))
        assert not zfr_evaluate(gens["e_b1^3"], KPoint.of(rou3, 1, 0, 2))
        assert zfr_evaluate(gens["e_b1^3"], KPoint.of(rou3, 1, 1, 2))
        assert zfr_evaluate(gens["k[3w1]"], KPoint.of(rou3, 0, 0, 5)) == rou3.rational(5)

    def test_k_group_law(self, rou3):
        k = KPoint.of(rou3, 1, 2, 3)
        assert KPoint.of(rou3) * k == k == k * KPoint.of(rou3)


class TestHarishChandraCenter:
    def test_casimir(self, qg1):
        c = casimir(qg1)
        assert central_defects(c) == []
        image = hc_iota(c)
        assert dot_invariant(qg1, image)
        q = V**2
        scale = q / (q - ONE / q) ** 2
        expected = {mu: x * scale for mu, x in dot_orbit_sum(qg1, (-1,)).items()}
        assert image == expected

    @pytest.mark.parametrize("n", [1, 2])
    def test_m_lambda(self, qg1, n):
        m = m_lambda(qg1, (n,))
        image = hc_iota(m)
        assert image[WeightVec((-2 * n,))] == ONE
        assert image == dot_orbit_sum(qg1, (n,))
        assert dot_invariant(qg1, image)

    def test_non_central_elements(self, qg1):
        with pytest.raises(NotCentralError):
            hc_iota(qg1.e(0))
        assert not dot_invariant(qg1, {WeightVec((1,)): ONE})
        with pytest.raises(QrootsError):
            m_lambda(qg1, (-1,))


class TestVariety:
    def test_point_families(self, rou3):
        assert v_contains(trivial_point(rou3, 2, Rational(1, 2)))
        assert v_contains(open_cell_point(rou3, 3, Rational(1, 2), 2))
        assert not v_contains(off_variety_point(rou3, 1, 2, 3))
        assert all(v_contains(pt) for pt in sample_points(rou3, 6, seed=1))
        with pytest.raises(ValueError):
            open_cell_point(rou3, 0, 1, 1)
        with pytest.raises(ValueError):
            off_variety_point(rou3, 0, 1, 1)

    def test_sample_is_deterministic(self, rou3):
        assert sample_points(rou3, 4, seed=7) == sample_points(rou3, 4, seed=7)

    @pytest.mark.slow
    def test_omega_cuts_out_the_variety(self, qg1, rou3):
        classical = classical_component(qg1, qg1.datum.fundamental(0))
        for pt in sample_points(rou3, 4):
            for values in classical.values:
                result = omega_on_variety(qg1, values, 1, pt)
                assert result.routes_agree
                assert result.equal
        assert not v_contains_via_omega(qg1, off_variety_point(rou3, 1, 2, 3))

    def test_points_are_separated(self, qg1, rou3):
        assert separates_points(qg1, sample_points(rou3, 6))

    def test_unramified_torus(self, qg1, rou3):
        assert h_ur(qg1, rou3, t_mu(qg1, rou3, (-1,)))
        assert not h_ur(qg1, rou3, t_mu(qg1, rou3, (0,)))

    def test_translation_preserves_the_variety(self, qg1, rou3):
        pt = trivial_point(rou3, 2, Rational(1, 2))
        assert v_contains(xi_mu(qg1, pt, (1,)))


class TestPoisson:
    def test_bracket_is_antisymmetric(self, qg1, rou3):
        e_l, f_l = qg1.e_root(0, 3), qg1.f_root(0, 3)
        assert poisson_bracket(e_l, f_l, rou3) == -poisson_bracket(f_l, e_l, rou3)
        big_k = qg1.k(qg1.datum.fundamental(0) * 3)
        assert not poisson_bracket(big_k, big_k, rou3)

    def test_bracket_needs_matching_lifts(self, qg1, rou3):
        with pytest.raises(TypeError):
            poisson_bracket(qg1.e(0), from_u(qg1.f(0)), rou3)

    def test_dual_group_prediction(self, qg1, rou3):
        points = [pt.k for pt in sample_points(rou3, 2)]
        report = manin_prediction(qg1, rou3, points)
        assert report.matches
        assert report.e_f_constant is not None
        assert len(report.point_values) == 2

    def test_rank_on_the_variety(self, rou3):
        for pt in sample_points(rou3, 4):
            result = poisson_rank_at(pt)
            assert result.antisymmetric
            assert (result.rank, result.radical) == (4, 2)

    def test_rank_off_the_variety(self, rou3):
        with pytest.raises(NotOnVarietyError):
            poisson_rank_at(off_variety_point(rou3, 1, 2, 3))


class TestAzumaya:
    def test_matrix_algebra(self, rou3):
        algebra = matrix_algebra(2, rou3.domain)
        assert algebra.is_associative()
        assert algebra.has_unit()
        assert matrix_algebra_witness(algebra) == {
            "dim": 4,
            "n": 2,
            "center_dim": 1,
            "trace_form_rank": 4,
            "ok": True,
        }

    def test_trivial_fiber_is_a_matrix_algebra(self, qg1, rou3):
        fiber = fiber_at(qg1, rou3, trivial_point(rou3, Rational(1, 2), 2))
        assert fiber.dim == 9
        assert fiber.is_associative()
        assert fiber.has_unit()
        assert is_full_matrix_algebra(fiber)

    def test_no_fiber_off_the_variety(self, qg1, rou3):
        with pytest.raises(NotOnVarietyError):
            fiber_at(qg1, rou3, off_variety_point(rou3, 1, 2, 3))

    @pytest.mark.parametrize("mu", [(0,), (1,)])
    def test_translation_twist(self, qg1, rou3, mu):
        witness = xi_mu_twist(qg1, rou3, mu)
        assert witness["ok"], witness

    def test_counit_on_classical_subring(self, qg1, rou3):
        assert a1_counit_defects(qg1, rou3) == []

    @pytest.mark.slow
    def test_ze_centrality(self, qg1, rou3):
        assert ze_centrality_defects(qg1, rou3) == []


def test_lifted_generators_specialize_back(qg1, rou3):
    for _, z in zfr_generators(qg1, rou3):
        assert specialize_u(z.lift(), rou3) == z
