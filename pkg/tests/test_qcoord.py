"""
Tests for the quantum coordinate ring A, its classical subring and the A1 charts.
"""

import json
from collections import Counter
from itertools import product

import pytest

from qroots.errors import DegreeBoundError, QrootsError, UnsupportedTypeError
from qroots.qcoord import (
    a1_basis,
    a_component,
    act,
    chart,
    classical_component,
    hopf_pair,
    lift_a,
    localized_character,
    multiply_a,
    one,
    theta_vector,
    verma_dual_character,
)
from qroots.qreps import LEVEL_ZETA
from qroots.qscalars import ONE
from qroots.rootdata import WeightVec


@pytest.mark.parametrize("n, dim", [(0, 1), (1, 2), (2, 3)])
def test_component_dimensions(qg1, rou3, n, dim):
    assert a_component(qg1, (n,)).dim == dim
    assert a_component(qg1, (n,), LEVEL_ZETA, rou3).dim == dim


def test_component_needs_dominant_weight(qg1):
    with pytest.raises(QrootsError):
        a_component(qg1, (-1,))


def test_products_are_graded(qg1):
    varpi = a_component(qg1, (1,))
    target = a_component(qg1, (2,))
    for a, b in product(varpi.basis, repeat=2):
        assert target.coordinates(multiply_a(a, b)) is not None
    assert varpi.coordinates(multiply_a(varpi.basis[0], varpi.basis[1])) is None


def test_unit(qg1):
    unit = one(qg1)
    assert hopf_pair(unit, qg1.one()) == ONE
    for a in a_component(qg1, (1,)).basis:
        assert multiply_a(unit, a) == a == multiply_a(a, unit)


def test_action_is_a_left_action(qg1):
    gens = [qg1.e(0), qg1.f(0), qg1.ki(0)]
    for phi in a_component(qg1, (1,)).basis:
        for u, v in product(gens, repeat=2):
            assert act(u * v, phi) == act(u, act(v, phi))
            assert hopf_pair(act(u, phi), v) == hopf_pair(phi, v * u)


def test_theta_vector_weights(qg1):
    highest = theta_vector(qg1, (), (1,))
    lowest = theta_vector(qg1, (0,), (1,))
    assert highest != lowest
    comp = a_component(qg1, (1,))
    assert {comp.weights[comp.basis.index(x)] for x in (highest, lowest)} == {
        WeightVec((1,)),
        WeightVec((-1,)),
    }


def test_classical_subring(qg1, rou3):
    assert classical_component(qg1, WeightVec((1,))).dim == 2
    basis = a1_basis(qg1, rou3, (1,))
    assert len(basis) == 2
    target = a_component(qg1, (6,), LEVEL_ZETA, rou3)
    for a, b in product(basis, repeat=2):
        assert target.coordinates(multiply_a(a, b)) is not None


def test_lift_is_a_section(qg1, rou3):
    for phi in a_component(qg1, (2,), LEVEL_ZETA, rou3).basis:
        assert lift_a(phi).specialize(rou3) == phi


def test_localized_characters(qg1, rou3):
    base = a_component(qg1, (1,), LEVEL_ZETA, rou3)
    assert localized_character(qg1, rou3, (1,), 0) == dict(Counter(base.weights))
    shifted = localized_character(qg1, rou3, (1,), 1)
    assert sum(shifted.values()) == 3
    assert shifted == {w - WeightVec((1,)): n for w, n in localized_character(qg1, rou3, (2,), 0).items()}


def test_verma_dual_character(qg1):
    assert verma_dual_character(qg1, (1,), 2) == {
        WeightVec((1,)): 1,
        WeightVec((-1,)): 1,
        WeightVec((-3,)): 1,
    }


class TestCharts:
    """The A1 charts at ℓ = 3."""

    @pytest.mark.parametrize("word", [(), (0,)])
    def test_free_over_classical_chart(self, qg1, rou3, word):
        algebra = chart(qg1, rou3, word, 1)
        for k in (0, 1):
            witness = algebra.freeness_witness(k)
            assert witness["ok"], witness
            assert witness["dimension"] == 3 * (k + 1)
        assert algebra.central_witness()["ok"]
        assert algebra.z_ell_witness()["ok"]
        assert algebra.s_ell_factor()

    def test_presentation(self, qg1, rou3):
        algebra = chart(qg1, rou3)
        labels, table = algebra.structure_constants()
        s_bar, t_bar, _ = algebra.classical_coordinate()
        assert len(labels) == 6
        for a, b in product(range(3), repeat=2):
            c, j = (a + b, s_bar) if a + b < 3 else (a + b - 3, t_bar)
            assert [n for n, x in enumerate(table[a][b]) if x] == [2 * c + j]
        dumped = algebra.presentation()
        assert dumped["basis"] == labels
        assert json.loads(json.dumps(dumped))["structure_constants"][0][0][s_bar] != "0"

    def test_chart_at_s_is_carried_by_the_braid_action(self, qg1, rou3):
        algebra = chart(qg1, rou3, (0,))
        expected = theta_vector(qg1, (0,), qg1.datum.fundamental(0), LEVEL_ZETA, rou3)
        key = next(iter(expected.values))
        ratio = algebra.s.values[key] / expected.values[key]
        assert ratio
        assert algebra.s == expected.scale(ratio)

    def test_fractions_compare_across_levels(self, qg1, rou3):
        algebra = chart(qg1, rou3)
        assert algebra.unit() == algebra.element(algebra.s, 1)
        with pytest.raises(TypeError):
            hash(algebra.unit())

    def test_level_beyond_height_bound(self, qg1, rou3):
        with pytest.raises(DegreeBoundError):
            chart(qg1, rou3, (), 2)

    def test_rank_two_has_no_chart(self, qg2, rou5_a2):
        with pytest.raises(UnsupportedTypeError):
            chart(qg2, rou5_a2)
