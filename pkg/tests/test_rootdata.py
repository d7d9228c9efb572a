"""
Tests for root data, weights and Weyl group words.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qroots.errors import NonReducedWordError, UnsupportedTypeError
from qroots.rootdata import WeightVec, build_root_datum

A2 = build_root_datum("A2")
weights_a2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4)).map(WeightVec)


def test_a1_basics(a1):
    assert a1.rank == 1
    assert a1.index == 2
    assert a1.w0_word == (0,)
    assert a1.positive_roots == (WeightVec((2,)),)
    assert a1.rho == WeightVec((1,))
    assert a1.qi_vexp(0) == 2
    assert a1.form(a1.alpha(0), a1.alpha(0)) == 2


def test_a2_weyl_group(a2):
    assert a2.index == 3
    assert len(a2.positive_roots) == 3
    assert len(a2.weyl_elements) == 6
    assert set(a2.reduced_words_of_w0) == {(0, 1, 0), (1, 0, 1)}
    assert not a2.is_reduced((0, 0))
    assert a2.same_element((0, 1, 0), (1, 0, 1))


def test_betas_follow_the_word(a2):
    assert [a2.alpha_coords(b) for b in a2.betas] == [(1, 0), (1, 1), (0, 1)]
    other = build_root_datum("A2", (1, 0, 1))
    assert [other.alpha_coords(b) for b in other.betas] == [(0, 1), (1, 1), (1, 0)]


def test_pbw_exponents(a2):
    gamma = a2.from_alpha_coords((1, 1))
    assert set(a2.pbw_exponents(gamma)) == {(1, 0, 1), (0, 1, 0)}
    assert a2.pbw_exponents(a2.from_alpha_coords((-1, 0))) == []


def test_weights_of_height(a2):
    assert {a2.alpha_coords(w) for w in a2.weights_of_height(2)} == {(0, 2), (1, 1), (2, 0)}


def test_dot_twist_a1(a1):
    exponent, image = a1.dot_twist((0,), a1.alpha(0))
    assert image == WeightVec((-2,))
    assert exponent == -2


def test_info_is_one_based(a1):
    info = a1.info()
    assert info.type == "A1"
    assert info.w0_word == [1]
    assert info.positive_roots == [[1]]


def test_rejects_non_reduced_word():
    with pytest.raises(NonReducedWordError):
        build_root_datum("A2", (0, 0, 1))
    with pytest.raises(NonReducedWordError):
        build_root_datum("A2", (0, 2, 0))


def test_rejects_unknown_type():
    with pytest.raises(UnsupportedTypeError):
        build_root_datum("G2")


class TestWeylAction:
    """Property tests for the Weyl group action on A2 weights."""

    @given(lam=weights_a2, i=st.sampled_from([0, 1]))
    def test_reflection_is_an_involution(self, lam, i):
        assert A2.reflect(i, A2.reflect(i, lam)) == lam

    @given(lam=weights_a2)
    def test_w0_is_an_involution(self, lam):
        assert A2.act(A2.w0_word, A2.act(A2.w0_word, lam)) == lam

    @given(lam=weights_a2, mu=weights_a2, i=st.sampled_from([0, 1]))
    def test_form_is_invariant(self, lam, mu, i):
        assert A2.form(A2.reflect(i, lam), A2.reflect(i, mu)) == A2.form(lam, mu)

    @given(lam=weights_a2, mu=weights_a2)
    def test_form_is_symmetric(self, lam, mu):
        assert A2.vexp(lam, mu) == A2.vexp(mu, lam)

    @settings(max_examples=25)
    @given(coords=st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
    def test_alpha_coordinates(self, coords):
        lam = A2.from_alpha_coords(coords)
        assert A2.in_root_lattice(lam)
        assert A2.alpha_coords(lam) == coords
        assert A2.ht(lam) == sum(coords)
