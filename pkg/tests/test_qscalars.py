"""
Tests for Q(v) scalars, their text grammar and specialization at roots of unity.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qroots.errors import ConfigError, NotRegularError, ParseError
from qroots.qscalars import (
    ONE,
    V,
    RootOfUnity,
    at_one,
    format_scalar,
    parse_scalar,
    qbinom,
    qfact,
    qint,
    regular_at_root,
    root_of_unity,
    specialize,
    valuation,
    valuation_at_one,
)


def test_qint_is_balanced():
    assert qint(3, V) == V**2 + 1 + ONE / V**2
    assert qint(0, V) == 0
    assert qint(-2, V) == -qint(2, V)


def test_qbinom_classical_limit():
    assert qbinom(4, 2, V) == qint(4, V) * qint(3, V) / qint(2, V)
    assert at_one(qbinom(4, 2, V)) == 6
    assert at_one(qfact(3, V)) == 6
    assert qbinom(2, 3, V) == 0


def test_parse_scalar():
    assert parse_scalar("(v^2 - v^-2)/(v - v^-1)") == V + ONE / V
    assert parse_scalar("q", d=2) == V**2
    with pytest.raises(ParseError):
        parse_scalar("v + x")
    with pytest.raises(ParseError):
        parse_scalar("(v")


def test_format_scalar():
    assert format_scalar(ONE) == "1"
    assert format_scalar(V * 0) == "0"
    assert format_scalar(-ONE) == "-1"


class TestScalarText:
    """format_scalar is read back by parse_scalar."""

    @settings(max_examples=30, deadline=None)
    @given(
        num=st.lists(st.integers(-3, 3), min_size=1, max_size=4),
        shift=st.integers(-3, 3),
        n=st.integers(1, 4),
    )
    def test_text_round_trip(self, num, shift, n):
        f = sum((c * V ** (j + shift) for j, c in enumerate(num)), V * 0) / qint(n, V)
        assert parse_scalar(format_scalar(f)) == f


def test_root_of_unity_conditions():
    with pytest.raises(ConfigError, match=r"\(a\)"):
        RootOfUnity(4, 2)
    with pytest.raises(ConfigError, match=r"\(c\)"):
        RootOfUnity(3, 3, "A2")


def test_specialization(rou3):
    zp = rou3.zeta_prime
    assert zp**3 == rou3.domain.one
    assert rou3.zeta == zp**2
    assert not rou3.specialize(qint(3, V**2))
    assert rou3.specialize(qint(2, V**2))
    assert rou3.zpow(4) == zp
    assert rou3.format(zp) == "z"


def test_poles_and_valuation(rou3):
    f = V**3 - 1
    assert not rou3.regular(ONE / f)
    with pytest.raises(NotRegularError):
        rou3.specialize(ONE / f)
    assert rou3.valuation(f) == 1
    assert rou3.valuation(f**2 / (V - 1)) == 2
    assert valuation_at_one(f) == 1


def test_lift_is_a_section(rou3):
    a = rou3.zeta_prime + rou3.rational(2)
    assert rou3.specialize(rou3.lift(a)) == a


def test_module_level_helpers(rou3):
    assert root_of_unity(3, 2) is root_of_unity(3, 2)
    assert not regular_at_root(ONE / (V**3 - 1), rou3)
    assert regular_at_root(qint(2, V**2), rou3)
    assert specialize(qint(2, V**2), rou3) == rou3.specialize(qint(2, V**2))
    assert valuation(V**3 - 1, rou3) == 1
