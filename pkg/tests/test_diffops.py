"""
Tests for the algebra E of quantum differential operators, Ω and the braid ⋆-action.
"""

import pytest

from qroots.diffops import (
    braid_star,
    braid_star_ideal_witness,
    dprime_reduce,
    e_one,
    from_a,
    from_u,
    lattice_element,
    local_identity_check,
    multiply_e,
    omega,
    omega_identity_defects,
    operator_relation_defects,
    rphi_agreement,
    zeta_kernel_witness,
)
from qroots.errors import QrootsError
from qroots.qcoord import a_component, theta_vector
from qroots.qreps import LEVEL_ZETA


@pytest.fixture(scope="module")
def varpi_basis(qg1):
    return a_component(qg1, (1,)).basis


def test_unit_and_lattice(qg1, varpi_basis):
    unit = e_one(qg1)
    a = from_a(varpi_basis[0])
    assert multiply_e(unit, a) == a == multiply_e(a, unit)
    assert multiply_e(lattice_element(qg1, (1,)), lattice_element(qg1, (-3,))) == lattice_element(
        qg1, (-2,)
    )


def test_u_embeds_multiplicatively(qg1):
    e, f = qg1.e(0), qg1.f(0)
    assert multiply_e(from_u(e), from_u(f)) == from_u(e * f)


@pytest.mark.parametrize("which", [1, 2])
def test_omega_identities(qg1, varpi_basis, which):
    for phi in varpi_basis:
        for psi in varpi_basis:
            for u in (qg1.e(0), qg1.f(0), qg1.ki(0)):
                assert omega_identity_defects(phi, psi, u, which) == []


def test_omega_arguments(qg1, varpi_basis):
    with pytest.raises(ValueError):
        omega(varpi_basis[0], 3)
    with pytest.raises(QrootsError):
        omega(varpi_basis[0] + varpi_basis[1])


def test_right_multiplication_is_omega(qg1, varpi_basis):
    window = (qg1.datum.zero(), qg1.datum.fundamental(0))
    for phi in varpi_basis:
        witness = rphi_agreement(phi, window)
        assert witness["ok"], witness
        assert witness["window_dim"] == 3


def test_operator_relations(qg1, varpi_basis):
    window = (qg1.datum.zero(), qg1.datum.fundamental(0))
    for phi in varpi_basis:
        for u in (qg1.e(0), qg1.f(0)):
            assert operator_relation_defects(u, phi, (1,), window) == []


def test_omega_lies_in_its_ideal(varpi_basis):
    for phi in varpi_basis:
        assert not dprime_reduce(omega(phi))
    assert dprime_reduce(from_a(varpi_basis[0]))


def test_zeta_kernel(qg1, rou3):
    window = (qg1.datum.zero(), qg1.datum.fundamental(0))
    witness = zeta_kernel_witness(qg1, rou3, window)
    assert witness == {"nonzero_in_dprime": True, "acts_by_zero": True, "ok": True}


class TestBraidStar:
    """T_i⋆ on E for A1."""

    def test_inverse(self, qg1, varpi_basis):
        for a in (from_a(varpi_basis[0]), from_u(qg1.e(0)), lattice_element(qg1, (1,))):
            assert braid_star(0, -1, braid_star(0, 1, a)) == a

    def test_sign_is_checked(self, qg1):
        with pytest.raises(ValueError):
            braid_star(0, 2, e_one(qg1))

    @pytest.mark.slow
    @pytest.mark.parametrize("sign", [1, -1])
    def test_omega_ideal_is_stable(self, varpi_basis, sign):
        for phi in varpi_basis:
            witness = braid_star_ideal_witness(0, sign, phi)
            assert witness["ok"], witness


@pytest.mark.slow
def test_local_identity(qg1, rou3):
    varpi = qg1.datum.fundamental(0)
    s = theta_vector(qg1, (), varpi, LEVEL_ZETA, rou3)
    comp = a_component(qg1, varpi, LEVEL_ZETA, rou3)
    (j,) = comp.weight_basis(-varpi)
    assert local_identity_check(varpi, qg1.datum.alpha(0), comp.basis[j], s)
    assert local_identity_check(varpi, qg1.datum.zero(), s, s)
