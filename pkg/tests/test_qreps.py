"""
Tests for weight modules: simple modules, Weyl modules at ζ, duals, tensor
products and the braid group action on modules.
"""

import pytest

from qroots.errors import QrootsError
from qroots.linalg import is_zero_matrix, mat_sub, matmul
from qroots.qreps import (
    LEVEL_ZETA,
    braid_T_matrix,
    braid_T_module,
    chi_independence_witness,
    delta_T_defect,
    direct_sum,
    double_dual_isomorphism,
    intertwining_defect,
    lattice_and_weyl,
    lattice_split_witness,
    pullback_braid_defect,
    simple_fd,
    star_dual,
    tensor,
    verma,
    weight_map_defect,
)
from qroots.qscalars import FIELD
from qroots.rootdata import WeightVec


@pytest.mark.parametrize("n, dim", [(0, 1), (1, 2), (2, 3), (3, 4)])
def test_a1_simple_dimensions(qg1, n, dim):
    module = simple_fd(qg1, (n,))
    assert module.dim == dim
    assert module.relation_defects() == []


def test_a1_character(qg1):
    module = simple_fd(qg1, (2,))
    assert module.character() == {WeightVec((2,)): 1, WeightVec((0,)): 1, WeightVec((-2,)): 1}


def test_a2_simple_dimensions(qg2, a2):
    assert simple_fd(qg2, a2.fundamental(0)).dim == 3
    adjoint = simple_fd(qg2, a2.rho)
    assert adjoint.dim == 8
    assert adjoint.character()[a2.zero()] == 2


def test_simple_needs_dominant_weight(qg1):
    with pytest.raises(QrootsError):
        simple_fd(qg1, (-1,))


def test_verma_window(qg1):
    module = verma(qg1, (1,), depth=3)
    assert module.dim == 4
    assert module.weights == tuple(WeightVec((w,)) for w in (1, -1, -3, -5))
    assert module.highest == WeightVec((1,))
    assert not any(row[0] for row in module.e[0])
    with pytest.raises(ValueError):
        verma(qg1, (1,), depth=-1)


def test_star_dual_and_double_dual(qg1):
    module = simple_fd(qg1, (1,))
    dual = star_dual(module)
    assert dual.relation_defects() == []
    double = star_dual(dual)
    psi = double_dual_isomorphism(module)
    assert is_zero_matrix(mat_sub(matmul(psi, double.e[0], FIELD), matmul(module.e[0], psi, FIELD)))
    assert is_zero_matrix(mat_sub(matmul(psi, double.f[0], FIELD), matmul(module.f[0], psi, FIELD)))


def test_tensor_product(qg1):
    module = simple_fd(qg1, (1,))
    both = tensor(module, module)
    assert both.dim == 4
    assert both.character() == {WeightVec((2,)): 1, WeightVec((0,)): 2, WeightVec((-2,)): 1}
    assert both.relation_defects() == []


def test_direct_sum(qg1):
    total = direct_sum(simple_fd(qg1, (1,)), simple_fd(qg1, (2,)))
    assert total.dim == 5
    assert total.relation_defects() == []


class TestBraidOnModules:
    """T_i on simple modules."""

    @pytest.mark.parametrize("sign", [1, -1])
    def test_product_forms_agree(self, qg1, sign):
        module = simple_fd(qg1, (2,))
        one = braid_T_matrix(module, 0, form=1, sign=sign)
        two = braid_T_matrix(module, 0, form=2, sign=sign)
        assert is_zero_matrix(mat_sub(one, two))

    def test_vector_form(self, qg1):
        module = simple_fd(qg1, (1,))
        v = module.basis_vector(0)
        w = braid_T_module(0, module, v)
        support = [j for j, c in enumerate(w) if c]
        assert [module.weights[j] for j in support] == [qg1.datum.reflect(0, module.weights[0])]
        assert braid_T_module(0, module, w, sign=-1) == v

    def test_unknown_form(self, qg1):
        with pytest.raises(ValueError):
            braid_T_matrix(simple_fd(qg1, (1,)), 0, form=3)

    def test_weights_and_intertwining(self, qg1):
        module = simple_fd(qg1, (2,))
        assert not weight_map_defect(module, 0)
        for u in (qg1.e(0), qg1.f(0), qg1.ki(0)):
            assert not intertwining_defect(module, 0, u)

    def test_coproduct_of_braid(self, qg1):
        module = simple_fd(qg1, (1,))
        assert is_zero_matrix(delta_T_defect(module, module, 0))

    def test_frobenius_pullback(self, qg1, rou3):
        assert not pullback_braid_defect(qg1, (1,), rou3, 0)


def test_weyl_module_at_root_of_unity(qg1, rou3):
    lattice, weyl = lattice_and_weyl(qg1, (3,), rou3)
    assert weyl.level == LEVEL_ZETA
    assert weyl.dim == 4
    assert weyl.relation_defects() == []
    assert weyl.divided_matrix("e", 0, 3)
    assert lattice_split_witness(qg1, lattice, rou3)["ok"]


def test_chi_independence(qg1, rou3):
    witness = chi_independence_witness(qg1, rou3, (0,), (1,))
    assert set(witness) == {"index", "t", "chi_lambda", "chi_mu", "element"}
    assert witness["index"] == 1
    assert witness["chi_lambda"] != witness["chi_mu"]
    # ϖ and 4ϖ agree on every K_i^{±1} at ℓ = 3; a divided binomial separates them
    assert chi_independence_witness(qg1, rou3, (1,), (4,))["t"] > 0
    with pytest.raises(ValueError):
        chi_independence_witness(qg1, rou3, (1,), (1,))
