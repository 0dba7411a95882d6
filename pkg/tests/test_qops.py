import pytest

from krystal.errors import ModelError
from krystal.laurent import LaurentPoly, q_int
from krystal.qops import (IdentityResult, QMatrix, QModule, a2_adjoint, a2_dual, a2_vector,
                          braid_S, check_braid_vectors, check_exp_identities, check_relations,
                          check_T, exp_q, rank_one_module, run_all, tensor)


def test_rank_one_actions():
    m = rank_one_module(3)
    assert m.dim == 4
    assert m.F[1][1, 0] == q_int(1) and m.F[1][2, 1] == q_int(2)
    assert m.E[1][0, 1] == q_int(3)


def test_module_dimensions():
    assert a2_vector().dim == 3 and a2_dual().dim == 3
    assert tensor(a2_vector(), a2_dual()).dim == 9
    assert a2_adjoint().dim == 8


def test_exp_of_square_zero():
    x = QMatrix([[0, 1], [0, 0]])
    assert exp_q(x, 1) == QMatrix.identity(2) + x


@pytest.mark.parametrize("l", range(7))
def test_braid_vectors(l):
    assert all(r.ok for r in check_braid_vectors(l))
    assert all(r.ok for r in check_exp_identities(l))


@pytest.mark.parametrize("build", [a2_vector, a2_dual, a2_adjoint])
def test_a2_modules_satisfy_relations(build):
    m = build()
    assert all(r.ok for r in check_relations(m))
    S = [braid_S(m, i) for i in m.colors]
    assert S[0] * S[1] * S[0] == S[1] * S[0] * S[1]
    assert all(r.ok for r in check_T(m))


def test_broken_module_is_detected():
    m = a2_vector()
    bad_e = dict(m.E)
    bad_e[1] = m.E[1].scale(LaurentPoly.mono(1))
    broken = QModule("broken", m.cartan, m.weights, bad_e, m.F)
    assert not all(r.ok for r in check_relations(broken))
    with pytest.raises(ModelError):
        braid_S(broken, 1)


def test_run_all_is_green_and_serializable():
    results = run_all(lmax=3)
    assert results and all(isinstance(r, IdentityResult) for r in results)
    bad = [r.to_json() for r in results if not r.ok]
    assert bad == []
