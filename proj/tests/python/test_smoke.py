import cmath
import math

import pytest

import weilzeta_py as wz


def test_discriminant_forms():
    a2 = wz.builtin("a2")
    assert a2.order == 3
    assert a2.level == 3
    assert a2.milgram_holds()
    g = a2.gauss_sum()
    assert abs(g - math.sqrt(3) * cmath.exp(2j * math.pi * a2.signature_mod_8 / 8)) < 1e-12
    e8 = wz.DiscriminantForm([[2 if i == j else 0 for j in range(2)] for i in range(2)])
    assert e8.order == 4


def test_odd_diagonal_rejected():
    with pytest.raises(wz.Error):
        wz.DiscriminantForm([[1, 0], [0, 2]])


def test_weil_relations():
    a2 = wz.builtin("a2")
    S = wz.weil_matrix(a2, 1, "S")
    ST = wz.weil_matrix(a2, 1, "S,T")
    n = len(S)

    def mul(x, y):
        return [[sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    s2 = mul(S, S)
    st3 = mul(mul(ST, ST), ST)
    assert all(abs(s2[i][j] - st3[i][j]) < 1e-12 for i in range(n) for j in range(n))
    assert len(wz.weil_matrix(a2, 2, "S")) == 9


def test_cosets_and_tau():
    assert [wz.coset_count("hecke", d) for d in (1, 2, 3)] == [1, 6, 12]
    assert wz.ramanujan_tau(5)[1:] == [1, -24, 252, -1472, 4830]


def test_eisenstein_and_delta():
    e8 = wz.builtin("e8")
    e = wz.eisenstein1(e8, 12, 0, 1j, 100)
    q = math.exp(-2 * math.pi)
    sigma11 = lambda n: sum(d**11 for d in range(1, n + 1) if n % d == 0)
    e12 = 1 + 65520 / 691 * sum(sigma11(n) * q**n for n in range(1, 30))
    assert abs(e[0] - e12) < 1e-6
    assert abs(wz.delta_eigenvalue(2) + 0.609375) < 1e-10
    assert abs(wz.delta_value(1j) - 0.0017853698506421) < 1e-12
    assert wz.pullback_residual(e8, 12, 0, 1.5j, 1.5j, 8) < 1e-2


def test_zeta_constants():
    assert abs(wz.C_const(12, 0) - math.pi / 1024) < 1e-15
    assert abs(wz.standard_zeta({1: 1.0}, 2) - 1) < 1e-15
    agree = wz.local_factor_agreement(wz.builtin("a2a2"), 3)
    assert agree["(id,I0,0)"]
