import random

import pytest
from hypothesis import given, strategies as st

from logcardy.catalog.construct import (cyclic_characters, cyclic_grouplikes, double_grouplikes,
                                        double_r_matrix, group_algebra, group_r_matrix, taft)
from logcardy.hopf import (Algebra, HopfAlgebra, NormalizationFailure, RibbonStructure, center,
                           check_factorizable, check_unimodular, class_functions, drinfeld_map,
                           drinfeld_matrix, frobenius_map, frobenius_matrix, inverse_antipode_pullback,
                           left_cointegral, left_integral, modular_element, monodromy, normalize_pair,
                           reynolds_ideal, ribbon_candidates, right_cointegral, s_on_center,
                           s_on_functional, transported_inverse_antipode, validate_hopf, validate_ribbon)
from logcardy.linalg import Matrix, Tensor3, rank
from logcardy.rep import qcharacter
from logcardy.scalar import QQ, Field


def pair(H, f, x):
    return sum((a * b for a, b in zip(f, x)), H.field.zero)


def trivially_braided_z2():
    H = group_algebra(2, QQ)
    H.braiding = RibbonStructure.build(H, group_r_matrix(2, QQ, 0), ribbon=H.unit)
    return H


def broken_antipode(H):
    zero = Matrix.zeros(H.dim, H.dim, H.field)
    return HopfAlgebra(H.mult, H.unit, H.comult, H.counit, zero, H.basis_labels, H.field, name="broken")


def is_left_integral(H, Lam):
    return all(H.product(H.basis(i), Lam) == tuple(H.counit[i] * x for x in Lam) for i in range(H.dim))


# validation

def test_group_algebra_passes():
    assert validate_hopf(group_algebra(2, QQ)).passed


def test_taft_passes(taft2):
    assert validate_hopf(taft2).passed
    assert validate_hopf(taft(2, Field(4))).passed


def test_doubles_from_construction_pass():
    from logcardy.catalog.construct import drinfeld_double
    assert validate_hopf(drinfeld_double(group_algebra(2, QQ))).passed
    assert validate_hopf(drinfeld_double(taft(2, Field(4)))).passed


def test_zero_antipode_fails_with_witness():
    rep = validate_hopf(broken_antipode(group_algebra(2, QQ)))
    assert not rep.passed
    bad = rep["antipode"]
    assert not bad.passed and bad.witness is not None
    assert [c.name for c in rep.failures()] == ["antipode", "antipode invertible"]


def test_placeholder_braiding_is_rejected(taft2):
    rep = validate_ribbon(taft2)
    assert not rep["R intertwines coproduct"].passed


# integrals

def test_integral_of_z2_is_symmetric_sum():
    H = group_algebra(2, QQ)
    Lam = left_integral(H)
    assert Lam[0] == Lam[1] != 0


@pytest.mark.parametrize("eid", ["taft2", "double_z2", "double_taft2", "double_taft3"])
def test_integral_space_is_one_dimensional(eid):
    from logcardy import catalog
    H = catalog.load(eid)
    Lam = left_integral(H)
    assert any(Lam) and is_left_integral(H, Lam)
    lam = left_cointegral(H)
    assert any(lam) and any(right_cointegral(H))


def test_cointegral_of_z2_is_delta_e():
    H = group_algebra(2, QQ)
    lam = left_cointegral(H)
    assert lam[0] != 0 and lam[1] == 0


@pytest.mark.parametrize("eid", ["double_z2", "double_taft2", "double_taft3"])
def test_cointegral_pairs_nondegenerately(eid):
    from logcardy import catalog
    H = catalog.load(eid)
    assert pair(H, left_cointegral(H), left_integral(H)) != 0


def test_unimodularity(taft2, dt2, dt3):
    assert check_unimodular(group_algebra(2, QQ))
    assert not check_unimodular(taft2)
    assert check_unimodular(dt2[0]) and check_unimodular(dt3[0])


@pytest.mark.parametrize("eid", ["double_z2", "double_taft2"])
def test_unimodular_integral_is_antipode_invariant(eid):
    from logcardy import catalog
    H = catalog.load(eid)
    Lam = left_integral(H)
    assert H.apply_antipode(Lam) == Lam


# normalization

def test_non_factorizable_normalization_fails():
    with pytest.raises(NormalizationFailure):
        normalize_pair(trivially_braided_z2())


@pytest.mark.parametrize("eid,kappa", [("double_z2", 1), ("double_taft2", -1), ("double_taft3", 1)])
def test_normalize_pair(eid, kappa):
    from logcardy import catalog
    H = catalog.load(eid)
    p = normalize_pair(H)
    assert pair(H, p.cointegral, p.integral) == 1
    assert p.kappa == kappa
    for z in center(H):
        assert s_on_center(H, None, p.cointegral, s_on_center(H, None, p.cointegral, z)) == \
            H.apply_antipode(z, inverse=True)


# monodromy and the Drinfeld map

def test_triangular_monodromy_is_trivial():
    H = trivially_braided_z2()
    Q = monodromy(H)
    assert H.pairs(Q) == H.one2()


def test_double_z2_drinfeld_rank(dz2):
    assert rank(drinfeld_matrix(dz2[0])) == 4


def test_monodromy_invertible_on_dt2(dt2):
    H = dt2[0]
    Q = H.pairs(monodromy(H))
    n = H.dim
    cols = [H.vec2(H._mul2(Q, {(i, j): H.field.one})) for i in range(n) for j in range(n)]
    assert rank(Matrix.from_columns(cols, H.field)) == n * n


@pytest.mark.parametrize("eid", ["double_z2", "double_taft2", "double_taft3"])
def test_counit_maps_to_one(eid):
    from logcardy import catalog
    H = catalog.load(eid)
    assert drinfeld_map(H, None, H.counit) == H.unit


@pytest.mark.parametrize("eid", ["double_z2", "double_taft2", "double_taft3"])
def test_class_functions_map_into_center(eid):
    from logcardy import catalog
    H = catalog.load(eid)
    for f in class_functions(H):
        assert H.is_central(drinfeld_map(H, None, f))


def test_factorizability(taft2, dz2, dt2, dt3):
    assert not check_factorizable(trivially_braided_z2())
    assert not check_factorizable(taft2)
    assert check_factorizable(dz2[0])
    assert rank(drinfeld_matrix(dt2[0])) == 16
    assert check_factorizable(dt3[0])


# Frobenius map

def test_frobenius_of_unit_is_cointegral(dt2):
    H = dt2[0]
    lam = left_cointegral(H)
    assert frobenius_map(H, lam, H.unit) == lam


def test_frobenius_bijective(dz2):
    H = dz2[0]
    assert rank(frobenius_matrix(H, left_cointegral(H))) == 4


vectors16 = st.lists(st.integers(-2, 2), min_size=16, max_size=16)


@given(vectors16, vectors16)
def test_nakayama_on_random_elements(a, b):
    from logcardy import catalog
    H = catalog.load("double_taft2")
    f = H.field
    a, b = tuple(map(f, a)), tuple(map(f, b))
    lam = left_cointegral(H)
    s2a = H.apply_antipode(H.apply_antipode(a))
    assert pair(H, lam, H.product(a, b)) == pair(H, lam, H.product(b, s2a))


# invariant subspaces

def test_center_dimensions(dz2):
    assert len(center(group_algebra(2, QQ))) == 2
    assert len(center(dz2[0])) == 4
    # M_2(Q) with matrix units e_ij at index 2i+j
    data = {}
    for i in range(2):
        for j in range(2):
            for k in range(2):
                data[(2 * i + j, 2 * j + k, 2 * i + k)] = QQ.one
    M2 = Algebra(Tensor3((4, 4, 4), data, QQ), (1, 0, 0, 1))
    assert len(center(M2)) == 1


@pytest.mark.parametrize("eid", ["double_z2", "double_taft2", "double_taft3"])
def test_class_functions_match_center_dimension(eid):
    from logcardy import catalog
    H = catalog.load(eid)
    assert len(class_functions(H)) == len(center(H))


def test_class_functions_z2():
    assert len(class_functions(group_algebra(2, QQ))) == 2


def test_qcharacters_are_class_functions(dt2):
    H, simples = dt2
    from logcardy.linalg import coordinates
    C = class_functions(H)
    for S in simples:
        assert coordinates(C, qcharacter(S), H.field) is not None


def test_reynolds_ideal(dz2, dt2):
    H, S = dz2
    assert len(reynolds_ideal(H, None, S)) == len(center(H)) == 4
    H, S = dt2
    R = reynolds_ideal(H, None, S)
    assert len(R) == len(S) == 4 < len(center(H))
    assert reynolds_ideal(H, None, []) == []


@pytest.mark.parametrize("eid", ["double_z2", "double_taft2", "double_taft3"])
def test_s_squared_on_class_functions(eid):
    from logcardy import catalog
    H = catalog.load(eid)
    lam = normalize_pair(H).cointegral
    b = modular_element(H, lam)
    for f in class_functions(H):
        ss = s_on_functional(H, None, lam, s_on_functional(H, None, lam, f))
        assert ss == transported_inverse_antipode(H, lam, f, b)
        if b == H.unit:
            assert ss == inverse_antipode_pullback(H, f)


# ribbon search

def test_ribbon_candidates():
    from logcardy.catalog.construct import drinfeld_double
    Z2 = group_algebra(2, QQ)
    D = drinfeld_double(Z2)
    G = double_grouplikes(Z2, cyclic_characters(Z2, 1, 2), cyclic_grouplikes(Z2, 1, 2))
    assert len(ribbon_candidates(D, double_r_matrix(Z2), G)) == 4
    T = taft(2, Field(4))
    D = drinfeld_double(T)
    G = double_grouplikes(T, cyclic_characters(T, 2, 2), cyclic_grouplikes(T, 2, 2))
    assert ribbon_candidates(D, double_r_matrix(T), G) == []
