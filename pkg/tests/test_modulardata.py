import itertools
import time
from fractions import Fraction

import pytest

from logcardy import catalog
from logcardy.linalg import Matrix
from logcardy.modulardata import (ModularData, Surd, annulus_ss, cardy_state, conjugation, hopf_link_matrix,
                                  quantum_dimensions, su2_level, validate_modular, verlinde)
from logcardy.rep import NonInteger
from logcardy.scalar import MissingRoot, approximate, conjugate

MODULAR = ["trivial", "semion", "fibonacci", "ising", "su2_1", "su2_2", "su2_3"]


def md(eid) -> ModularData:
    return catalog.load(eid)


@pytest.mark.parametrize("eid", MODULAR)
def test_catalog_data_validates(eid):
    assert validate_modular(md(eid)).passed


def test_su2_1_explicit():
    d = md("su2_1")
    f = d.field
    r = d.S.rows[0][0]
    assert r * r == Fraction(1, 2)
    assert [list(row) for row in d.S.rows] == [[r, r], [r, -r]]
    assert d.T[1] / d.T[0] == f.root_of_unity(f.order // 4)  # theta = i


def test_corrupted_s_fails():
    d = md("fibonacci")
    rows = [list(r) for r in d.S.rows]
    rows[1][1] = -rows[1][1]
    bad = ModularData(d.labels, Matrix(rows, d.field), d.T, d.field, d.central_charge, "bad")
    assert not validate_modular(bad).passed


@pytest.mark.parametrize("eid", MODULAR)
def test_verlinde_axioms(eid):
    d = md(eid)
    N = verlinde(d)
    r = range(d.rank)
    C = d.C
    for j, k in itertools.product(r, repeat=2):
        assert N[0][j][k] == int(j == k)
    for i, j, k in itertools.product(r, repeat=3):
        assert N[i][j][k] == N[j][i][k] == N[C[i]][C[j]][C[k]]
    for i, j, k, l in itertools.product(r, repeat=4):
        assert sum(N[i][j][m] * N[m][k][l] for m in r) == sum(N[j][k][m] * N[i][m][l] for m in r)


def test_verlinde_examples():
    assert verlinde(md("fibonacci"))[1][1] == [1, 1]
    assert verlinde(md("ising"))[2][2] == [1, 1, 0]
    assert verlinde(md("su2_2"))[1][1] == [1, 0, 1]


def test_verlinde_rejects_non_integers():
    d = md("fibonacci")
    f = d.field
    rows = [list(r) for r in d.S.rows]
    rows[1][1] = -rows[1][1]
    S = Matrix(rows, f)
    with pytest.raises(NonInteger):
        verlinde(ModularData(d.labels, d.S.scale(f(Fraction(1, 2))), d.T, f))
    with pytest.raises(NonInteger):
        verlinde(ModularData(d.labels, S, d.T, f))


@pytest.mark.parametrize("eid", MODULAR)
def test_cardy_coefficients(eid):
    d = md(eid)
    for a in range(d.rank):
        B = cardy_state(d, a)
        for i, c in enumerate(B):
            assert c.square() * d.S.rows[i][0] == d.S.rows[i][a] ** 2
            s = complex(*approximate(d.S.rows[i][a])) / complex(*approximate(d.S.rows[i][0])) ** 0.5
            assert abs(c.numeric() - s) < 1e-9
    vac = cardy_state(d, 0)
    assert all(c.coeff == 1 for c in vac)


def test_su2_1_cardy_values():
    d = md("su2_1")
    B = cardy_state(d, 1)
    assert [round(c.numeric().real, 12) for c in B] == [round(2 ** -0.25, 12), round(-2 ** -0.25, 12)]
    assert str(B[1]).startswith("(-1)*sqrt(")


def test_strict_cardy_state():
    assert cardy_state(md("trivial"), 0, strict=True) == [1]
    with pytest.raises(MissingRoot):
        cardy_state(md("su2_1"), 1, strict=True)


@pytest.mark.parametrize("eid", MODULAR)
def test_annulus_is_verlinde_row(eid):
    d = md(eid)
    N = verlinde(d)
    for a, b in itertools.product(range(d.rank), repeat=2):
        assert annulus_ss(d, a, b) == N[d.C[a]][b]
    assert annulus_ss(d, 0, 0) == [1] + [0] * (d.rank - 1)


def test_annulus_examples():
    assert annulus_ss(md("fibonacci"), "τ", "τ") == [1, 1]
    assert annulus_ss(md("ising"), "σ", "σ") == [1, 1, 0]


@pytest.mark.parametrize("eid", ["su2_1", "su2_2", "fibonacci", "ising"])
def test_cardy_and_annulus_are_fast(eid):
    t = time.perf_counter()
    d = md(eid)
    for a, b in itertools.product(range(d.rank), repeat=2):
        annulus_ss(d, a, b)
    assert time.perf_counter() - t < 1.0


def test_hopf_link_and_dimensions():
    d = md("fibonacci")
    G = hopf_link_matrix(d)
    assert G.rows[0][0] == 1
    dt = quantum_dimensions(d)[1]
    assert dt * dt == 1 + dt
    assert quantum_dimensions(md("ising"))[2] ** 2 == 2


def test_surd_arithmetic():
    d = md("su2_1")
    s = Surd(d.field(3), d.S.rows[0][0])
    assert s * s == 9 * d.S.rows[0][0]
    assert s.conjugate() == s
    assert (Surd(d.field(2), d.field(4)).simplify(d.field)) == 4


def test_conjugation_permutation():
    assert conjugation(md("su2_3")) == (0, 1, 2, 3)
    assert conjugation(md("semion")) == (0, 1)


def test_su2_builder_matches_catalog():
    for k in (1, 2, 3):
        built = su2_level(k)
        stored = md(f"su2_{k}")
        assert built.S == stored.S and built.T == stored.T
