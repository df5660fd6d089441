"""Acceptance criteria 1-8; each test records one pass/fail line in the terminal summary."""
import itertools
import time

import pytest

from logcardy import catalog
from logcardy.cardy import (convolve, hopf_link, hopf_link_matrix, in_state, modular_data_from_hopf,
                            out_state, s_transform, sew, t_transform)
from logcardy.cli import main
from logcardy.hopf import (center, class_functions, drinfeld_map,
                           inverse_antipode_pullback, modular_element, normalize_pair, s_on_center,
                           s_on_functional, transported_inverse_antipode)
from logcardy.linalg import rank
from logcardy.modulardata import annulus_ss, cardy_state, validate_modular, verlinde
from logcardy.modulardata import hopf_link_matrix as md_hopf_link
from logcardy.rep import (NotInSpan, character_rank, composition_factors, decompose_K0, fusion_table,
                          projective_summands, qcharacter, regular, submodule, tensor)

FACTORIZABLE = ["double_z2", "double_taft2", "double_taft3"]


def entry(eid):
    return catalog.load(eid), catalog.simples(eid)


def pair(H, f, x):
    return sum((a * b for a, b in zip(f, x)), H.field.zero)


def test_criterion_1_cardy_formula(criterion):
    with criterion(1, "Cardy coefficients exact, annulus_ss = N_{C(a)b}, < 1 s per dataset") as c:
        for eid in ["su2_1", "su2_2", "fibonacci", "ising"]:
            md = catalog.load(eid)
            t = time.perf_counter()
            N = verlinde(md)
            S = md.S.rows
            for a in range(md.rank):
                for i, coeff in enumerate(cardy_state(md, a)):
                    # exact: coeff^2 = S_ia^2 / S_i0, and the radicand is S_i0 itself
                    assert coeff.radicand == S[i][0]
                    assert coeff.square() * S[i][0] == S[i][a] ** 2
            for a, b in itertools.product(range(md.rank), repeat=2):
                assert annulus_ss(md, a, b) == N[md.C[a]][b]
            dt = time.perf_counter() - t
            assert dt < 1.0, f"{eid} took {dt:.2f} s"
            c.note(f"{eid} {dt * 1000:.0f} ms")


@pytest.mark.parametrize("eid,limit", [("double_z2", 60), ("double_taft2", 60), ("double_taft3", 120)])
def test_criterion_2_annulus_is_fusion(criterion, eid, limit):
    with criterion(2, "sew(out,out).k0 = composition_factors(tensor) on every simple pair") as c:
        H, S = entry(eid)
        t = time.perf_counter()
        for M, N in itertools.product(S, repeat=2):
            k = sew(out_state(M), out_state(N), S).k0
            assert k == composition_factors(tensor(M, N), S), (M.label, N.label)
            assert all(isinstance(x, int) and x >= 0 for x in k.coeffs)
        dt = time.perf_counter() - t
        assert dt < limit
        c.note(f"{eid} {len(S) ** 2} pairs in {dt:.1f} s")


def _conv(H, a, b):
    from logcardy.cardy import _convolve
    return _convolve(H, a, b)


@pytest.mark.parametrize("eid", FACTORIZABLE)
def test_criterion_3_normalization_chain(criterion, eid):
    with criterion(3, "lambda(Lambda) = 1, S^2 = s^-1, Nakayama, Drinfeld map an algebra map into Z(H)") as c:
        H, _ = entry(eid)
        p = normalize_pair(H)
        lam, Lam = p.cointegral, p.integral
        assert pair(H, lam, Lam) == 1
        # S^2 = s^-1: literally on the center; on class functions via the Frobenius transport,
        # which is literally f o s^-1 whenever the modular element is 1
        for z in center(H):
            assert s_on_center(H, None, lam, s_on_center(H, None, lam, z)) == H.apply_antipode(z, inverse=True)
        b = modular_element(H, lam)
        C = class_functions(H)
        for f in C:
            ss = s_on_functional(H, None, lam, s_on_functional(H, None, lam, f))
            assert ss == transported_inverse_antipode(H, lam, f, b)
            if b == H.unit:
                assert ss == inverse_antipode_pullback(H, f)
        n = H.dim
        s2 = [H.apply_antipode(H.apply_antipode(H.basis(a))) for a in range(n)]
        for a in range(n):
            for bb in range(n):
                lhs = pair(H, lam, H.product(H.basis(a), H.basis(bb)))
                assert lhs == pair(H, lam, H.product(H.basis(bb), s2[a])), (a, bb)
        for f in C:
            assert H.is_central(drinfeld_map(H, None, f))
        for f, g in itertools.product(C, repeat=2):
            assert drinfeld_map(H, None, _conv(H, f, g)) == \
                H.product(drinfeld_map(H, None, f), drinfeld_map(H, None, g))
        c.note(f"{eid} kappa={p.kappa} literal s^-1 pullback: {b == H.unit}")


def test_criterion_4_degeneracy_dichotomy(criterion):
    with criterion(4, "Hopf-link Gram invertible iff semisimple; zero on projectives of D(T_2)") as c:
        H, S = entry("double_z2")
        assert rank(hopf_link_matrix(S)) == len(S)
        for eid in ["su2_1", "su2_2", "su2_3", "fibonacci", "ising", "semion"]:
            md = catalog.load(eid)
            assert rank(md_hopf_link(md)) == md.rank
        for eid in ["double_taft2", "double_taft3"]:
            H, S = entry(eid)
            G = hopf_link_matrix(S)
            assert rank(G) < len(S)
            R = regular(H)
            P = [submodule(R, p) for p in projective_summands(H, simples=S)]
            assert sum(p.dim for p in P) == H.dim
            for p, x in itertools.product(P, S):
                assert hopf_link(p, x) == 0 and hopf_link(x, p) == 0
            c.note(f"{eid} Gram rank {rank(G)}/{len(S)}, {len(P)} projective summands")


def test_criterion_5_proper_subspace(criterion):
    with criterion(5, "character span proper on D(T_2) with NotInSpan witness; full when semisimple") as c:
        for eid in ["double_taft2", "double_taft3"]:
            H, S = entry(eid)
            chars = [qcharacter(s) for s in S]
            C = class_functions(H)
            r = character_rank(chars, H.field)
            assert r < len(C)
            comp = next(f for f in C if character_rank(chars + [f], H.field) > r)
            with pytest.raises(NotInSpan):
                decompose_K0(comp, S)
            c.note(f"{eid} rank {r} < dim C(H) {len(C)}")
        for eid in ["z2", "z3", "double_z2"]:
            H, S = entry(eid)
            assert character_rank([qcharacter(s) for s in S], H.field) == len(class_functions(H))


@pytest.mark.parametrize("eid", FACTORIZABLE)
def test_criterion_6_ring_map_and_channels(criterion, eid):
    with criterion(6, "out_state(M(x)N) = convolution; out-in = out-out sewing after transport") as c:
        H, S = entry(eid)
        for M, N in itertools.product(S, repeat=2):
            a, b = out_state(M), out_state(N)
            assert out_state(tensor(M, N)).vector == convolve(a, b).vector
            ref = sew(a, b, S)
            mixed = sew(a, s_transform(in_state(N)), S)
            assert mixed.element == ref.element and mixed.k0 == ref.k0
        c.note(f"{eid} {len(S) ** 2} pairs")


def test_criterion_7_cross_engine(criterion):
    with criterion(7, "modular data from D(Q[Z/2]) -> verlinde = Hopf-side fusion_table") as c:
        H, S = entry("double_z2")
        md = modular_data_from_hopf(H, S)
        assert validate_modular(md).passed
        for i, M in enumerate(S):
            v = out_state(M).vector
            w = t_transform(out_state(M)).vector
            k = next(j for j, x in enumerate(v) if x)
            assert all(y == (w[k] / v[k]) * x for x, y in zip(v, w))
        assert verlinde(md) == fusion_table(S)
        c.note(f"c = {md.central_charge}, T = ({', '.join(str(t) for t in md.T)})")


def test_criterion_8_out_of_scope_statement(criterion, capsys):
    with criterion(8, "triplet (p,1) numbers out of scope; cited in reports as commentary only") as c:
        for target in ["catalog:double_taft2", "catalog:fibonacci"]:
            assert main(["--format", "json", "report", target]) == 0
            out = capsys.readouterr().out
            assert "triplet" in out and "not computed" in out
        c.note("no triplet computation exists; statement present in every report")
