"""Boundary states, S/T transforms, sewing and annulus amplitudes in H-mod.

Outgoing states are class functions (functionals on H), incoming states are
central elements. The Drinfeld map Omega carries the former to the latter.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .hopf import (HopfAlgebra, NotRibbon, RibbonStructure, _memo, _ribbon_of, _sparse,
                   drinfeld_matrix, frobenius_matrix, normalize_pair)
from .linalg import Matrix, invert
from .rep import K0Element, Representation, decompose_K0, dual, qcharacter, tensor

__all__ = [
    "BoundaryState", "AnnulusAmplitude", "OUT", "IN",
    "register_simples", "registered_simples", "normalized",
    "out_state", "in_state", "convolve", "omega", "omega_inverse",
    "s_transform", "s_inverse_transform", "t_transform", "twist", "hopf_link", "hopf_link_matrix",
    "sew", "annulus", "boundary_fields", "algebroid_maps", "is_morphism",
    "is_class_function", "frobenius_form", "modular_data_from_hopf",
]

OUT = "outgoing"
IN = "incoming"


@dataclass(frozen=True)
class BoundaryState:
    direction: str
    vector: tuple
    parent: HopfAlgebra
    source: str | None = None

    def __post_init__(self):
        if self.direction not in (OUT, IN):
            raise ValueError(f"direction must be {OUT!r} or {IN!r}")

    def check(self, ribbon: RibbonStructure | None = None) -> bool:
        """Outgoing: class-function condition. Incoming: centrality."""
        if self.direction == OUT:
            return is_class_function(self.parent, self.vector)
        return self.parent.is_central(self.vector)

    def relabel(self, source: str) -> "BoundaryState":
        return BoundaryState(self.direction, self.vector, self.parent, source)


@dataclass(frozen=True)
class AnnulusAmplitude:
    """Sewn amplitude with its expansion in simple q-characters.

    ``twisted`` marks the in-in channel, whose element is S applied to the
    expanded functional: element = S(sum k0_l chi_l).
    """

    element: tuple
    k0: K0Element
    twisted: bool = False

    def render(self) -> str:
        return self.k0.render()


def register_simples(H: HopfAlgebra, simples: Sequence[Representation]) -> None:
    """Attach the simple list used for K0 expansions."""
    H.__dict__["_simples"] = tuple(simples)


def registered_simples(H: HopfAlgebra) -> tuple:
    try:
        return H.__dict__["_simples"]
    except KeyError:
        raise ValueError(f"no simple modules registered for {H.name or 'algebra'}") from None


def normalized(H: HopfAlgebra, ribbon: RibbonStructure | None = None):
    rs = _ribbon_of(H, ribbon)
    return _memo(H, ("normalized", rs), lambda: normalize_pair(H, rs))


def is_class_function(H: HopfAlgebra, f: Sequence) -> bool:
    """f(ab) = f(b s^2(a)) for a a generator and b any basis element."""
    one = H.field.one
    zero = H.field.zero

    def ev(d):
        return sum((c * f[k] for k, c in d.items()), zero)
    for a in H._gens:
        a2 = H._antipode(H._antipode(a))
        for j in range(H.dim):
            if ev(H._mul(a, {j: one})) != ev(H._mul({j: one}, a2)):
                return False
    return True


def _parent(*states: BoundaryState) -> HopfAlgebra:
    p = states[0].parent
    for s in states[1:]:
        if s.parent is not p:
            raise ValueError("boundary states live over different algebras")
    return p


def _need(b: BoundaryState, direction: str) -> None:
    if b.direction != direction:
        raise ValueError(f"expected an {direction} state, got {b.direction}")


# states

def out_state(M: Representation, ribbon: RibbonStructure | None = None) -> BoundaryState:
    return BoundaryState(OUT, qcharacter(M, ribbon), M.parent, M.label or None)


def omega(H: HopfAlgebra, f: Sequence, ribbon: RibbonStructure | None = None) -> tuple:
    return drinfeld_matrix(H, ribbon).apply(f)


def _omega_inv_matrix(H: HopfAlgebra, ribbon) -> Matrix:
    rs = _ribbon_of(H, ribbon)
    return _memo(H, ("omega_inv", rs), lambda: invert(drinfeld_matrix(H, rs)))


def omega_inverse(H: HopfAlgebra, z: Sequence, ribbon: RibbonStructure | None = None) -> tuple:
    return _omega_inv_matrix(H, ribbon).apply(z)


def in_state(M: Representation, ribbon: RibbonStructure | None = None) -> BoundaryState:
    return BoundaryState(IN, omega(M.parent, qcharacter(M, ribbon), ribbon), M.parent, M.label or None)


def convolve(a: BoundaryState, b: BoundaryState) -> BoundaryState:
    """(a*b)(h) = sum a(h1) b(h2)."""
    H = _parent(a, b)
    _need(a, OUT)
    _need(b, OUT)
    return BoundaryState(OUT, _convolve(H, a.vector, b.vector), H)


def _convolve(H: HopfAlgebra, f: Sequence, g: Sequence) -> tuple:
    zero = H.field.zero
    fs, gs = _sparse(f), _sparse(g)
    out = []
    for k in range(H.dim):
        t = zero
        for (i, j), c in H._co[k].items():
            x = fs.get(i)
            if x:
                y = gs.get(j)
                if y:
                    t = t + c * x * y
        out.append(t)
    return tuple(out)


# S and T

def _s_matrices(H: HopfAlgebra, ribbon) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    """S on functionals, its inverse, S on H, its inverse."""
    rs = _ribbon_of(H, ribbon)

    def compute():
        lam = normalized(H, rs).cointegral
        D = drinfeld_matrix(H, rs)
        F = frobenius_matrix(H, lam)  # F h is the functional x -> lam(x h)
        s_out = F @ D
        s_in = D @ F
        return s_out, invert(s_out), s_in, invert(s_in)
    return _memo(H, ("S", rs), compute)


def frobenius_form(H: HopfAlgebra, f: Sequence, g: Sequence, ribbon: RibbonStructure | None = None):
    """lambda(Omega(f) Omega(g))."""
    lam = normalized(H, ribbon).cointegral
    p = H.product(omega(H, f, ribbon), omega(H, g, ribbon))
    return sum((a * b for a, b in zip(lam, p)), H.field.zero)


def s_transform(b: BoundaryState, ribbon: RibbonStructure | None = None) -> BoundaryState:
    """Outgoing: f -> lambda(. Omega(f)). Incoming: z -> Omega(lambda(. z))."""
    s_out, _, s_in, _ = _s_matrices(b.parent, ribbon)
    M = s_out if b.direction == OUT else s_in
    return BoundaryState(b.direction, M.apply(b.vector), b.parent)


def s_inverse_transform(b: BoundaryState, ribbon: RibbonStructure | None = None) -> BoundaryState:
    _, s_out_inv, _, s_in_inv = _s_matrices(b.parent, ribbon)
    M = s_out_inv if b.direction == OUT else s_in_inv
    return BoundaryState(b.direction, M.apply(b.vector), b.parent)


def t_transform(b: BoundaryState, ribbon: RibbonStructure | None = None) -> BoundaryState:
    """h -> b(v h) with v the ribbon element."""
    _need(b, OUT)
    H = b.parent
    rs = _ribbon_of(H, ribbon)
    if rs.ribbon is None:
        raise NotRibbon(f"{H.name or 'algebra'} has a pivot but no ribbon element")
    v = _sparse(rs.ribbon)
    one = H.field.one
    zero = H.field.zero
    out = []
    for i in range(H.dim):
        out.append(sum((c * b.vector[k] for k, c in H._mul(v, {i: one}).items()), zero))
    return BoundaryState(OUT, tuple(out), H, b.source)


def twist(M: Representation, ribbon: RibbonStructure | None = None):
    """Scalar by which v acts on M, or None if it does not act by a scalar."""
    H = M.parent
    rs = _ribbon_of(H, ribbon)
    if rs.ribbon is None:
        raise NotRibbon(f"{H.name or 'algebra'} has a pivot but no ribbon element")
    A = M.rho(rs.ribbon)
    t = A.rows[0][0] if M.dim else H.field.one
    if A != Matrix.identity(M.dim, H.field).scale(t):
        return None
    return t


def hopf_link(x: Representation, y: Representation, ribbon: RibbonStructure | None = None):
    """chi_y evaluated on Omega(chi_x)."""
    H = x.parent
    if y.parent is not H:
        raise ValueError("modules over different algebras")
    z = omega(H, qcharacter(x, ribbon), ribbon)
    cy = qcharacter(y, ribbon)
    return sum((a * b for a, b in zip(cy, z)), H.field.zero)


def hopf_link_matrix(simples: Sequence[Representation], ribbon: RibbonStructure | None = None) -> Matrix:
    if not simples:
        raise ValueError("no modules")
    H = simples[0].parent
    zs = [omega(H, qcharacter(x, ribbon), ribbon) for x in simples]
    cs = [qcharacter(y, ribbon) for y in simples]
    zero = H.field.zero
    return Matrix([[sum((a * b for a, b in zip(c, z)), zero) for c in cs] for z in zs], H.field)


# sewing

def _expand(H: HopfAlgebra, f: Sequence, simples, ribbon) -> K0Element:
    simples = simples if simples is not None else registered_simples(H)
    return decompose_K0(f, simples, ribbon)


def _in_to_out(b: BoundaryState, ribbon) -> tuple:
    """Omega^-1 S^-1 of an incoming state, as a functional."""
    return omega_inverse(b.parent, s_inverse_transform(b, ribbon).vector, ribbon)


def sew(a: BoundaryState, b: BoundaryState, simples: Sequence[Representation] | None = None,
        ribbon: RibbonStructure | None = None) -> AnnulusAmplitude:
    """Sew two boundary states; the result is expanded over the simple q-characters.

    out-out is convolution, out-in converts the incoming state by
    Omega^-1 S^-1 first, in-in converts both and applies S to the product.
    """
    H = _parent(a, b)
    if a.direction == IN and b.direction == OUT:
        a, b = b, a
    if a.direction == OUT and b.direction == OUT:
        f = _convolve(H, a.vector, b.vector)
        return AnnulusAmplitude(f, _expand(H, f, simples, ribbon))
    if a.direction == OUT:
        f = _convolve(H, a.vector, _in_to_out(b, ribbon))
        return AnnulusAmplitude(f, _expand(H, f, simples, ribbon))
    inner = _convolve(H, _in_to_out(a, ribbon), _in_to_out(b, ribbon))
    s_out = _s_matrices(H, ribbon)[0]
    return AnnulusAmplitude(s_out.apply(inner), _expand(H, inner, simples, ribbon), twisted=True)


def annulus(M: Representation, N: Representation, simples: Sequence[Representation] | None = None,
            ribbon: RibbonStructure | None = None) -> AnnulusAmplitude:
    """A_MN = chi of M (x) N, expanded over the simples."""
    f = qcharacter(tensor(M, N), ribbon)
    return AnnulusAmplitude(f, _expand(M.parent, f, simples, ribbon))


# boundary fields

def boundary_fields(M: Representation, N: Representation) -> Representation:
    B = tensor(dual(M), N)
    return B.relabel(f"B_{M.label or 'M'},{N.label or 'N'}")


def is_morphism(X: Matrix, M: Representation, N: Representation) -> bool:
    """X : M -> N commutes with the action of every generator."""
    return all(N.rho(h) @ X == X @ M.rho(h) for h in M.parent.generators)


def algebroid_maps(l: Representation, m: Representation, n: Representation,
                   ribbon: RibbonStructure | None = None) -> dict:
    """Structure maps of the boundary-field algebroid.

    product   : B_lm (x) B_mn -> B_ln,  id (x) ev~_m (x) id with ev~(x (x) f) = f(g x)
    coproduct : B_ln -> B_lm (x) B_mn,  id (x) coev_m (x) id
    unit      : 1 -> B_mm,  1 -> sum e^i (x) g^-1 e_i
    counit    : B_mm -> 1,  f (x) x -> f(x)
    Bases are Kronecker orders of dual(l) (x) m etc.
    """
    H = l.parent
    f = H.field
    rs = _ribbon_of(H, ribbon)
    g = m.rho(rs.pivot)
    ginv = m.rho(H.inverse(rs.pivot))
    dl, dm, dn = l.dim, m.dim, n.dim
    zero, one = f.zero, f.one

    prod = [[zero] * (dl * dm * dm * dn) for _ in range(dl * dn)]
    for a in range(dl):
        for b in range(dm):
            for c in range(dm):
                x = g.rows[c][b]
                if x:
                    for d in range(dn):
                        prod[a * dn + d][((a * dm + b) * dm + c) * dn + d] = x
    cop = [[zero] * (dl * dn) for _ in range(dl * dm * dm * dn)]
    for a in range(dl):
        for d in range(dn):
            for b in range(dm):
                cop[((a * dm + b) * dm + b) * dn + d][a * dn + d] = one
    unit = [[ginv.rows[j][i]] for i in range(dm) for j in range(dm)]
    counit = [[one if i == j else zero for i in range(dm) for j in range(dm)]]
    return {
        "product": Matrix(prod, f, ncols=dl * dm * dm * dn),
        "coproduct": Matrix(cop, f, ncols=dl * dn),
        "unit": Matrix(unit, f, ncols=1),
        "counit": Matrix(counit, f, ncols=dm * dm),
    }


# semisimple shadow

def _proportional(a: Sequence, b: Sequence):
    k = next((i for i, x in enumerate(b) if x), None)
    if k is None:
        return None
    r = a[k] / b[k]
    return r if all(x == r * y for x, y in zip(a, b)) else None


def modular_data_from_hopf(H: HopfAlgebra, simples: Sequence[Representation] | None = None,
                           ribbon: RibbonStructure | None = None, name: str = ""):
    """Modular data of a semisimple factorizable ribbon algebra.

    S is the Hopf-link matrix divided by the global dimension, T the twists
    read off from t_transform times exp(-2 pi i c/24), with c mod 8 taken
    from the Gauss sum. The first simple must be the trivial module.
    """
    from .modulardata import ModularData, _phase, conjugation
    from .scalar import MissingRoot, primitive_root, sqrt

    simples = list(simples if simples is not None else registered_simples(H))
    rs = _ribbon_of(H, ribbon)
    f = H.field
    link = hopf_link_matrix(simples, rs)
    dims = link.rows[0]
    D2 = sum((d * d for d in dims), f.zero)
    D = sqrt(D2, f)
    S = Matrix([[x / D for x in row] for row in link.rows], f)
    thetas = []
    for M in simples:
        chi = out_state(M, rs)
        t = _proportional(t_transform(chi, rs).vector, chi.vector)
        if t is None:
            raise ValueError(f"{M.label}: q-character is not a T-eigenvector")
        thetas.append(t)
    gauss = sum((t * d * d for t, d in zip(thetas, dims)), f.zero) / D
    order = f.order if f.order % 2 == 0 else 2 * f.order
    w = primitive_root(f, order)
    j = next((j for j in range(order) if w ** j == gauss), None)
    if j is None:
        raise MissingRoot("Gauss sum is not a root of unity in the field")
    c = Fraction(8 * j, order) % 8
    phase = _phase(c, f)
    labels = tuple(M.label for M in simples)
    md = ModularData(labels, S, tuple(t * phase for t in thetas), f, c, name or f"{H.name} modular data")
    return ModularData(md.labels, md.S, md.T, f, c, md.name, conjugation(md))
