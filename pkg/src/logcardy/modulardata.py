"""Semisimple modular data: validation, Verlinde fusion, Cardy states, annulus counts."""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .linalg import Matrix
from .rep import NonInteger
from .scalar import QQ, Field, MissingRoot, approximate, conjugate, sqrt, to_str
from .validation import ValidationReport

__all__ = [
    "ModularData", "Surd", "validate_modular", "verlinde", "cardy_state", "annulus_ss",
    "hopf_link_matrix", "quantum_dimensions", "conjugation",
    "su2_level", "semion", "fibonacci", "ising", "trivial_data",
]


@dataclass(frozen=True)
class ModularData:
    """Unitary S, diagonal T (with the central-charge phase included) and labels.

    ``labels[0]`` is the vacuum.
    """

    labels: tuple
    S: Matrix
    T: tuple
    field: Field
    central_charge: Fraction | None = None
    name: str = ""
    conjugation_perm: tuple = dc_field(default=(), compare=False)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        if isinstance(label, int):
            return label
        return self.labels.index(label)

    @property
    def C(self) -> tuple:
        """Charge conjugation, as a permutation of indices (read off from S^2)."""
        return self.conjugation_perm or conjugation(self)

    def T_matrix(self) -> Matrix:
        n = self.rank
        f = self.field
        return Matrix([[self.T[i] if i == j else f.zero for j in range(n)] for i in range(n)], f)


@dataclass(frozen=True)
class Surd:
    """The number coeff * sqrt(radicand), radicand taken with its principal root.

    Used for Cardy coefficients, whose square roots generally leave every
    cyclotomic field (2^(1/4) already does).
    """

    coeff: object
    radicand: object

    def square(self):
        return self.coeff * self.coeff * self.radicand

    def conjugate(self) -> "Surd":
        re, im = approximate(self.radicand)
        if abs(im) > 1e-12 or re < 0:
            raise ValueError("conjugation needs a positive real radicand")
        return Surd(conjugate(self.coeff), self.radicand)

    def __mul__(self, other: "Surd"):
        """Product of two surds over the same radicand is a field element."""
        if not isinstance(other, Surd) or other.radicand != self.radicand:
            return NotImplemented
        return self.coeff * other.coeff * self.radicand

    def simplify(self, field: Field):
        """Field element equal to this surd; raises MissingRoot if sqrt(radicand) is not in the field."""
        return self.coeff * sqrt(self.radicand, field)

    def numeric(self) -> complex:
        a = complex(*approximate(self.coeff))
        r = complex(*approximate(self.radicand))
        return a * r ** 0.5

    def __str__(self) -> str:
        return f"({to_str(self.coeff)})*sqrt({to_str(self.radicand)})"


def _matrix_conj_T(A: Matrix) -> Matrix:
    return Matrix([[conjugate(A.rows[j][i]) for j in range(A.nrows)] for i in range(A.ncols)], A.field)


def conjugation(md: ModularData) -> tuple:
    """Permutation c with (S^2)_{i, c(i)} = 1; raises ValueError if S^2 is not a permutation."""
    S2 = md.S @ md.S
    f = md.field
    perm = []
    for i, row in enumerate(S2.rows):
        hits = [j for j, x in enumerate(row) if x]
        if len(hits) != 1 or row[hits[0]] != f.one:
            raise ValueError(f"S^2 row {i} is not a permutation row")
        perm.append(hits[0])
    if sorted(perm) != list(range(md.rank)):
        raise ValueError("S^2 is not a permutation")
    return tuple(perm)


def validate_modular(md: ModularData) -> ValidationReport:
    rep = ValidationReport(f"modular data {md.name}".strip())
    n = md.rank
    f = md.field
    S = md.S
    rep.add("S square of label size", S.shape == (n, n) and len(md.T) == n)
    bad = next(((i, j) for i in range(n) for j in range(i) if S.rows[i][j] != S.rows[j][i]), None)
    rep.add("S symmetric", bad is None, bad)
    try:
        perm = conjugation(md)
        rep.add("S^2 is a permutation C", True)
        rep.add("C^2 = id", all(perm[perm[i]] == i for i in range(n)))
        rep.add("C fixes the vacuum", perm[0] == 0)
    except ValueError as exc:
        rep.add("S^2 is a permutation C", False, detail=str(exc))
    T = md.T_matrix()
    ST = S @ T
    rep.add("(ST)^3 = S^2", ST @ ST @ ST == S @ S)
    zero_col = next((i for i in range(n) if not S.rows[i][0]), None)
    rep.add("S_i0 nonzero", zero_col is None, None if zero_col is None else (zero_col,))
    rep.add("S unitary", S @ _matrix_conj_T(S) == Matrix.identity(n, f))
    rep.add("T roots of unity", all(_is_root_of_unity(t) for t in md.T))
    return rep


def _is_root_of_unity(t) -> bool:
    re, im = approximate(t)
    if abs(re * re + im * im - 1) > 1e-9:
        return False
    f = t.field if hasattr(t, "field") else QQ
    order = 2 * f.order
    p = t
    for _ in range(order):
        if p == 1:
            return True
        p = p * t
    return False


def _as_int(x, what: str) -> int:
    if hasattr(x, "is_rational"):
        if not x.is_rational():
            raise NonInteger(f"{what} = {to_str(x)} is irrational")
        x = x.rational()
    q = Fraction(x)
    if q.denominator != 1:
        raise NonInteger(f"{what} = {q} is not an integer")
    return int(q)


def verlinde(md: ModularData) -> list:
    """N[i][j][k] = sum_l S_il S_jl conj(S_kl) / S_0l."""
    n = md.rank
    S = md.S.rows
    f = md.field
    inv0 = [f.one / S[0][l] for l in range(n)]
    Sc = [[conjugate(x) for x in row] for row in S]
    N = []
    for i in range(n):
        row = []
        for j in range(n):
            w = [S[i][l] * S[j][l] * inv0[l] for l in range(n)]
            cell = []
            for k in range(n):
                val = sum((w[l] * Sc[k][l] for l in range(n)), f.zero)
                m = _as_int(val, f"N_{md.labels[i]},{md.labels[j]}^{md.labels[k]}")
                if m < 0:
                    raise NonInteger(f"negative fusion multiplicity {m}")
                cell.append(m)
            row.append(cell)
        N.append(row)
    return N


def cardy_state(md: ModularData, a, strict: bool = False) -> list:
    """Coefficients S_ia / sqrt(S_i0) of the Cardy boundary state a.

    By default each coefficient is the exact Surd (S_ia/S_i0) * sqrt(S_i0).
    With ``strict`` the square roots must lie in the field (MissingRoot otherwise)
    and plain field elements are returned.
    """
    k = md.index(a)
    S = md.S.rows
    out = []
    for i in range(md.rank):
        s0 = S[i][0]
        c = Surd(S[i][k] / s0, s0)
        out.append(c.simplify(md.field) if strict else c)
    return out


def annulus_ss(md: ModularData, a, b) -> list:
    """Open-channel multiplicities from the overlap of two Cardy states.

    A_ab^l = sum_i conj(B_a^i) B_b^i conj(S_li), an exact integer vector; it
    equals the Verlinde row N_{C(a) b}^l.
    """
    Ba = cardy_state(md, a)
    Bb = cardy_state(md, b)
    S = md.S.rows
    f = md.field
    out = []
    for l in range(md.rank):
        val = f.zero
        for i in range(md.rank):
            val = val + (Ba[i].conjugate() * Bb[i]) * conjugate(S[l][i])
        m = _as_int(val, f"A_{md.labels[md.index(a)]},{md.labels[md.index(b)]}^{md.labels[l]}")
        if m < 0:
            raise NonInteger(f"negative annulus coefficient {m}")
        out.append(m)
    return out


def hopf_link_matrix(md: ModularData) -> Matrix:
    s00 = md.S.rows[0][0]
    return Matrix([[x / s00 for x in row] for row in md.S.rows], md.field)


def quantum_dimensions(md: ModularData) -> list:
    return hopf_link_matrix(md).rows[0]


# standard examples

def _finish(name, labels, S_rows, twists, c, field) -> ModularData:
    phase = _phase(c, field)
    md = ModularData(tuple(labels), Matrix(S_rows, field), tuple(t * phase for t in twists),
                     field, Fraction(c), name)
    return ModularData(md.labels, md.S, md.T, field, md.central_charge, name, conjugation(md))


def _phase(c, field: Field):
    """exp(-2 pi i c / 24) in ``field``."""
    q = Fraction(c) / 24
    if (q * field.order).denominator != 1:
        raise MissingRoot(f"exp(2 pi i {q}) not in {field!r}")
    return field.root_of_unity(-int(q * field.order))


def _root(field: Field, q: Fraction):
    """exp(2 pi i q)."""
    k = q * field.order
    if k.denominator != 1:
        raise MissingRoot(f"exp(2 pi i {q}) not in {field!r}")
    return field.root_of_unity(int(k))


def su2_level(k: int, order: int | None = None) -> ModularData:
    """SU(2) at level k: labels are twice the spin, 0..k."""
    m = k + 2
    c = Fraction(3 * k, m)
    if order is None:
        order = _su2_order(k)
    f = Field(order)
    i_unit = _root(f, Fraction(1, 4))
    norm = sqrt(f(Fraction(2, m)), f)

    def sin(p: Fraction):
        return (_root(f, p / 2) - _root(f, -p / 2)) / (2 * i_unit)
    S = [[norm * sin(Fraction((a + 1) * (b + 1), m)) for b in range(k + 1)] for a in range(k + 1)]
    theta = [_root(f, Fraction(j * (j + 2), 4 * m)) for j in range(k + 1)]
    return _finish(f"su2_{k}", [str(j) for j in range(k + 1)], S, theta, c, f)


def _su2_order(k: int) -> int:
    m = k + 2
    need = [Fraction(k, 8 * m).denominator, 4 * m, 4]
    order = 1
    for x in need:
        order = order * x // math.gcd(order, x)
    # sqrt(2/m): sqrt 2 needs 8, sqrt of an odd prime p needs p or 4p
    for mult in (1, 2, 4, 8):
        f = Field(order * mult if mult > 1 else order)
        try:
            sqrt(f(Fraction(2, m)), f)
            return f.order
        except MissingRoot:
            continue
    raise MissingRoot(f"no small cyclotomic field for su2_{k}")


def semion() -> ModularData:
    f = Field(24)
    r = sqrt(f(Fraction(1, 2)), f)
    return _finish("semion", ["0", "s"], [[r, r], [r, -r]], [f.one, _root(f, Fraction(1, 4))], 1, f)


def fibonacci() -> ModularData:
    f = Field(60)
    z5 = _root(f, Fraction(1, 5))
    phi = -(z5 ** 2 + z5 ** 3)  # golden ratio
    D = (z5 - z5 ** 4) / _root(f, Fraction(1, 4))  # 2 sin(2 pi / 5), D^2 = 2 + phi
    S = [[f.one / D, phi / D], [phi / D, -f.one / D]]
    return _finish("fibonacci", ["0", "τ"], S, [f.one, _root(f, Fraction(2, 5))], Fraction(14, 5), f)


def ising() -> ModularData:
    f = Field(48)
    r2 = sqrt(f(2), f)
    h = f(Fraction(1, 2))
    S = [[h, h, h * r2], [h, h, -h * r2], [h * r2, -h * r2, f.zero]]
    return _finish("ising", ["0", "ψ", "σ"], S, [f.one, -f.one, _root(f, Fraction(1, 16))], Fraction(1, 2), f)


def trivial_data() -> ModularData:
    return _finish("trivial", ["0"], [[QQ.one]], [QQ.one], 0, QQ)
