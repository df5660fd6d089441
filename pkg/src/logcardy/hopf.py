"""Finite-dimensional Hopf algebras given by structure constants.

Conventions:

* ``mult[i, j, k]`` is the coefficient of ``b_k`` in ``b_i b_j``;
* ``comult[k, i, j]`` is the coefficient of ``b_i (x) b_j`` in ``Delta(b_k)``;
* ``antipode[i, j]`` is the coefficient of ``b_i`` in ``s(b_j)`` (column = image);
* elements are coefficient tuples of length ``n``, functionals are tuples in the
  dual basis, and elements of ``H (x) H`` are length ``n*n`` tuples indexed by
  ``i*n + j`` (left leg major).

Internally everything is kept as sparse dicts.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .linalg import Matrix, NoSolution, RowReducer, Tensor3, rank, solve
from .scalar import MissingRoot, QQ, Field, approximate, sqrt
from .validation import ValidationReport

__all__ = [
    "Algebra", "HopfAlgebra", "RibbonStructure", "NormalizedPair",
    "InternalError", "NormalizationFailure", "NotRibbon",
    "validate_hopf", "validate_ribbon", "left_integral", "right_cointegral",
    "left_cointegral", "check_unimodular", "monodromy", "drinfeld_map", "drinfeld_matrix",
    "frobenius_map", "frobenius_matrix", "modular_element", "transported_inverse_antipode",
    "s_on_center", "check_factorizable", "center", "class_functions",
    "reynolds_ideal", "normalize_pair", "s_on_functional", "inverse_antipode_pullback",
    "ribbon_candidates",
]


class InternalError(RuntimeError):
    """A computation that must succeed on valid input did not."""


class NormalizationFailure(ValueError):
    """The integral pair cannot be normalized (non-factorizable input)."""


class NotRibbon(ValueError):
    """Operation needs a ribbon element but only a pivot is available."""


def _acc(d: dict, key, val) -> None:
    w = d.get(key)
    if w is None:
        d[key] = val
    else:
        w = w + val
        if w:
            d[key] = w
        else:
            del d[key]


def _sparse(vec: Sequence) -> dict:
    return {i: v for i, v in enumerate(vec) if v}


def _positive(x) -> bool:
    re, im = approximate(x)
    return re > 0 if abs(re) > 1e-12 else im > 0


class Algebra:
    """Associative unital algebra with basis ``b_0 .. b_{n-1}``.

    ``generators`` lists elements (coefficient vectors) generating the algebra;
    conditions of the form "for all h" that are multiplicative in h are only
    imposed on them.  Defaults to the whole basis.
    """

    def __init__(self, mult: Tensor3, unit: Sequence, basis_labels: Sequence[str] | None = None,
                 field: Field | None = None, generators: Sequence[Sequence] | None = None,
                 name: str = ""):
        n = mult.dims[0]
        if mult.dims != (n, n, n):
            raise ValueError("multiplication tensor must be n x n x n")
        self.dim = n
        self.field = field or mult.field
        self.name = name
        self.basis_labels = tuple(basis_labels) if basis_labels else tuple(f"b{i}" for i in range(n))
        self.mult = mult
        f = self.field
        self.unit = tuple(f(x) for x in unit)
        if generators is None:
            self.generators = tuple(self.basis(i) for i in range(n))
        else:
            self.generators = tuple(tuple(f(x) for x in g) for g in generators)
        self._gens = [_sparse(g) for g in self.generators]
        table: list[list[dict]] = [[{} for _ in range(n)] for _ in range(n)]
        for (i, j, k), c in mult.nonzero():
            table[i][j][k] = f(c)
        self._table = table

    # element helpers
    @property
    def zero(self) -> tuple:
        return (self.field.zero,) * self.dim

    @property
    def one(self) -> tuple:
        return self.unit

    def basis(self, i: int) -> tuple:
        f = self.field
        return tuple(f.one if j == i else f.zero for j in range(self.dim))

    def vec(self, d: Mapping) -> tuple:
        zero = self.field.zero
        return tuple(d.get(i, zero) for i in range(self.dim))

    def _mul(self, a: Mapping, b: Mapping) -> dict:
        out: dict = {}
        t = self._table
        for i, x in a.items():
            ti = t[i]
            for j, y in b.items():
                xy = x * y
                for k, c in ti[j].items():
                    _acc(out, k, xy * c)
        return out

    def product(self, a: Sequence, b: Sequence) -> tuple:
        return self.vec(self._mul(_sparse(a), _sparse(b)))

    def left_matrix(self, a: Sequence) -> Matrix:
        """Matrix of ``x -> a x`` (columns are images of basis vectors)."""
        a = _sparse(a)
        cols = [self.vec(self._mul(a, {j: self.field.one})) for j in range(self.dim)]
        return Matrix.from_columns(cols, self.field, nrows=self.dim)

    def inverse(self, a: Sequence) -> tuple:
        try:
            sol = solve(self.left_matrix(a), self.unit)
        except NoSolution:
            raise ValueError("element is not invertible") from None
        if sol.kernel_basis:
            raise ValueError("element is not invertible")
        x = sol.particular
        if self.product(x, a) != self.unit:
            raise ValueError("element is not invertible")
        return x

    def is_central(self, z: Sequence) -> bool:
        zs = _sparse(z)
        return all(self._mul(zs, g) == self._mul(g, zs) for g in self._gens)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name or 'anonymous'}, dim={self.dim}, field={self.field!r})"


class HopfAlgebra(Algebra):
    """Hopf algebra by dense structure constants; see module docstring for index order."""

    def __init__(self, mult: Tensor3, unit: Sequence, comult: Tensor3, counit: Sequence,
                 antipode: Matrix, basis_labels: Sequence[str] | None = None,
                 field: Field | None = None, generators: Sequence[Sequence] | None = None,
                 name: str = "", braiding: "RibbonStructure | None" = None):
        super().__init__(mult, unit, basis_labels, field, generators, name)
        n = self.dim
        if comult.dims != (n, n, n):
            raise ValueError("comultiplication tensor must be n x n x n")
        f = self.field
        self.comult = comult
        self.counit = tuple(f(x) for x in counit)
        if antipode.shape != (n, n):
            raise ValueError("antipode must be n x n")
        self.antipode = antipode
        co: list[dict] = [{} for _ in range(n)]
        for (k, i, j), c in comult.nonzero():
            co[k][(i, j)] = f(c)
        self._co = co
        self._s = [{i: antipode.rows[i][j] for i in range(n) if antipode.rows[i][j]} for j in range(n)]
        self._sinv: list[dict] | None = None
        self.braiding = braiding

    # coalgebra side
    def _coproduct(self, a: Mapping) -> dict:
        out: dict = {}
        for k, x in a.items():
            for ij, c in self._co[k].items():
                _acc(out, ij, x * c)
        return out

    def coproduct(self, a: Sequence) -> tuple:
        return self.vec2(self._coproduct(_sparse(a)))

    def counit_of(self, a: Sequence | Mapping):
        a = a if isinstance(a, Mapping) else _sparse(a)
        eps = self.counit
        return sum((x * eps[i] for i, x in a.items()), self.field.zero)

    def _antipode(self, a: Mapping, inverse: bool = False) -> dict:
        cols = self._antipode_inverse_cols() if inverse else self._s
        out: dict = {}
        for j, x in a.items():
            for i, c in cols[j].items():
                _acc(out, i, x * c)
        return out

    def apply_antipode(self, a: Sequence, inverse: bool = False) -> tuple:
        return self.vec(self._antipode(_sparse(a), inverse))

    def _antipode_inverse_cols(self) -> list[dict]:
        if self._sinv is None:
            from .linalg import invert
            m = invert(self.antipode)
            n = self.dim
            self._sinv = [{i: m.rows[i][j] for i in range(n) if m.rows[i][j]} for j in range(n)]
        return self._sinv

    # H (x) H
    def vec2(self, d: Mapping) -> tuple:
        n = self.dim
        zero = self.field.zero
        return tuple(d.get((i, j), zero) for i in range(n) for j in range(n))

    def pairs(self, vec: Sequence) -> dict:
        n = self.dim
        return {(k // n, k % n): v for k, v in enumerate(vec) if v}

    def _mul2(self, X: Mapping, Y: Mapping) -> dict:
        out: dict = {}
        t = self._table
        for (i, p), x in X.items():
            for (j, q), y in Y.items():
                xy = x * y
                left, right = t[i][j], t[p][q]
                for k, c in left.items():
                    xyc = xy * c
                    for l, d in right.items():
                        _acc(out, (k, l), xyc * d)
        return out

    def _mul3(self, X: Mapping, Y: Mapping) -> dict:
        out: dict = {}
        t = self._table
        for (i, p, r), x in X.items():
            for (j, q, s), y in Y.items():
                xy = x * y
                a, b, c3 = t[i][j], t[p][q], t[r][s]
                for k, c in a.items():
                    for l, d in b.items():
                        cd = xy * c * d
                        for m, e in c3.items():
                            _acc(out, (k, l, m), cd * e)
        return out

    def one2(self) -> dict:
        u = _sparse(self.unit)
        return {(i, j): x * y for i, x in u.items() for j, y in u.items()}

    @staticmethod
    def flip(X: Mapping) -> dict:
        return {(j, i): v for (i, j), v in X.items()}


@dataclass(frozen=True)
class RibbonStructure:
    """Universal R-matrix with a ribbon element or, failing that, a pivot.

    ``drinfeld_element`` is u = sum s(R2) R1 and ``pivot`` is g = u v^-1.
    When ``ribbon`` is None the structure is pivotal only; the twist is then
    unavailable.
    """

    r_matrix: tuple
    ribbon: tuple | None
    drinfeld_element: tuple
    pivot: tuple

    @classmethod
    def build(cls, H: HopfAlgebra, r_matrix: Sequence, ribbon: Sequence | None = None,
              pivot: Sequence | None = None) -> "RibbonStructure":
        f = H.field
        r = tuple(f(x) for x in r_matrix)
        if len(r) != H.dim ** 2:
            raise ValueError("R must have n^2 coefficients")
        u: dict = {}
        for (i, j), c in H.pairs(r).items():
            for k, x in H._mul(H._antipode({j: c}), {i: f.one}).items():
                _acc(u, k, x)
        u = H.vec(u)
        if ribbon is not None:
            v = tuple(f(x) for x in ribbon)
            g = H.product(u, H.inverse(v))
            if pivot is not None and tuple(f(x) for x in pivot) != g:
                raise ValueError("pivot disagrees with u v^-1")
        elif pivot is not None:
            v = None
            g = tuple(f(x) for x in pivot)
        else:
            raise ValueError("need a ribbon element or a pivot")
        return cls(r, v, u, g)

    @property
    def is_ribbon(self) -> bool:
        return self.ribbon is not None


def _ribbon_of(H: HopfAlgebra, ribbon: RibbonStructure | None) -> RibbonStructure:
    rs = ribbon if ribbon is not None else H.braiding
    if rs is None:
        raise ValueError(f"{H.name or 'algebra'} carries no braiding data")
    return rs


# validation

def validate_hopf(H: HopfAlgebra) -> ValidationReport:
    """Exhaustive check of the Hopf axioms on basis elements."""
    rep = ValidationReport(f"hopf {H.name}".strip())
    n, f = H.dim, H.field
    one = f.one
    t = H._table
    unit = _sparse(H.unit)

    def first(pred, items):
        for it in items:
            if not pred(*it):
                return it
        return None

    triples = ((i, j, k) for i in range(n) for j in range(n) for k in range(n))
    bad = first(lambda i, j, k: H._mul(t[i][j], {k: one}) == H._mul({i: one}, t[j][k]), triples)
    rep.add("associativity", bad is None, bad)

    bad = first(lambda i: H._mul(unit, {i: one}) == {i: one} == H._mul({i: one}, unit),
                ((i,) for i in range(n)))
    rep.add("unit", bad is None, bad)

    def coassoc(k):
        left: dict = {}
        right: dict = {}
        for (i, j), c in H._co[k].items():
            for (p, q), d in H._co[i].items():
                _acc(left, (p, q, j), c * d)
            for (p, q), d in H._co[j].items():
                _acc(right, (i, p, q), c * d)
        return left == right

    bad = first(coassoc, ((k,) for k in range(n)))
    rep.add("coassociativity", bad is None, bad)

    def counit_ok(k):
        e = H.counit
        left: dict = {}
        right: dict = {}
        for (i, j), c in H._co[k].items():
            if e[i]:
                _acc(left, j, c * e[i])
            if e[j]:
                _acc(right, i, c * e[j])
        return left == {k: one} == right

    bad = first(counit_ok, ((k,) for k in range(n)))
    rep.add("counit", bad is None, bad)

    pairs = [(i, j) for i in range(n) for j in range(n)]
    bad = first(lambda i, j: H._coproduct(t[i][j]) == H._mul2(H._co[i], H._co[j]), pairs)
    rep.add("comultiplication multiplicative", bad is None, bad)
    bad = first(lambda i, j: H.counit_of(t[i][j]) == H.counit[i] * H.counit[j], pairs)
    rep.add("counit multiplicative", bad is None, bad)
    rep.add("unit grouplike", H._coproduct(unit) == H.one2() and H.counit_of(unit) == one)

    def antipode_ok(k):
        left: dict = {}
        right: dict = {}
        for (i, j), c in H._co[k].items():
            for m, x in H._mul(H._antipode({i: c}), {j: one}).items():
                _acc(left, m, x)
            for m, x in H._mul({i: c}, H._antipode({j: one})).items():
                _acc(right, m, x)
        target = {m: H.counit[k] * x for m, x in unit.items() if H.counit[k]}
        return left == target == right

    bad = first(antipode_ok, ((k,) for k in range(n)))
    rep.add("antipode", bad is None, bad)
    rep.add("antipode invertible", rank(H.antipode) == n)

    # generators must generate, otherwise generator-based shortcuts are unsound
    red = RowReducer(n, f)
    frontier = [unit]
    red.add(unit)
    while frontier:
        nxt = []
        for a in frontier:
            for g in H._gens:
                b = H._mul(a, g)
                if red.add(b):
                    nxt.append(b)
        frontier = nxt
    rep.add("generators span algebra", red.rank == n, detail=f"span {red.rank} of {n}")
    return rep


def validate_ribbon(H: HopfAlgebra, ribbon: RibbonStructure | None = None) -> ValidationReport:
    """Quasitriangularity, ribbon and pivot axioms, checked exactly."""
    rs = _ribbon_of(H, ribbon)
    rep = ValidationReport(f"braiding {H.name}".strip())
    n, f = H.dim, H.field
    one = f.one
    R = H.pairs(rs.r_matrix)
    Rinv: dict = {}
    for (i, j), c in R.items():
        for k, x in H._antipode({i: c}).items():
            _acc(Rinv, (k, j), x)
    rep.add("R invertible", H._mul2(R, Rinv) == H.one2() == H._mul2(Rinv, R))

    bad = None
    for gi, g in enumerate(H._gens):
        d = H._coproduct(g)
        if H._mul2(H.flip(d), R) != H._mul2(R, d):
            bad = (gi,)
            break
    rep.add("R intertwines coproduct", bad is None, bad)

    u1 = _sparse(H.unit)
    R13 = {(i, k, j): (c * x) for (i, j), c in R.items() for k, x in u1.items()}
    R23 = {(k, i, j): (c * x) for (i, j), c in R.items() for k, x in u1.items()}
    R12 = {(i, j, k): (c * x) for (i, j), c in R.items() for k, x in u1.items()}
    left: dict = {}
    right: dict = {}
    for (i, j), c in R.items():
        for (p, q), d in H._co[i].items():
            _acc(left, (p, q, j), c * d)
        for (p, q), d in H._co[j].items():
            _acc(right, (i, p, q), c * d)
    rep.add("(Delta x id) R = R13 R23", left == H._mul3(R13, R23))
    rep.add("(id x Delta) R = R13 R12", right == H._mul3(R13, R12))

    g = _sparse(rs.pivot)
    rep.add("pivot grouplike", H._coproduct(g) == {(i, j): x * y for i, x in g.items() for j, y in g.items()}
            and H.counit_of(g) == one)
    bad = None
    for ai, a in enumerate(H._gens):
        s2 = H._antipode(H._antipode(a))
        if H._mul(s2, g) != H._mul(g, a):
            bad = (ai,)
            break
    rep.add("pivot implements s^2", bad is None, bad)

    if rs.ribbon is not None:
        v = _sparse(rs.ribbon)
        u = _sparse(rs.drinfeld_element)
        rep.add("ribbon central", H.is_central(rs.ribbon))
        rep.add("v^2 = u s(u)", H._mul(v, v) == H._mul(u, H._antipode(u)))
        rep.add("counit of v", H.counit_of(v) == one)
        rep.add("s(v) = v", H._antipode(v) == v)
        Q = _monodromy(H, rs)
        vv = {(i, j): x * y for i, x in v.items() for j, y in v.items()}
        rep.add("Q Delta(v) = v x v", H._mul2(Q, H._coproduct(v)) == vv)
    return rep


# integrals

def _one_dim_kernel(red: RowReducer, what: str) -> tuple:
    ker = red.kernel()
    if len(ker) != 1:
        raise InternalError(f"{what} space has dimension {len(ker)}, expected 1")
    v = ker[0]
    lead = next(x for x in v if x)
    return tuple(x / lead for x in v)


def left_integral(H: HopfAlgebra) -> tuple:
    """Lambda with h Lambda = eps(h) Lambda; first nonzero coordinate is 1."""
    n = H.dim
    red = RowReducer(n, H.field)
    one = H.field.one
    for a in H._gens:
        rows: dict[int, dict] = {}
        for j in range(n):
            for k, c in H._mul(a, {j: one}).items():
                _acc(rows.setdefault(k, {}), j, c)
        e = H.counit_of(a)
        if e:
            for k in range(n):
                _acc(rows.setdefault(k, {}), k, -e)
        for r in rows.values():
            if r:
                red.add(r)
    return _one_dim_kernel(red, "left integral")


def _cointegral(H: HopfAlgebra, left: bool, what: str) -> tuple:
    n = H.dim
    red = RowReducer(n, H.field)
    unit = H.unit
    for m in range(n):
        rows: dict[int, dict] = {}
        for (i, j), c in H._co[m].items():
            # right: sum_i lambda_i c b_j ; left: sum_j lambda_j c b_i
            out, var = (i, j) if left else (j, i)
            _acc(rows.setdefault(out, {}), var, c)
        for j, u in enumerate(unit):
            if u:
                _acc(rows.setdefault(j, {}), m, -u)
        for r in rows.values():
            if r:
                red.add(r)
    return _one_dim_kernel(red, what)


def right_cointegral(H: HopfAlgebra) -> tuple:
    """lambda with (lambda x id) Delta(h) = lambda(h) 1; first nonzero coordinate is 1."""
    return _cointegral(H, False, "right cointegral")


def left_cointegral(H: HopfAlgebra) -> tuple:
    """lambda with (id x lambda) Delta(h) = lambda(h) 1; first nonzero coordinate is 1.

    For unimodular H this is the cointegral with lambda(ab) = lambda(b s^2(a)),
    the form matching the class-function condition, so it is the one the
    normalization uses.
    """
    return _cointegral(H, True, "left cointegral")


def check_unimodular(H: HopfAlgebra) -> bool:
    lam = _sparse(left_integral(H))
    one = H.field.one
    for a in range(H.dim):
        e = H.counit[a]
        if H._mul(lam, {a: one}) != {k: e * x for k, x in lam.items() if e}:
            return False
    return H._antipode(lam) == lam


# braiding-derived maps

def _memo(H: Algebra, key, value):
    cache = H.__dict__.setdefault("_memo", {})
    hit = cache.get(key)
    if hit is not None and hit[0] is key[1]:
        return hit[1]
    val = value()
    cache[key] = (key[1], val)
    return val


def _monodromy(H: HopfAlgebra, rs: RibbonStructure) -> dict:
    def compute():
        R = H.pairs(rs.r_matrix)
        return H._mul2(H.flip(R), R)
    return _memo(H, ("Q", rs), compute)


def monodromy(H: HopfAlgebra, ribbon: RibbonStructure | None = None) -> tuple:
    """Q = R21 R as an n^2 coefficient vector."""
    return H.vec2(_monodromy(H, _ribbon_of(H, ribbon)))


def drinfeld_matrix(H: HopfAlgebra, ribbon: RibbonStructure | None = None) -> Matrix:
    """Matrix of f -> (id x f)(Q) from the dual basis to the basis.

    The functional is applied to the second leg of Q = R21 R: with that leg,
    functionals obeying f(ab) = f(b s^2(a)) are sent into the center.
    """
    rs = _ribbon_of(H, ribbon)

    def compute():
        n = H.dim
        Q = _monodromy(H, rs)
        zero = H.field.zero
        return Matrix([[Q.get((j, i), zero) for i in range(n)] for j in range(n)], H.field)
    return _memo(H, ("drinfeld", rs), compute)


def drinfeld_map(H: HopfAlgebra, ribbon: RibbonStructure | None, f: Sequence) -> tuple:
    return drinfeld_matrix(H, ribbon).apply(f)


def frobenius_matrix(H: HopfAlgebra, lam: Sequence) -> Matrix:
    """Matrix of h -> lambda(. h) from the basis to the dual basis."""
    lam = tuple(lam)
    zero = H.field.zero
    rows = []
    for i in range(H.dim):
        row = []
        for j in range(H.dim):
            row.append(sum((c * lam[k] for k, c in H._table[i][j].items()), zero))
        rows.append(row)
    return Matrix(rows, H.field)


def frobenius_map(H: HopfAlgebra, lam: Sequence, h: Sequence) -> tuple:
    """The functional x -> lambda(x h)."""
    hs = _sparse(h)
    one = H.field.one
    out = []
    for i in range(H.dim):
        xh = H._mul({i: one}, hs)
        out.append(sum((c * lam[k] for k, c in xh.items()), H.field.zero))
    return tuple(out)


def check_factorizable(H: HopfAlgebra, ribbon: RibbonStructure | None = None) -> bool:
    return rank(drinfeld_matrix(H, ribbon)) == H.dim


def inverse_antipode_pullback(H: HopfAlgebra, f: Sequence) -> tuple:
    """The functional f o s^-1."""
    cols = H._antipode_inverse_cols()
    zero = H.field.zero
    return tuple(sum((c * f[k] for k, c in cols[i].items()), zero) for i in range(H.dim))


def modular_element(H: HopfAlgebra, lam: Sequence) -> tuple:
    """The element b with lambda o s^-1 = lambda(. b); grouplike, and 1 iff lambda o s = lambda."""
    sol = solve(frobenius_matrix(H, lam), inverse_antipode_pullback(H, lam))
    if sol.kernel_basis:
        raise InternalError("cointegral is degenerate")
    return sol.particular


def transported_inverse_antipode(H: HopfAlgebra, lam: Sequence, f: Sequence,
                                 b: Sequence | None = None) -> tuple:
    """The inverse antipode on class functions, transported from the center.

    The Frobenius map z -> lambda(. z) identifies Z(H) with C(H); carrying
    z -> s^-1(z) across gives f -> f(s(.) b) with b the modular element.
    When lambda o s = lambda (b = 1, e.g. semisimple or s^2 = id) this is
    literally f o s^-1 on class functions.
    """
    if b is None:
        b = modular_element(H, lam)
    bs = _sparse(b)
    zero = H.field.zero
    out = []
    for i in range(H.dim):
        y = H._mul(H._s[i], bs)
        out.append(sum((c * f[k] for k, c in y.items()), zero))
    return tuple(out)


def s_on_functional(H: HopfAlgebra, ribbon: RibbonStructure | None, lam: Sequence, f: Sequence) -> tuple:
    """Frobenius transport of the Drinfeld image: x -> lambda(x f_Q(f))."""
    return frobenius_map(H, lam, drinfeld_map(H, ribbon, f))


def s_on_center(H: HopfAlgebra, ribbon: RibbonStructure | None, lam: Sequence, z: Sequence) -> tuple:
    """The same transform on the center side: z -> f_Q(lambda(. z))."""
    return drinfeld_map(H, ribbon, frobenius_map(H, lam, z))


# invariant subspaces

def _echelon(red: RowReducer) -> list[tuple]:
    ker = red.kernel()
    if not ker:
        return []
    from .linalg import span_basis
    return span_basis(ker, len(ker[0]), red.field)


def center(A: Algebra) -> list[tuple]:
    """Echelon basis of the center, from commutators with the generators."""
    n = A.dim
    red = RowReducer(n, A.field)
    one = A.field.one
    for g in A._gens:
        rows: dict[int, dict] = {}
        for j in range(n):
            for k, c in A._mul({j: one}, g).items():
                _acc(rows.setdefault(k, {}), j, c)
            for k, c in A._mul(g, {j: one}).items():
                _acc(rows.setdefault(k, {}), j, -c)
        for r in rows.values():
            if r:
                red.add(r)
    return _echelon(red)


def class_functions(H: HopfAlgebra, ribbon: RibbonStructure | None = None) -> list[tuple]:
    """Echelon basis of {f : f(ab) = f(b s^2(a))}."""
    del ribbon  # condition only involves s^2
    n = H.dim
    one = H.field.one
    red = RowReducer(n, H.field)
    for a in H._gens:
        s2 = H._antipode(H._antipode(a))
        for b in range(n):
            row = H._mul(a, {b: one})
            for k, c in H._mul({b: one}, s2).items():
                _acc(row, k, -c)
            if row:
                red.add(row)
    return _echelon(red)


def reynolds_ideal(H: HopfAlgebra, ribbon: RibbonStructure | None, simples: Iterable) -> list[tuple]:
    """Span of Drinfeld images of the characters of ``simples``.

    Items may be modules (their q-character is taken) or functionals.
    """
    from .linalg import span_basis
    from .rep import Representation, qcharacter
    rs = _ribbon_of(H, ribbon)
    D = drinfeld_matrix(H, rs)
    vecs = []
    for s in simples:
        chi = qcharacter(s, rs) if isinstance(s, Representation) else tuple(s)
        vecs.append(D.apply(chi))
    return span_basis(vecs, H.dim, H.field)


# normalization

@dataclass(frozen=True)
class NormalizedPair:
    integral: tuple
    cointegral: tuple
    sign: int
    kappa: object  # S0^2 = kappa * s^-1 on the center for the unnormalized cointegral


def _ratio(a: Sequence, b: Sequence):
    k = next((i for i, x in enumerate(b) if x), None)
    if k is None:
        return None
    r = a[k] / b[k]
    return r if all(x == r * y for x, y in zip(a, b)) else None


def normalize_pair(H: HopfAlgebra, ribbon: RibbonStructure | None = None) -> NormalizedPair:
    """Fix (Lambda, lambda) with lambda(Lambda) = 1 and S^2 = s^-1.

    The scale kappa of S0^2 against s^-1 is read off on the center, where the
    inverse antipode acts literally; S scales linearly with lambda, so
    lambda = +-kappa^(-1/2) lambda0.  Both signs satisfy S^2 = s^-1, so the
    sign is fixed by making the first nonzero coordinate of Lambda positive in
    the principal embedding.
    """
    rs = _ribbon_of(H, ribbon)
    if not check_factorizable(H, rs):
        raise NormalizationFailure("Drinfeld map is not bijective")
    lam0 = left_cointegral(H)
    Lam0 = left_integral(H)
    kappa = None
    for z in center(H):
        r = _ratio(s_on_center(H, rs, lam0, s_on_center(H, rs, lam0, z)),
                   H.apply_antipode(z, inverse=True))
        if r is None:
            raise NormalizationFailure("S^2 is not proportional to the inverse antipode")
        if kappa is None:
            kappa = r
        elif kappa != r:
            raise NormalizationFailure("S^2 has no uniform scale on the center")
    if not kappa:
        raise NormalizationFailure("S vanishes")
    try:
        c = sqrt(H.field.one / kappa, H.field)
    except MissingRoot as exc:
        raise NormalizationFailure(f"scale 1/({kappa}) has no square root in {H.field!r}") from exc
    pairing = sum((a * b for a, b in zip(lam0, Lam0)), H.field.zero)
    if not pairing:
        raise NormalizationFailure("lambda(Lambda) = 0")
    sign = 1
    lam = tuple(c * x for x in lam0)
    Lam = tuple(x / (c * pairing) for x in Lam0)
    lead = next(x for x in Lam if x)
    if not _positive(lead):
        sign = -1
        lam = tuple(-x for x in lam)
        Lam = tuple(-x for x in Lam)
    return NormalizedPair(Lam, lam, sign, kappa)


# ribbon search

def ribbon_candidates(H: HopfAlgebra, r_matrix: Sequence, grouplikes: Iterable[Sequence]) -> list[tuple]:
    """Ribbon elements of the form v = g^-1 u for the given grouplike candidates g.

    Every ribbon element arises this way from the pivot u v^-1, so passing
    all grouplikes makes the search exhaustive.
    """
    found = []
    for g in grouplikes:
        try:
            rs = RibbonStructure.build(H, r_matrix, pivot=g)
        except ValueError:
            continue
        v = H.product(H.inverse(rs.pivot), rs.drinfeld_element)
        try:
            cand = RibbonStructure.build(H, r_matrix, ribbon=v)
        except ValueError:
            continue
        if validate_ribbon(H, cand).passed:
            found.append(v)
    return found
