"""Programmatic constructions behind the catalog entries.

These are used by ``build.py`` to regenerate the frozen JSON data, and by the
test suite to check that the frozen data matches a fresh construction.
"""
from __future__ import annotations

from typing import Callable, Sequence

from ..hopf import HopfAlgebra, _acc
from ..linalg import Matrix, Tensor3
from ..scalar import QQ, Field, primitive_root

__all__ = [
    "from_rules", "group_algebra", "taft", "drinfeld_double",
    "group_r_matrix", "double_r_matrix", "cyclic_grouplikes", "cyclic_characters",
    "double_grouplikes",
]


def _tensor(n: int, entries: dict, field: Field) -> Tensor3:
    return Tensor3((n, n, n), {k: v for k, v in entries.items() if v}, field)


def from_rules(labels: Sequence[str], field: Field,
               mul: Callable[[int, int], dict],
               comul: Callable[[int], dict],
               counit: Sequence, antipode: Callable[[int], dict],
               unit: int = 0, generators: Sequence[int] | None = None, name: str = "") -> HopfAlgebra:
    """Assemble a Hopf algebra from basis-level rules returning sparse dicts.

    ``generators`` are basis indices here.
    """
    n = len(labels)
    m: dict = {}
    for i in range(n):
        for j in range(n):
            for k, c in mul(i, j).items():
                m[(i, j, k)] = field(c)
    d: dict = {}
    for k in range(n):
        for (i, j), c in comul(k).items():
            d[(k, i, j)] = field(c)
    s = [[field.zero] * n for _ in range(n)]
    for j in range(n):
        for i, c in antipode(j).items():
            s[i][j] = field(c)
    u = [field.one if i == unit else field.zero for i in range(n)]
    gens = None if generators is None else [[field.one if i == g else field.zero for i in range(n)]
                                            for g in generators]
    return HopfAlgebra(_tensor(n, m, field), u, _tensor(n, d, field), [field(x) for x in counit],
                       Matrix(s, field), labels, field, gens, name)


def group_algebra(n: int, field: Field = QQ, name: str = "") -> HopfAlgebra:
    """Group algebra of Z/n with basis g^0 .. g^(n-1)."""
    labels = ["e"] + ["g" if k == 1 else f"g^{k}" for k in range(1, n)]
    return from_rules(
        labels, field,
        mul=lambda i, j: {(i + j) % n: 1},
        comul=lambda k: {(k, k): 1},
        counit=[1] * n,
        antipode=lambda k: {(-k) % n: 1},
        generators=[1 % n] if n > 1 else [0],
        name=name or f"Q[Z/{n}]",
    )


def group_r_matrix(n: int, field: Field, k: int) -> tuple:
    """R = sum_ij zeta^(k i j) e_i (x) e_j in the idempotent basis, as an n^2 vector.

    ``zeta`` is a primitive n-th root of unity in ``field``; k = 0 gives 1 (x) 1.
    """
    zeta = primitive_root(field, n)
    # coefficient of g^a (x) g^b is (1/n^2) sum_ij zeta^(k i j - i a - j b)
    out = []
    for a in range(n):
        for b in range(n):
            acc = field.zero
            for i in range(n):
                for j in range(n):
                    acc = acc + zeta ** ((k * i * j - i * a - j * b) % n)
            out.append(acc / (n * n))
    return tuple(out)


def taft(n: int, field: Field, name: str = "") -> HopfAlgebra:
    """Taft algebra T_n: g^n = 1, x^n = 0, x g = q g x, Delta x = x (x) 1 + g (x) x.

    Basis g^a x^b has index a*n + b; q = exp(2 pi i / n) must lie in ``field``.
    """
    if field.order % n:
        raise ValueError(f"field {field!r} lacks primitive {n}-th roots of unity")
    q = field.root_of_unity(field.order // n)
    one = field.one

    def idx(a, b):
        return (a % n) * n + b

    def mul(i, j):
        a, b = divmod(i, n)
        c, d = divmod(j, n)
        if b + d >= n:
            return {}
        return {idx(a + c, b + d): q ** ((b * c) % n)}

    def lab(a, b):
        parts = []
        if a:
            parts.append("g" if a == 1 else f"g^{a}")
        if b:
            parts.append("x" if b == 1 else f"x^{b}")
        return "".join(parts) or "1"

    labels = [lab(a, b) for a in range(n) for b in range(n)]
    alg = HopfAlgebra(_tensor(n * n, {(i, j, k): c for i in range(n * n) for j in range(n * n)
                                      for k, c in mul(i, j).items()}, field),
                      [one] + [field.zero] * (n * n - 1),
                      _tensor(n * n, {}, field), [0] * (n * n), Matrix.identity(n * n, field),
                      labels, field)
    G, X = idx(1, 0), idx(0, 1)
    dg = {(G, G): one}
    dx = {(X, 0): one, (G, X): one}
    comul_of: list[dict] = []
    anti_of: list[dict] = []
    ginv = {idx(n - 1, 0): one}
    sx = alg._mul(ginv, {X: -one})
    for a in range(n):
        for b in range(n):
            d = {(0, 0): one}
            s = {0: one}
            for _ in range(a):
                d = alg._mul2(d, dg)
            for _ in range(b):
                d = alg._mul2(d, dx)
            for _ in range(b):
                s = alg._mul(s, sx)
            for _ in range(a):
                s = alg._mul(s, ginv)
            comul_of.append(d)
            anti_of.append(s)
    counit = [1 if b == 0 else 0 for a in range(n) for b in range(n)]
    return from_rules(labels, field, mul, lambda k: comul_of[k], counit, lambda k: anti_of[k],
                      generators=[G, X], name=name or f"T_{n}")


def drinfeld_double(H: HopfAlgebra, name: str = "") -> HopfAlgebra:
    """D(H) = H*^cop (x) H with basis e^a (x) b_i at index a*n + i.

    (f (x) a)(f' (x) b) = f . f'(s^-1(a3) ? a1) (x) a2 b
    Delta(f (x) a) = (f2 (x) a1) (x) (f1 (x) a2)
    """
    n = H.dim
    f = H.field
    one = f.one
    t = H._table
    sinv = H._antipode_inverse_cols()
    # Delta^2(b_i) as (p, q, r) -> coefficient
    d2: list[dict] = []
    for i in range(n):
        acc: dict = {}
        for (p, w), c in H._co[i].items():
            for (q, r), e in H._co[w].items():
                _acc(acc, (p, q, r), c * e)
        d2.append(acc)
    # phi[(r, p)][c] = functional t -> coefficient of b_c in s^-1(b_r) b_t b_p
    phi: dict = {}

    def functional(r, p):
        key = (r, p)
        if key not in phi:
            table: dict = {}
            left = sinv[r]
            for tt in range(n):
                prod = H._mul(H._mul(left, {tt: one}), {p: one})
                for c, x in prod.items():
                    table.setdefault(c, {})[tt] = x
            phi[key] = table
        return phi[key]

    # convolution in H*: (e^a * psi)(b_m) = sum_w Delta_m^{a w} psi(b_w)
    conv: list[list] = [[] for _ in range(n)]
    for m in range(n):
        for (a, w), c in H._co[m].items():
            conv[a].append((m, w, c))

    def dual_mul(a: int, psi: dict) -> dict:
        out: dict = {}
        for m, w, c in conv[a]:
            x = psi.get(w)
            if x:
                _acc(out, m, c * x)
        return out

    N = n * n
    mult: dict = {}
    for a in range(n):
        for i in range(n):
            for c in range(n):
                for j in range(n):
                    out: dict = {}
                    for (p, q, r), coef in d2[i].items():
                        psi = functional(r, p).get(c)
                        if not psi:
                            continue
                        left = dual_mul(a, psi)
                        right = t[q][j]
                        for m, x in left.items():
                            for k, y in right.items():
                                _acc(out, m * n + k, coef * x * y)
                    for k, x in out.items():
                        mult[(a * n + i, c * n + j, k)] = x
    mult_t = Tensor3((N, N, N), mult, f)

    # Delta_{H*}(e^a) = sum mu_{xy}^a e^x (x) e^y; the cop structure puts e^y first
    mu_to: list[list] = [[] for _ in range(n)]
    for (x, y, m), c in H.mult.nonzero():
        mu_to[m].append((x, y, f(c)))
    comult: dict = {}
    for a in range(n):
        for i in range(n):
            for x, y, c in mu_to[a]:
                for (p, q), d in H._co[i].items():
                    _acc(comult, (a * n + i, y * n + p, x * n + q), c * d)
    comult_t = Tensor3((N, N, N), comult, f)

    eps_h = H.counit
    unit_h = H.unit
    unit = [f.zero] * N
    for a in range(n):
        for i in range(n):
            if eps_h[a] and unit_h[i]:
                unit[a * n + i] = eps_h[a] * unit_h[i]
    counit = [unit_h[a] * eps_h[i] for a in range(n) for i in range(n)]

    labels = [f"e^{H.basis_labels[a]}|{H.basis_labels[i]}" for a in range(n) for i in range(n)]
    eps_sparse = {a: eps_h[a] for a in range(n) if eps_h[a]}
    proto = HopfAlgebra(mult_t, unit, comult_t, counit, Matrix.identity(N, f), labels, f)

    # S(f (x) a) = (eps (x) s(a)) (f o s^-1 (x) 1)
    one_h = {i: unit_h[i] for i in range(n) if unit_h[i]}
    cols = []
    for a in range(n):
        pull = {}
        for tt in range(n):
            x = sinv[tt].get(a)
            if x:
                pull[tt] = x
        left_f = {(m * n + k): x * y for m, x in pull.items() for k, y in one_h.items()}
        for i in range(n):
            s_a = H._antipode({i: one})
            right = {(m * n + k): x * y for m, x in eps_sparse.items() for k, y in s_a.items()}
            cols.append(proto.vec(proto._mul(right, left_f)))
    antipode = Matrix.from_columns(cols, f, nrows=N)

    # algebra generators: e^a (x) 1 for all a, and eps (x) h for generators h of H
    gens = []
    for a in range(n):
        gens.append(tuple(unit_h[k % n] if k // n == a else f.zero for k in range(N)))
    for h in H.generators:
        gens.append(tuple(eps_h[k // n] * h[k % n] for k in range(N)))
    return HopfAlgebra(mult_t, unit, comult_t, counit, antipode, labels, f,
                       gens, name or f"D({H.name})")


def double_r_matrix(H: HopfAlgebra) -> tuple:
    """R = sum_i (eps (x) b_i) (x) (e^i (x) 1) in D(H)."""
    n = H.dim
    N = n * n
    f = H.field
    eps = {a: H.counit[a] for a in range(n) if H.counit[a]}
    one_h = {k: H.unit[k] for k in range(n) if H.unit[k]}
    out: dict = {}
    for i in range(n):
        for a, x in eps.items():
            for k, y in one_h.items():
                _acc(out, ((a * n + i), (i * n + k)), x * y)
    zero = f.zero
    return tuple(out.get((p, q), zero) for p in range(N) for q in range(N))


def cyclic_grouplikes(H: HopfAlgebra, gen_index: int, order: int) -> list[tuple]:
    """Powers of the grouplike basis element ``gen_index``."""
    one = H.field.one
    out = []
    cur = {i: H.unit[i] for i in range(H.dim) if H.unit[i]}
    for _ in range(order):
        out.append(H.vec(cur))
        cur = H._mul(cur, {gen_index: one})
    return out


def cyclic_characters(H: HopfAlgebra, gen_index: int, order: int) -> list[tuple]:
    """Algebra maps H -> field killing every basis vector that is not a power of ``gen_index``.

    The character sending the grouplike to omega^k is returned for each k.
    """
    f = H.field
    powers = cyclic_grouplikes(H, gen_index, order)
    idx = [next(i for i, x in enumerate(p) if x) for p in powers]
    out = []
    for k in range(order):
        w = primitive_root(f, order) ** k
        chi = [f.zero] * H.dim
        for a, i in enumerate(idx):
            chi[i] = w ** a / powers[a][i]
        out.append(tuple(chi))
    return out


def double_grouplikes(H: HopfAlgebra, characters: Sequence[Sequence], grouplikes: Sequence[Sequence]) -> list[tuple]:
    """Grouplikes chi (x) g of D(H) for characters chi of H and grouplikes g of H."""
    n = H.dim
    out = []
    for chi in characters:
        for g in grouplikes:
            out.append(tuple(chi[a] * g[i] for a in range(n) for i in range(n)))
    return out
