"""Matrix representations of Hopf algebras.

A module is given by one action matrix per basis element of its parent.
Submodule bases are kept in reduced echelon form, so coordinates of a
vector in the submodule are read off at the pivot columns.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .hopf import HopfAlgebra, RibbonStructure, _ribbon_of, _sparse
from .linalg import Matrix, RowReducer, coordinates, kronecker, solve, span_basis
from .scalar import roots_in_field
from .validation import ValidationReport

__all__ = [
    "Representation", "K0Element", "ParentMismatch", "Inconclusive", "UnmatchedFactor",
    "NotInSpan", "NonInteger",
    "validate_module", "trivial", "regular", "tensor", "dual", "qcharacter", "spin",
    "submodule", "quotient", "intertwiners", "is_isomorphic", "is_simple", "simplicity_certificate",
    "find_submodule", "composition_factors", "decompose_K0", "fusion_table",
    "find_simples", "projective_summands", "character_rank", "eigenvalues_in_field",
]


class ParentMismatch(ValueError):
    """Modules over different algebras were combined."""


class Inconclusive(RuntimeError):
    """The probe strategy could neither certify simplicity nor find a submodule."""


class UnmatchedFactor(ValueError):
    """A composition factor matches no registered simple module."""


class NotInSpan(ValueError):
    """Functional lies outside the span of the simple characters."""


class NonInteger(ValueError):
    """Expansion exists but is not integral."""


class Representation:
    """H-module with ``action[i]`` the matrix of basis element ``b_i``."""

    __slots__ = ("parent", "action", "dim", "label")

    def __init__(self, parent: HopfAlgebra, action: Sequence[Matrix], label: str = ""):
        if len(action) != parent.dim:
            raise ValueError("need one action matrix per basis element")
        d = action[0].nrows if action else 0
        for m in action:
            if m.shape != (d, d):
                raise ValueError("action matrices must be square of one size")
        self.parent = parent
        self.action = tuple(action)
        self.dim = d
        self.label = label

    def rho(self, h: Sequence) -> Matrix:
        """Matrix of an arbitrary element."""
        f = self.parent.field
        acc = [[f.zero] * self.dim for _ in range(self.dim)]
        for i, c in enumerate(h):
            if c:
                for r, row in enumerate(self.action[i].rows):
                    ar = acc[r]
                    for s, x in enumerate(row):
                        if x:
                            ar[s] = ar[s] + c * x
        return Matrix._raw(acc, f, self.dim)

    def generator_matrices(self) -> list[Matrix]:
        return [self.rho(g) for g in self.parent.generators]

    def relabel(self, label: str) -> "Representation":
        return Representation(self.parent, self.action, label)

    def __eq__(self, other) -> bool:
        return isinstance(other, Representation) and self.parent is other.parent \
            and self.action == other.action

    def __hash__(self) -> int:
        return hash((id(self.parent), self.action))

    def __repr__(self) -> str:
        return f"Representation({self.label or '?'}, dim={self.dim}, parent={self.parent.name})"


@dataclass(frozen=True)
class K0Element:
    """Integer multiplicities over a registered list of simple labels."""

    labels: tuple
    coeffs: tuple

    def as_multiset(self) -> Counter:
        return Counter({l: c for l, c in zip(self.labels, self.coeffs) if c})

    def __getitem__(self, label):
        return self.coeffs[self.labels.index(label)]

    def render(self) -> str:
        terms = [f"{c}·χ_{l}" for l, c in zip(self.labels, self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


def _same_parent(*mods: Representation) -> HopfAlgebra:
    p = mods[0].parent
    for m in mods[1:]:
        if m.parent is not p:
            raise ParentMismatch(f"{m.parent.name} vs {p.name}")
    return p


def validate_module(M: Representation) -> ValidationReport:
    H = M.parent
    rep = ValidationReport(f"module {M.label}".strip())
    f = H.field
    bad = None
    for i in range(H.dim):
        for j in range(H.dim):
            if M.action[i] @ M.action[j] != M.rho(H.vec(H._table[i][j])):
                bad = (i, j)
                break
        if bad:
            break
    rep.add("multiplicative", bad is None, bad)
    rep.add("unital", M.rho(H.unit) == Matrix.identity(M.dim, f))
    return rep


def trivial(H: HopfAlgebra) -> Representation:
    f = H.field
    return Representation(H, [Matrix([[e]], f) for e in H.counit], "1")


def regular(H: HopfAlgebra) -> Representation:
    """Left regular module."""
    return Representation(H, [H.left_matrix(H.basis(i)) for i in range(H.dim)], "H")


def tensor(M: Representation, N: Representation) -> Representation:
    H = _same_parent(M, N)
    f = H.field
    d = M.dim * N.dim
    action = []
    for k in range(H.dim):
        acc = Matrix.zeros(d, d, f)
        for (i, j), c in H._co[k].items():
            acc = acc + kronecker(M.action[i], N.action[j]).scale(c)
        action.append(acc)
    return Representation(H, action, f"{M.label}⊗{N.label}")


def dual(M: Representation) -> Representation:
    """rho*(h) = rho(s(h))^T."""
    H = M.parent
    action = [M.rho(H.vec(H._s[k])).T for k in range(H.dim)]
    return Representation(H, action, f"{M.label}*")


def qcharacter(M: Representation, ribbon: RibbonStructure | None = None) -> tuple:
    """h -> tr rho(g h) with g the pivot."""
    H = M.parent
    g = M.rho(_ribbon_of(H, ribbon).pivot)
    zero = H.field.zero
    out = []
    for A in M.action:
        t = zero
        for r in range(M.dim):
            gr = g.rows[r]
            for s in range(M.dim):
                if gr[s]:
                    x = A.rows[s][r]
                    if x:
                        t = t + gr[s] * x
        out.append(t)
    return tuple(out)


# spinning and submodules

def _spin_with(mats: Sequence[Matrix], vectors: Iterable[Sequence], d: int, field) -> list[tuple]:
    red = RowReducer(d, field)
    frontier = []
    for v in vectors:
        if red.add(_sparse(v)):
            frontier.append(tuple(v))
    while frontier and red.rank < d:
        nxt = []
        for v in frontier:
            for A in mats:
                w = A.apply(v)
                if red.add(_sparse(w)):
                    nxt.append(w)
        frontier = nxt
    zero = field.zero
    return [tuple(r.get(j, zero) for j in range(d)) for r in red.normalized_rows()]


def spin(M: Representation, v: Sequence | Iterable[Sequence]) -> list[tuple]:
    """Echelon basis of the submodule generated by v (or by a list of vectors)."""
    vs = [v] if v and not isinstance(v[0], (tuple, list)) else list(v)
    if not vs or not any(any(x) for x in vs):
        raise ValueError("spin needs a nonzero vector")
    return _spin_with(M.generator_matrices(), vs, M.dim, M.parent.field)


def _pivots(basis: Sequence[Sequence]) -> list[int]:
    return [next(j for j, x in enumerate(b) if x) for b in basis]


def submodule(M: Representation, basis: Sequence[Sequence], label: str = "") -> Representation:
    """Action on an invariant subspace given by a reduced echelon basis."""
    piv = _pivots(basis)
    f = M.parent.field
    action = []
    for A in M.action:
        cols = []
        for w in basis:
            img = A.apply(w)
            cols.append(tuple(img[p] for p in piv))
        action.append(Matrix.from_columns(cols, f, nrows=len(basis)) if basis else Matrix.zeros(0, 0, f))
    return Representation(M.parent, action, label)


def quotient(M: Representation, basis: Sequence[Sequence], label: str = "") -> Representation:
    """Action on V / W for W spanned by a reduced echelon basis."""
    piv = _pivots(basis)
    free = [j for j in range(M.dim) if j not in set(piv)]
    f = M.parent.field

    def reduce(u):
        u = list(u)
        for p, w in zip(piv, basis):
            c = u[p]
            if c:
                for j, x in enumerate(w):
                    if x:
                        u[j] = u[j] - c * x
        return tuple(u[j] for j in free)

    action = []
    for A in M.action:
        cols = [reduce(A.column(j)) for j in free]
        action.append(Matrix.from_columns(cols, f, nrows=len(free)) if free else Matrix.zeros(0, 0, f))
    return Representation(M.parent, action, label)


def intertwiners(M: Representation, N: Representation) -> list[Matrix]:
    """Basis of Hom_H(M, N) as d_N x d_M matrices."""
    H = _same_parent(M, N)
    f = H.field
    dm, dn = M.dim, N.dim
    red = RowReducer(dn * dm, f)
    for a in H.generators:
        A, B = M.rho(a), N.rho(a)
        # (B X - X A)[r][c] = sum_k B[r][k] X[k][c] - X[r][k] A[k][c]
        for r in range(dn):
            for c in range(dm):
                row: dict = {}
                for k in range(dn):
                    x = B.rows[r][k]
                    if x:
                        row[k * dm + c] = row.get(k * dm + c, 0) + x
                for k in range(dm):
                    x = A.rows[k][c]
                    if x:
                        key = r * dm + k
                        row[key] = row.get(key, 0) - x
                row = {k: v for k, v in row.items() if v}
                if row:
                    red.add(row)
    out = []
    for v in red.kernel():
        out.append(Matrix([list(v[r * dm:(r + 1) * dm]) for r in range(dn)], f, ncols=dm))
    return out


def _probe_combinations(mats: Sequence[Matrix], limit: int = 6):
    if not mats:
        return
    yield from mats
    # small-coefficient sums and a few words, to keep entries from growing
    r = len(mats)
    for k in range(1, limit):
        acc = mats[0]
        for j, m in enumerate(mats[1:], start=1):
            acc = acc + m.scale((k * j) % 3 + 1)
        yield acc
        if r > 1:
            yield mats[k % r] @ mats[(k + 1) % r] + mats[(k + 2) % r]


def is_isomorphic(M: Representation, N: Representation) -> bool:
    if M.dim != N.dim:
        return False
    homs = intertwiners(M, N)
    if not homs:
        return False
    from .linalg import rank
    return any(rank(X) == M.dim for X in _probe_combinations(homs))


def _burnside_rank(M: Representation) -> int:
    d = M.dim
    red = RowReducer(d * d, M.parent.field)
    for A in M.action:
        red.add(_sparse([x for r in A.rows for x in r]))
        if red.rank == d * d:
            break
    return red.rank


def _squarefree(p: list, field) -> list:
    """Squarefree part of a polynomial (coefficients low degree first)."""
    def trim(a):
        while a and not a[-1]:
            a.pop()
        return a

    def divmod_poly(a, b):
        a = list(a)
        q = [field.zero] * max(len(a) - len(b) + 1, 1)
        while len(a) >= len(b) and any(a):
            c = a[-1] / b[-1]
            k = len(a) - len(b)
            q[k] = c
            for i, x in enumerate(b):
                a[i + k] = a[i + k] - c * x
            trim(a)
        return trim(q), a

    def gcd(a, b):
        a, b = trim(list(a)), trim(list(b))
        while b:
            _, r = divmod_poly(a, b)
            a, b = b, r
        return a

    deriv = [p[i] * i for i in range(1, len(p))]
    g = gcd(p, deriv)
    if len(g) <= 1:
        return p
    q, _ = divmod_poly(p, g)
    return q


def _local_minimal_polynomial(A: Matrix, v: Sequence) -> list:
    """Monic minimal polynomial of A relative to v (low degree first)."""
    f = A.field
    seq = [tuple(v)]
    red = RowReducer(A.nrows, f)
    red.add(_sparse(v))
    while True:
        w = A.apply(seq[-1])
        if not red.add(_sparse(w)):
            M = Matrix.from_columns(seq, f, nrows=A.nrows)
            c = solve(M, w).particular
            return [-x for x in c] + [f.one]
        seq.append(w)


def eigenvalues_in_field(A: Matrix) -> list:
    """Distinct eigenvalues of A lying in its field.

    Every eigenvalue is a root of some local minimal polynomial of a basis
    vector, so the union over the basis is complete.
    """
    f = A.field
    seen: list = []
    polys: list = []
    for j in range(A.nrows):
        e = tuple(f.one if i == j else f.zero for i in range(A.nrows))
        mp = _local_minimal_polynomial(A, e)
        if mp in polys:
            continue
        polys.append(mp)
        for c in roots_in_field(_squarefree(mp, f), f):
            if c not in seen:
                seen.append(c)
    return seen


def _eigen_probes(mats: Sequence[Matrix], d: int, field) -> Iterable[list[tuple]]:
    """Kernels of A - c for probe matrices A and roots c of their minimal polynomials."""
    from .linalg import kernel
    for A in _probe_combinations(list(mats)):
        for c in eigenvalues_in_field(A):
            K = kernel(A - Matrix.identity(d, field).scale(c))
            if K:
                yield K


def _spin_basis_vectors(M: Representation) -> list[tuple] | None:
    d = M.dim
    f = M.parent.field
    mats = M.generator_matrices()
    for j in range(d):
        e = tuple(f.one if i == j else f.zero for i in range(d))
        W = _spin_with(mats, [e], d, f)
        if len(W) < d:
            return W
    return None


def find_submodule(M: Representation) -> list[tuple] | None:
    """A proper nonzero submodule (echelon basis) if the probes find one, else None."""
    d = M.dim
    if d <= 1:
        return None
    f = M.parent.field
    mats = M.generator_matrices()
    W = _spin_basis_vectors(M)
    if W is not None:
        return W
    for K in _eigen_probes(mats, d, f):
        for v in K:
            W = _spin_with(mats, [v], d, f)
            if len(W) < d:
                return W
    # proper submodules of the transposed action give annihilators
    tmats = [A.T for A in mats]
    for src in ([tuple(f.one if i == j else f.zero for i in range(d))] for j in range(d)):
        U = _spin_with(tmats, src, d, f)
        if len(U) < d:
            return _annihilator(U, d, f)
    for K in _eigen_probes(tmats, d, f):
        for v in K:
            U = _spin_with(tmats, [v], d, f)
            if len(U) < d:
                return _annihilator(U, d, f)
    return None


def _annihilator(U: Sequence[Sequence], d: int, field) -> list[tuple]:
    from .linalg import kernel
    ker = kernel(Matrix(U, field, ncols=d))
    return span_basis(ker, d, field)


def simplicity_certificate(M: Representation) -> str | None:
    """'burnside' if the action spans all of End(V), 'norton' if Norton's criterion applies."""
    d = M.dim
    if d == 0:
        return None
    if _burnside_rank(M) == d * d:
        return "burnside"
    f = M.parent.field
    mats = M.generator_matrices()
    from .linalg import kernel
    for A in _probe_combinations(mats):
        K = kernel(A)
        if len(K) == 1:
            KT = kernel(A.T)
            if len(_spin_with(mats, K, d, f)) == d and len(_spin_with([m.T for m in mats], KT, d, f)) == d:
                return "norton"
    return None


def is_simple(M: Representation) -> bool:
    if M.dim < 1:
        raise ValueError("zero module")
    if simplicity_certificate(M):
        return True
    if find_submodule(M) is not None:
        return False
    raise Inconclusive(f"cannot decide simplicity of {M.label or 'module'} over {M.parent.field!r}")


# composition factors and K0

def composition_factors(M: Representation, simples: Sequence[Representation]) -> K0Element:
    """Multiplicities of registered simples, by peeling off embedded copies."""
    labels = tuple(s.label for s in simples)
    counts = [0] * len(simples)
    cur = M
    from .linalg import rank
    while cur.dim:
        hit = None
        for idx, S in enumerate(simples):
            if S.dim > cur.dim:
                continue
            for X in _probe_combinations(intertwiners(S, cur)) if S.dim else []:
                if rank(X) == S.dim:
                    hit = (idx, X)
                    break
            if hit:
                break
        if hit is None:
            raise UnmatchedFactor(f"no registered simple embeds into a {cur.dim}-dim factor of {M.label}")
        idx, X = hit
        counts[idx] += 1
        W = span_basis([X.column(j) for j in range(X.ncols)], cur.dim, cur.parent.field)
        cur = quotient(cur, W)
    return K0Element(labels, tuple(counts))


def character_rank(chars: Sequence[Sequence], field) -> int:
    red = RowReducer(len(chars[0]) if chars else 0, field)
    for c in chars:
        red.add(_sparse(c))
    return red.rank


def decompose_K0(f: Sequence, simples: Sequence[Representation],
                 ribbon: RibbonStructure | None = None,
                 characters: Sequence[Sequence] | None = None) -> K0Element:
    """Integer coefficients of f in the basis of simple q-characters."""
    from fractions import Fraction
    labels = tuple(s.label for s in simples)
    if not simples:
        if any(f):
            raise NotInSpan("no simples registered")
        return K0Element((), ())
    H = simples[0].parent
    chars = characters or [qcharacter(S, ribbon) for S in simples]
    c = coordinates(chars, f, H.field)
    if c is None:
        raise NotInSpan("functional lies outside the character span")
    out = []
    for x in c:
        x = H.field(x)
        q = x.rational() if hasattr(x, "rational") and not isinstance(x, Fraction) else Fraction(x)
        if hasattr(x, "is_rational") and not isinstance(x, Fraction) and not x.is_rational():
            raise NonInteger(f"coefficient {x} is not rational")
        if q.denominator != 1:
            raise NonInteger(f"coefficient {q} is not an integer")
        out.append(int(q))
    return K0Element(labels, tuple(out))


def fusion_table(simples: Sequence[Representation], ribbon: RibbonStructure | None = None) -> list:
    """N[i][j][k] = multiplicity of S_k in S_i (x) S_j, from characters."""
    chars = [qcharacter(S, ribbon) for S in simples]
    table = []
    for A in simples:
        row = []
        for B in simples:
            row.append(list(decompose_K0(qcharacter(tensor(A, B), ribbon), simples, ribbon, chars).coeffs))
        table.append(row)
    return table


# discovery helpers used when building the catalog

def find_simples(H: HopfAlgebra, start: Representation | None = None) -> list[Representation]:
    """All simple modules, up to isomorphism, occurring in ``start`` (default: regular module)."""
    pending = [start or regular(H)]
    found: list[Representation] = []
    while pending:
        M = pending.pop()
        if not M.dim:
            continue
        W = _spin_basis_vectors(M) if M.dim > 1 else None
        if W is None:
            if simplicity_certificate(M):
                if not any(is_isomorphic(M, S) for S in found):
                    found.append(M)
                continue
            W = find_submodule(M)
        if W is None:
            raise Inconclusive(f"no submodule found in a {M.dim}-dim module")
        pending.append(submodule(M, W))
        pending.append(quotient(M, W))
    found.sort(key=lambda S: S.dim)
    return found


def projective_summands(H: HopfAlgebra, probes: Sequence[Sequence] | None = None,
                        simples: Sequence[Representation] | None = None) -> list[list[tuple]]:
    """Direct-summand decomposition of the regular module.

    Right multiplication by any element is a module endomorphism of H, so its
    generalized eigenspaces are direct summands; refining by several probe
    elements gives a list of projective submodules (echelon bases).  With
    ``simples`` the search stops once there are sum(dim S) summands, the
    number of indecomposable projectives in H.
    """
    f = H.field
    n = H.dim
    probes = probes if probes is not None else list(H.generators) + [H.basis(i) for i in range(n)]
    target = sum(S.dim for S in simples) if simples else None
    parts = [[H.basis(i) for i in range(n)]]
    for a in probes:
        if target is not None and len(parts) >= target:
            break
        if all(len(P) == 1 for P in parts):
            break
        # matrix of x -> x a
        cols = [H.product(H.basis(j), a) for j in range(n)]
        Ra = Matrix.from_columns(cols, f, nrows=n)
        roots = eigenvalues_in_field(Ra)
        if len(roots) < 2:
            continue
        spaces = [_generalized_eigenspace(Ra, c) for c in roots]
        new_parts = []
        for P in parts:
            if len(P) == 1:
                new_parts.append(P)
                continue
            pieces = [x for x in (_intersect(P, K, n, f) for K in spaces) if x]
            if sum(len(p) for p in pieces) == len(P) and len(pieces) > 1:
                new_parts.extend(pieces)
            else:
                new_parts.append(P)
        parts = new_parts
    return [span_basis(P, n, f) for P in parts]


def _generalized_eigenspace(A: Matrix, c) -> list[tuple]:
    """ker (A - c)^k for k large enough that the kernel has stopped growing."""
    from .linalg import kernel
    n = A.nrows
    f = A.field
    B = A - Matrix.identity(n, f).scale(c)
    Bk = B
    K = kernel(Bk)
    while True:
        Bk = Bk @ B
        K2 = kernel(Bk)
        if len(K2) == len(K):
            return span_basis(K, n, f)
        K = K2


def _intersect(A: Sequence[Sequence], B: Sequence[Sequence], n: int, field) -> list[tuple]:
    from .linalg import kernel
    if not A or not B:
        return []
    cols = list(A) + [tuple(-x for x in b) for b in B]
    K = kernel(Matrix.from_columns(cols, field, nrows=n))
    vecs = []
    for k in K:
        v = [field.zero] * n
        for c, a in zip(k[:len(A)], A):
            if c:
                v = [x + c * y for x, y in zip(v, a)]
        vecs.append(v)
    return span_basis(vecs, n, field)
