"""Exact scalars: the rationals and cyclotomic fields Q(zeta_n).

Rationals are plain :class:`fractions.Fraction` values.  Elements of Q(zeta_n)
for phi(n) > 1 are :class:`Cyclotomic` instances, stored in the power basis
``1, z, ..., z^(phi(n)-1)`` reduced modulo the n-th cyclotomic polynomial,
with integer coefficients over one positive common denominator.

Every computation happens inside one :class:`Field`.  Python ints and
Fractions are accepted as operands everywhere, since Q sits inside every
field; two cyclotomic elements of different orders never mix.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import mpmath

__all__ = [
    "Field", "Cyclotomic", "FieldElement", "QQ",
    "FieldMismatch", "MissingRoot",
    "cyclotomic_polynomial", "euler_phi",
    "conjugate", "approximate", "sqrt", "roots_in_field", "primitive_root",
    "field_of", "to_str", "parse",
]

MAX_DIGITS = 15


class FieldMismatch(TypeError):
    """Raised when elements of two different cyclotomic fields are combined."""


class MissingRoot(ValueError):
    """Raised when a requested root does not lie in the working field."""


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den is monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class Field:
    """The field Q(zeta_n); ``Field(1)`` is Q itself.

    Instances are interned per order, so ``Field(8) is Field(8)``.
    """

    _instances: dict[int, "Field"] = {}

    def __new__(cls, order: int = 1):
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        if order in cls._instances:
            return cls._instances[order]
        self = super().__new__(cls)
        self.order = order
        self.degree = euler_phi(order)
        cls._instances[order] = self
        if self.degree > 1:
            self._init_tables()
        return self

    def __reduce__(self):
        return (Field, (self.order,))

    def _init_tables(self) -> None:
        n, phi = self.order, self.degree
        cyc = cyclotomic_polynomial(n)
        # reduced vector of x^k for 0 <= k < n
        powers: list[tuple[int, ...]] = []
        vec = [1] + [0] * (phi - 1)
        for _ in range(n):
            powers.append(tuple(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for j in range(phi):
                    vec[j] -= top * cyc[j]
        self._powers = powers
        self.units = tuple(k for k in range(1, n) if math.gcd(k, n) == 1)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __repr__(self) -> str:
        return "QQ" if self.order == 1 else f"Field({self.order})"

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def zeta(self):
        """The primitive root e^(2 pi i / n) as a field element."""
        return self.root_of_unity(1)

    def root_of_unity(self, k: int):
        if self.is_rational:
            if self.order == 2 and k % 2:
                return Fraction(-1)
            return Fraction(1)
        return Cyclotomic._make(self, self._powers[k % self.order], 1)

    def __call__(self, x) -> "FieldElement":
        """Promote an int, Fraction or element of this field into the field."""
        if isinstance(x, Cyclotomic):
            if x.field is not self:
                raise FieldMismatch(f"{x.field!r} element used in {self!r}")
            return x
        if isinstance(x, str):
            return parse(x, self)
        q = Fraction(x)
        if self.is_rational:
            return q
        return Cyclotomic._make(self, (q.numerator,) + (0,) * (self.degree - 1), q.denominator)

    def from_coefficients(self, coeffs: Sequence) -> "FieldElement":
        """Element sum(coeffs[k] * z^k); coefficients may exceed the degree."""
        if self.is_rational:
            z = self.zeta
            return sum((Fraction(c) * z ** k for k, c in enumerate(coeffs)), Fraction(0))
        qs = [Fraction(c) for c in coeffs]
        den = 1
        for q in qs:
            den = den * q.denominator // math.gcd(den, q.denominator)
        acc = [0] * self.degree
        for k, q in enumerate(qs):
            if q:
                c = q.numerator * (den // q.denominator)
                for j, p in enumerate(self._powers[k % self.order]):
                    if p:
                        acc[j] += c * p
        return Cyclotomic._make(self, tuple(acc), den)

    def contains(self, x) -> bool:
        if isinstance(x, Cyclotomic):
            return x.field is self
        return isinstance(x, (int, Fraction))


QQ = Field(1)


class Cyclotomic:
    """Element of Q(zeta_n) with phi(n) > 1, immutable."""

    __slots__ = ("field", "coeffs", "den", "_hash")

    def __init__(self, field: Field, coeffs: Iterable, den: int = 1):
        if field.is_rational:
            raise ValueError("use Fraction for elements of Q")
        made = field.from_coefficients([Fraction(c, den) for c in coeffs])
        self.field, self.coeffs, self.den = made.field, made.coeffs, made.den
        self._hash = None

    @classmethod
    def _make(cls, field: Field, coeffs: tuple[int, ...], den: int) -> "Cyclotomic":
        g = den
        for c in coeffs:
            if c:
                g = math.gcd(g, c)
                if g == 1:
                    break
        if not any(coeffs):
            den, g = 1, 1
        if g != 1:
            coeffs = tuple(c // g for c in coeffs)
            den //= g
        self = object.__new__(cls)
        self.field = field
        self.coeffs = coeffs
        self.den = den
        self._hash = None
        return self

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other) -> "Cyclotomic | None":
        if isinstance(other, Cyclotomic):
            if other.field is not self.field:
                raise FieldMismatch(f"cannot combine {self.field!r} and {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic._make(self.field, (q.numerator,) + (0,) * (self.field.degree - 1),
                                    q.denominator)
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Cyclotomic._make(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)),
                                    self.den)
        d1, d2 = self.den, o.den
        return Cyclotomic._make(self.field,
                                tuple(a * d2 + b * d1 for a, b in zip(self.coeffs, o.coeffs)),
                                d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._make(self.field, tuple(-a for a in self.coeffs), self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclotomic._make(self.field, tuple(a * other for a in self.coeffs), self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        phi = self.field.degree
        a, b = self.coeffs, o.coeffs
        prod = [0] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:phi]
        powers = self.field._powers
        n = self.field.order
        for k in range(phi, 2 * phi - 1):
            c = prod[k]
            if c:
                for j, p in enumerate(powers[k % n]):
                    if p:
                        out[j] += c * p
        return Cyclotomic._make(self.field, tuple(out), self.den * o.den)

    __rmul__ = __mul__

    def galois(self, k: int) -> "Cyclotomic":
        """Image under the automorphism z -> z^k (k coprime to the order)."""
        n = self.field.order
        if math.gcd(k, n) != 1:
            raise ValueError("Galois exponent must be a unit mod the order")
        powers = self.field._powers
        out = [0] * self.field.degree
        for j, c in enumerate(self.coeffs):
            if c:
                for i, p in enumerate(powers[(j * k) % n]):
                    if p:
                        out[i] += c * p
        return Cyclotomic._make(self.field, tuple(out), self.den)

    def norm(self) -> Fraction:
        prod = self
        for k in self.field.units[1:]:
            prod = prod * self.galois(k)
        return prod.rational()

    def inverse(self) -> "Cyclotomic":
        if not self:
            raise ZeroDivisionError("division by zero in " + repr(self.field))
        others = None
        for k in self.field.units[1:]:
            g = self.galois(k)
            others = g if others is None else others * g
        if others is None:  # pragma: no cover - degree 1 never reaches here
            return self._coerce(1 / self.rational())
        nrm = (self * others).rational()
        return others * (1 / nrm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            q = o.rational()
            if q == 0:
                raise ZeroDivisionError("division by zero in " + repr(self.field))
            return Cyclotomic._make(self.field, tuple(a * q.denominator for a in self.coeffs),
                                    self.den * q.numerator) if q > 0 else \
                Cyclotomic._make(self.field, tuple(-a * q.denominator for a in self.coeffs),
                                 self.den * -q.numerator)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self._coerce(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs[0], self.den)

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclotomic):
            return (self.field is other.field and self.den == other.den
                    and self.coeffs == other.coeffs)
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.coeffs[0], self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.coeffs[0], self.den))
            else:
                self._hash = hash((self.field.order, self.coeffs, self.den))
        return self._hash

    def coefficient_list(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"Cyclotomic({self.field.order}, '{to_str(self)}')"

    def __str__(self) -> str:
        return to_str(self)


FieldElement = Union[Fraction, Cyclotomic]


def field_of(x) -> Field:
    return x.field if isinstance(x, Cyclotomic) else QQ


def primitive_root(field: Field, n: int):
    """A primitive n-th root of unity in ``field``; raises ValueError if there is none."""
    m = field.order
    if n == 1:
        return field.one
    if m % n == 0:
        return field.root_of_unity(m // n)
    if m % 2 and (2 * m) % n == 0:
        # Q(zeta_m) with m odd contains zeta_2m = -zeta_m^((m+1)/2)
        z2m = -field.root_of_unity((m + 1) // 2)
        return z2m ** ((2 * m) // n)
    raise ValueError(f"{field!r} has no primitive {n}-th root of unity")


def conjugate(a):
    """Complex conjugation, i.e. the automorphism z -> z^-1."""
    if isinstance(a, Cyclotomic):
        return a.galois(a.field.order - 1)
    return a


def _embed(a, k: int, order: int):
    # value of a under z -> exp(2 pi i k / order), as mpmath mpc
    if not isinstance(a, Cyclotomic):
        return mpmath.mpc(mpmath.mpf(Fraction(a).numerator) / Fraction(a).denominator)
    z = mpmath.exp(2j * mpmath.pi * k / order)
    acc = mpmath.mpc(0)
    zp = mpmath.mpc(1)
    for c in a.coeffs:
        if c:
            acc += c * zp
        zp *= z
    return acc / a.den


def approximate(a, digits: int = 15) -> tuple[float, float]:
    """Complex value of ``a`` under zeta_n = exp(2 pi i / n), as (re, im)."""
    if not 1 <= digits <= MAX_DIGITS:
        raise ValueError(f"digits must be between 1 and {MAX_DIGITS}")
    with mpmath.workdps(digits + 15):
        val = _embed(a, 1, field_of(a).order)
        return float(val.real), float(val.imag)


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@lru_cache(maxsize=None)
def _inverse_vandermonde(order: int, dps: int):
    field = Field(order)
    with mpmath.workdps(dps):
        rows = []
        for k in field.units:
            z = mpmath.exp(2j * mpmath.pi * k / order)
            rows.append([z ** j for j in range(field.degree)])
        return mpmath.inverse(mpmath.matrix(rows))


def _principal_key(x) -> tuple[int, int]:
    re, im = approximate(x, 15)
    tol = 1e-12
    if abs(re) > tol:
        return (1 if re > 0 else -1, 0)
    return (0, 1 if im > 0 else -1)


def roots_in_field(coeffs: Sequence, field: Field | None = None) -> list:
    """All roots lying in ``field`` of the polynomial sum(coeffs[k] t^k).

    Candidates are assembled from numerical roots under every complex
    embedding and then accepted only after exact verification, so a
    returned value is always a true root.
    """
    if field is None:
        fields = {field_of(c) for c in coeffs if isinstance(c, Cyclotomic)}
        if len(fields) > 1:
            raise FieldMismatch("polynomial coefficients from several fields")
        field = fields.pop() if fields else QQ
    cs = [field(c) for c in coeffs]
    while cs and not cs[-1]:
        cs.pop()
    if len(cs) <= 1:
        return []
    deg = len(cs) - 1

    def value(t):
        acc = field.zero
        for c in reversed(cs):
            acc = acc * t + c
        return acc

    found: list = []

    def accept(t):
        if not value(t) and t not in found:
            found.append(t)

    if not any(cs[1:-1]) and deg == 2 and field.is_rational:
        r = _rational_sqrt(-cs[0] / cs[2])
        if r is not None:
            accept(r)
            accept(-r)
        return found
    dps = 60
    with mpmath.workdps(dps):
        if field.is_rational:
            poly = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(cs)]
            for r in mpmath.polyroots(poly, maxsteps=200, extraprec=200):
                if abs(mpmath.im(r)) < mpmath.mpf(10) ** -30:
                    cand = Fraction(str(mpmath.nstr(mpmath.re(r), 40))).limit_denominator(10 ** 15)
                    accept(cand)
            return found
        units = field.units
        index = {k: i for i, k in enumerate(units)}
        reps = [k for k in units if k < field.order - k]
        root_lists = {}
        for k in reps:
            poly = [_embed(c, k, field.order) for c in reversed(cs)]
            root_lists[k] = mpmath.polyroots(poly, maxsteps=200, extraprec=200)
        vinv = _inverse_vandermonde(field.order, dps)
        for choice in itertools.product(*(root_lists[k] for k in reps)):
            y = [None] * len(units)
            for k, r in zip(reps, choice):
                y[index[k]] = r
                y[index[field.order - k]] = mpmath.conj(r)
            c = vinv * mpmath.matrix(y)
            coeffs_q = []
            ok = True
            for j in range(field.degree):
                cj = c[j]
                if abs(mpmath.im(cj)) > mpmath.mpf(10) ** -25:
                    ok = False
                    break
                coeffs_q.append(Fraction(mpmath.nstr(mpmath.re(cj), 45)).limit_denominator(10 ** 15))
            if ok:
                accept(field.from_coefficients(coeffs_q))
    return found


def _squarefree_part(n: int) -> tuple[int, int]:
    """n = s * r^2 with s squarefree; returns (s, r)."""
    s, r, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            r *= p
        if n % p == 0:
            n //= p
            s *= p
        p += 1
    return s * n, r


def _gauss_sqrt(p: int, field: Field):
    """Positive sqrt(p) for a prime p, from Gauss sums; None if not in the field."""
    n = field.order
    if p == 2:
        if n % 8:
            return None
        z = field.root_of_unity(n // 8)
        return z + z ** 7
    if n % p:
        return None
    z = field.root_of_unity(n // p)
    g = field.zero
    for a in range(1, p):
        leg = pow(a, (p - 1) // 2, p)
        g = g + (z ** a if leg == 1 else -(z ** a))
    if p % 4 == 1:
        return g
    if n % 4:
        return None
    return -field.root_of_unity(n // 4) * g  # g = i sqrt(p)


def _closed_form_sqrt(q: Fraction, field: Field):
    """Positive sqrt of a positive rational via Gauss sums, or None."""
    s, r = _squarefree_part(q.numerator * q.denominator)
    acc = field(Fraction(r, q.denominator))
    p, rest = 2, s
    while rest > 1:
        if rest % p == 0:
            root = _gauss_sqrt(p, field)
            if root is None:
                return None
            acc = acc * root
            rest //= p
        p += 1
    return acc


def sqrt(a, field: Field | None = None):
    """A square root of ``a`` inside its field, or raise :class:`MissingRoot`.

    Of the two roots the one whose principal embedding has positive real
    part (or, if purely imaginary, positive imaginary part) is returned.
    """
    field = field or field_of(a)
    a = field(a)
    if not a:
        return field.zero
    if field.is_rational:
        r = _rational_sqrt(a)
        if r is None:
            raise MissingRoot(f"sqrt({a}) is not rational")
        return r
    if a.is_rational():
        r = _rational_sqrt(abs(a.rational()))
        if r is not None:
            i = field.root_of_unity(field.order // 4) if field.order % 4 == 0 else None
            if a.rational() > 0:
                return field(r)
            if i is not None:
                return i * r
        q = a.rational()
        root = _closed_form_sqrt(abs(q), field)
        if root is not None:
            if q > 0:
                return root
            if field.order % 4 == 0:
                return field.root_of_unity(field.order // 4) * root
    roots = roots_in_field([-a, 0, 1], field)
    if not roots:
        raise MissingRoot(f"sqrt({to_str(a)}) does not lie in {field!r}")
    return max(roots, key=_principal_key)


# -- serialization -------------------------------------------------------

def _q_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_str(a) -> str:
    """Serialize: ``"p/q"`` for rationals, ``"c0 + c1*z + c2*z^2"`` otherwise."""
    if not isinstance(a, Cyclotomic):
        return _q_str(Fraction(a))
    terms = []
    for k, c in enumerate(a.coefficient_list()):
        if not c:
            continue
        if k == 0:
            terms.append(_q_str(c))
        elif k == 1:
            terms.append(f"{_q_str(c)}*z")
        else:
            terms.append(f"{_q_str(c)}*z^{k}")
    return " + ".join(terms) if terms else "0"


def parse(s: str, field: Field = QQ):
    """Inverse of :func:`to_str` within ``field``."""
    s = s.strip()
    if field.is_rational and "z" not in s:
        return Fraction(s)
    coeffs: dict[int, Fraction] = {}
    for term in s.split(" + "):
        term = term.strip()
        if "*z" in term:
            c, _, rest = term.partition("*z")
            k = int(rest[1:]) if rest.startswith("^") else 1
        elif term.endswith("z"):
            c, k = term[:-1] or "1", 1
            c = "-1" if c == "-" else c
        else:
            c, k = term, 0
        coeffs[k] = coeffs.get(k, Fraction(0)) + Fraction(c)
    top = max(coeffs) if coeffs else 0
    return field.from_coefficients([coeffs.get(k, 0) for k in range(top + 1)])
