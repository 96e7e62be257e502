"""Exact Laurent polynomials in one variable ``t`` and the rational functions
(torsion classes) built from them.

Coefficients live in one of four rings: the integers, the rationals, a prime
field, or complex floats.  Polynomials are stored densely as a lowest
exponent plus a tuple of coefficients with nonzero ends, so the zero
polynomial is ``low == 0, coeffs == ()``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class _NegInfinity:
    """Degree of the zero polynomial.  Compares below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INFINITY"

    __str__ = __repr__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("NEG_INFINITY")

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self


NEG_INFINITY = _NegInfinity()


# ---------------------------------------------------------------------------
# coefficient rings


class Ring:
    name = "ring"
    exact = True
    is_field = True
    zero = 0
    one = 1

    def coerce(self, x):
        raise NotImplementedError

    def norm(self, c):
        return c

    def is_zero(self, c):
        return c == 0

    def div(self, a, b):
        raise NotImplementedError

    def fmt(self, c):
        return str(c)

    def is_negative(self, c):
        """Sign convention used when picking a representative up to +-1."""
        return c < 0

    def __repr__(self):
        return self.name


@dataclass(frozen=True, repr=False)
class Integers(Ring):
    name = "Integers"
    is_field = False

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return int(x.numerator)
        if isinstance(x, float) or isinstance(x, complex):
            raise TypeError("floating value in an exact ring")
        return int(x)

    def div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{a} is not divisible by {b} in the integers")
        return q


@dataclass(frozen=True, repr=False)
class Rationals(Ring):
    name = "Rationals"

    def coerce(self, x):
        if isinstance(x, float) or isinstance(x, complex):
            raise TypeError("floating value in an exact ring")
        if isinstance(x, str):
            return Fraction(x)
        return Fraction(x)

    def div(self, a, b):
        return Fraction(a) / b

    def fmt(self, c):
        return str(c)


@dataclass(frozen=True, repr=False)
class PrimeField(Ring):
    p: int = 2

    def __post_init__(self):
        if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p ** 0.5) + 1)):
            raise ValueError(f"{self.p} is not prime")

    @property
    def name(self):
        return f"PrimeField({self.p})"

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, float) or isinstance(x, complex):
            raise TypeError("floating value in an exact ring")
        return int(x) % self.p

    def norm(self, c):
        return c % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError("division by zero in a prime field")
        return a * pow(b, -1, self.p) % self.p

    def is_negative(self, c):
        return c % self.p > self.p // 2


@dataclass(frozen=True, repr=False)
class ComplexFloat(Ring):
    name = "ComplexFloat"
    exact = False

    def coerce(self, x):
        if isinstance(x, (list, tuple)):
            return complex(x[0], x[1])
        return complex(x)

    def div(self, a, b):
        return a / b

    def fmt(self, c):
        return f"({c.real:.12g}{c.imag:+.12g}j)"

    def is_negative(self, c):
        return c.real < 0 or (c.real == 0 and c.imag < 0)


ZZ = Integers()
QQ = Rationals()
CC = ComplexFloat()


def GF(p):
    return PrimeField(p)


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """A Laurent polynomial ``sum c_e t^e`` over ``ring``.  Immutable."""

    __slots__ = ("low", "coeffs", "ring")

    def __init__(self, coeffs=(), low=0, ring=ZZ, _trusted=False):
        if not _trusted:
            coeffs = [ring.norm(ring.coerce(c)) for c in coeffs]
        else:
            coeffs = list(coeffs)
        i, j = 0, len(coeffs)
        while i < j and ring.is_zero(coeffs[i]):
            i += 1
        while j > i and ring.is_zero(coeffs[j - 1]):
            j -= 1
        if i == j:
            low, coeffs = 0, ()
        else:
            low, coeffs = low + i, tuple(coeffs[i:j])
        object.__setattr__(self, "low", low)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "ring", ring)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # construction ----------------------------------------------------------

    @classmethod
    def from_dict(cls, terms, ring=ZZ):
        terms = {e: c for e, c in terms.items() if not ring.is_zero(ring.norm(ring.coerce(c)))}
        if not terms:
            return cls((), 0, ring)
        lo, hi = min(terms), max(terms)
        return cls([terms.get(e, 0) for e in range(lo, hi + 1)], lo, ring)

    @classmethod
    def constant(cls, c, ring=ZZ):
        return cls([c], 0, ring)

    @classmethod
    def monomial(cls, e, c=1, ring=ZZ):
        return cls([c], e, ring)

    @classmethod
    def zero(cls, ring=ZZ):
        return cls((), 0, ring)

    @classmethod
    def one(cls, ring=ZZ):
        return cls([1], 0, ring)

    # basic queries ---------------------------------------------------------

    @property
    def high(self):
        return self.low + len(self.coeffs) - 1

    def terms(self):
        """Coefficient map exponent -> nonzero coefficient."""
        return {self.low + i: c for i, c in enumerate(self.coeffs) if not self.ring.is_zero(c)}

    def is_zero(self):
        return not self.coeffs

    def is_monomial(self):
        return len(self.terms()) == 1

    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    def trailing(self):
        return self.coeffs[0] if self.coeffs else self.ring.zero

    def degree(self):
        """Span: top exponent minus bottom exponent, NEG_INFINITY for zero."""
        if not self.coeffs:
            return NEG_INFINITY
        return len(self.coeffs) - 1

    def is_monic(self):
        """Top coefficient is +-1."""
        if not self.coeffs:
            return False
        c = self.leading()
        one = self.ring.one
        if self.ring.exact:
            return self.ring.norm(c - one) == 0 or self.ring.norm(c + one) == 0
        return abs(abs(c) - 1) < 1e-9

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if isinstance(self.ring, PrimeField):
            return acc * pow(x, self.low, self.ring.p) % self.ring.p
        if self.low > 0:
            acc = acc * x ** self.low
        elif self.low < 0:
            acc = acc / (Fraction(x) if isinstance(x, int) else x) ** (-self.low)
        return acc

    # conversion ------------------------------------------------------------

    def change_ring(self, ring):
        if isinstance(ring, PrimeField) and isinstance(self.ring, Rationals):
            return LaurentPoly([ring.coerce(c) for c in self.coeffs], self.low, ring)
        if isinstance(ring, ComplexFloat):
            return LaurentPoly([complex(c) for c in self.coeffs], self.low, ring, _trusted=True)
        return LaurentPoly(self.coeffs, self.low, ring)

    def shift(self, k):
        return LaurentPoly(self.coeffs, self.low + k, self.ring, _trusted=True)

    def normalized_shift(self):
        """Same coefficients, lowest exponent moved to 0."""
        return self.shift(-self.low)

    def reverse(self):
        """p(t^-1)."""
        return LaurentPoly(self.coeffs[::-1], -self.high, self.ring, _trusted=True)

    def substitute_power(self, k):
        """p(t^k) for a nonzero integer k."""
        if k == 0:
            raise ValueError("substitution t -> t^0 is not supported")
        return LaurentPoly.from_dict({e * k: c for e, c in self.terms().items()}, self.ring)

    # arithmetic ------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, LaurentPoly):
            return LaurentPoly.constant(other, self.ring)
        if other.ring != self.ring:
            raise TypeError(f"ring mismatch: {self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        out = [self.ring.zero] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.low - lo + i] = c
        for i, c in enumerate(other.coeffs):
            k = other.low - lo + i
            out[k] = out[k] + c
        norm = self.ring.norm
        return LaurentPoly([norm(c) for c in out], lo, self.ring, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.norm
        return LaurentPoly([norm(-c) for c in self.coeffs], self.low, self.ring, _trusted=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c):
        norm = self.ring.norm
        return LaurentPoly([norm(c * a) for a in self.coeffs], self.low, self.ring, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(self.ring.coerce(other))
        other = self._check(other)
        if not self.coeffs or not other.coeffs:
            return LaurentPoly.zero(self.ring)
        a, b = self.coeffs, other.coeffs
        out = [self.ring.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if self.ring.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        norm = self.ring.norm
        return LaurentPoly([norm(c) for c in out], self.low + other.low, self.ring, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if self.is_monomial():
                e, c = next(iter(self.terms().items()))
                inv = self.ring.div(self.ring.one, c)
                return LaurentPoly.monomial(-e, inv, self.ring) ** (-n)
            raise ValueError("negative power of a non-monomial")
        result = LaurentPoly.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod_poly(self, other):
        """Long division of the polynomial parts (both shifted to low 0).

        Returns (q, r) with self = q*other + r up to the exponent shift
        ``self.low - other.low`` absorbed into q.
        """
        other = self._check(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        ring = self.ring
        num = list(self.coeffs)
        den = other.coeffs
        dl = len(den)
        lead = den[-1]
        if len(num) < dl:
            return LaurentPoly.zero(ring), self
        q = [ring.zero] * (len(num) - dl + 1)
        for k in range(len(num) - dl, -1, -1):
            c = num[k + dl - 1]
            if ring.is_zero(c):
                continue
            qc = ring.div(c, lead)
            q[k] = qc
            for i in range(dl):
                num[k + i] = ring.norm(num[k + i] - qc * den[i])
        qpoly = LaurentPoly(q, self.low - other.low, ring, _trusted=True)
        rpoly = LaurentPoly(num, self.low, ring, _trusted=True)
        return qpoly, rpoly

    def exact_div(self, other):
        """Quotient in the Laurent ring; raises ArithmeticError when inexact."""
        other = self._check(other)
        if not self.coeffs:
            return LaurentPoly.zero(self.ring)
        q, r = self.divmod_poly(other)
        if not r.is_zero():
            if self.ring.exact:
                raise ArithmeticError("inexact Laurent polynomial division")
            scale = max(abs(c) for c in self.coeffs)
            if max(abs(c) for c in r.coeffs) > 1e-9 * scale:
                raise ArithmeticError("inexact Laurent polynomial division")
        return q

    __floordiv__ = exact_div

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.ring == other.ring and self.low == other.low and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.constant(other, self.ring)
        return NotImplemented

    def __hash__(self):
        return hash((self.low, self.coeffs, self.ring))

    def derivative(self):
        return LaurentPoly.from_dict({e - 1: e * c for e, c in self.terms().items() if e}, self.ring)

    def content(self):
        """gcd of the coefficients (integers only)."""
        g = 0
        for c in self.coeffs:
            g = gcd(g, int(c))
        return g

    # rendering -------------------------------------------------------------

    def render(self):
        """Canonical text: ascending ``c*t^e`` terms, e.g. ``1 - 3*t + t^2``."""
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.terms().items()):
            neg = self.ring.exact and not isinstance(self.ring, PrimeField) and c < 0
            mag = -c if neg else c
            if e == 0:
                body = self.ring.fmt(mag)
            else:
                mono = "t" if e == 1 else f"t^{e}"
                body = mono if (self.ring.exact and mag == 1) else f"{self.ring.fmt(mag)}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"LaurentPoly({self.render()!r}, ring={self.ring!r})"

    _TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(\*?)(t(?:\^(-?\d+))?)?")

    @classmethod
    def parse(cls, text, ring=ZZ):
        """Inverse of :meth:`render` for exact rings."""
        compact = text.replace(" ", "")
        if compact == "0":
            return cls.zero(ring)
        terms = {}
        pos = 0
        while pos < len(compact):
            m = cls._TERM.match(compact, pos)
            sign, coef, star, mono, exp = m.groups()
            if m.end() == pos or not (coef or mono) or (star and not (coef and mono)):
                raise ValueError(f"cannot parse Laurent polynomial {text!r} at {pos}")
            if pos > 0 and not sign:
                raise ValueError(f"missing sign in {text!r} at {pos}")
            c = ring.coerce(Fraction(coef) if coef else 1)
            if sign == "-":
                c = -c
            e = (int(exp) if exp is not None else 1) if mono else 0
            terms[e] = ring.norm(terms.get(e, ring.zero) + c)
            pos = m.end()
        return cls.from_dict(terms, ring)


def t_poly(ring=ZZ):
    return LaurentPoly.monomial(1, 1, ring)


def poly_degree(p):
    return p.degree()


# ---------------------------------------------------------------------------
# gcd over fields


def _to_field(p):
    if isinstance(p.ring, Integers):
        return p.change_ring(QQ)
    return p


def poly_gcd(a, b):
    """Monic gcd of the polynomial parts over the field of fractions.

    Units ``t^k`` are ignored (the result has lowest exponent 0).
    """
    a, b = _to_field(a).normalized_shift(), _to_field(b).normalized_shift()
    if a.ring.exact is False:
        raise TypeError("gcd needs an exact ring")
    while not b.is_zero():
        _, r = a.divmod_poly(b)
        a, b = b, r.normalized_shift()
    if a.is_zero():
        return a
    return a.scale(a.ring.div(a.ring.one, a.leading()))


def _primitive_integer(p):
    """Clear denominators of a rational polynomial, return primitive ZZ poly."""
    den = 1
    for c in p.coeffs:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return LaurentPoly([c // g for c in ints], p.low, ZZ)


# ---------------------------------------------------------------------------
# rational functions up to +-t^l


class TorsionClass:
    """A quotient ``numerator / denominator`` considered up to ``+-t^l``."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=None):
        if denominator is None:
            denominator = LaurentPoly.one(numerator.ring)
        if numerator.ring != denominator.ring:
            raise TypeError("numerator and denominator over different rings")
        if denominator.is_zero():
            raise ZeroDivisionError("zero denominator")
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator", denominator)

    def __setattr__(self, name, value):
        raise AttributeError("TorsionClass is immutable")

    @property
    def ring(self):
        return self.numerator.ring

    def is_zero(self):
        return self.numerator.is_zero()

    def degree(self):
        if self.numerator.is_zero():
            return NEG_INFINITY
        return self.numerator.degree() - self.denominator.degree()

    def is_monic(self):
        """Quotient of two polynomials with top coefficients +-1."""
        if self.is_zero():
            return False
        ring = self.ring
        ratio = ring.div(self.numerator.leading(), self.denominator.leading())
        if ring.exact:
            return ring.norm(ratio - 1) == 0 or ring.norm(ratio + 1) == 0
        return abs(abs(ratio) - 1) < 1e-9

    def change_ring(self, ring):
        return TorsionClass(self.numerator.change_ring(ring), self.denominator.change_ring(ring))

    def equivalent(self, other):
        """Equality up to a factor +-t^l (cross-multiplication test)."""
        if self.ring != other.ring:
            if {type(self.ring), type(other.ring)} == {Integers, Rationals}:
                return self.change_ring(QQ).equivalent(other.change_ring(QQ))
            raise TypeError("cannot compare torsions over different rings")
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        lhs = (self.numerator * other.denominator).normalized_shift()
        rhs = (other.numerator * self.denominator).normalized_shift()
        if self.ring.exact:
            return lhs == rhs or lhs == -rhs
        return _close(lhs, rhs) or _close(lhs, -rhs)

    def normalize_units(self):
        """Canonical representative: common factors cancelled, both parts
        shifted to lowest exponent 0, numerator's lowest coefficient positive."""
        ring = self.ring
        if self.is_zero():
            return TorsionClass(LaurentPoly.zero(ring), LaurentPoly.one(ring))
        if not ring.exact:
            raise TypeError("normalize_units needs an exact ring")
        num, den = self.numerator.normalized_shift(), self.denominator.normalized_shift()
        g = poly_gcd(num, den)
        if isinstance(ring, Integers):
            g = _primitive_integer(g)
        num, den = num.exact_div(g).normalized_shift(), den.exact_div(g).normalized_shift()
        if isinstance(ring, Integers):
            c = gcd(num.content(), den.content())
            num = LaurentPoly([x // c for x in num.coeffs], 0, ring)
            den = LaurentPoly([x // c for x in den.coeffs], 0, ring)
            if den.trailing() < 0:
                den = -den
        else:
            inv = ring.div(ring.one, den.trailing())
            num, den = num.scale(inv), den.scale(inv)
        if ring.is_negative(num.trailing()):
            num = -num
        return TorsionClass(num, den)

    def __eq__(self, other):
        if not isinstance(other, TorsionClass):
            return NotImplemented
        return self.equivalent(other)

    def __hash__(self):
        return 0

    def render(self):
        return f"({self.numerator.render()})/({self.denominator.render()})"

    def __repr__(self):
        return f"TorsionClass({self.render()!r}, ring={self.ring!r})"


def rational_degree(f):
    return f.degree()


def normalize_units(f):
    return f.normalize_units()


def _close(a, b, tol=1e-9):
    if a.low != b.low or len(a.coeffs) != len(b.coeffs):
        return False
    scale = max([abs(c) for c in a.coeffs] + [1.0])
    return all(abs(x - y) <= tol * scale for x, y in zip(a.coeffs, b.coeffs))


# ---------------------------------------------------------------------------
# determinants


def det_exact(matrix):
    """Determinant of a square matrix of LaurentPoly by fraction-free
    (Bareiss) elimination.  Every intermediate division is exact in the
    Laurent ring, so integer entries never leave the integers."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    if n == 0:
        return LaurentPoly.one(ZZ)
    ring = matrix[0][0].ring
    a = [list(row) for row in matrix]
    sign = 1
    prev = LaurentPoly.one(ring)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly.zero(ring)
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                v = pivot * a[i][j]
                if not aik.is_zero() and not a[k][j].is_zero():
                    v = v - aik * a[k][j]
                a[i][j] = v.exact_div(prev) if not v.is_zero() else v
            a[i][k] = LaurentPoly.zero(ring)
        prev = pivot
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def matrix_from_ints(rows, ring=ZZ):
    """Helper: nested lists of ints / LaurentPoly -> matrix of LaurentPoly."""
    return [[x if isinstance(x, LaurentPoly) else LaurentPoly.constant(x, ring) for x in row] for row in rows]


def matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    ring = a[0][0].ring
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = LaurentPoly.zero(ring)
            for k in range(m):
                if not a[i][k].is_zero() and not b[k][j].is_zero():
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out
