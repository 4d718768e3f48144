r"""
Graded polynomials over the rationals in the logarithm coefficients.

An element of `MU_* \otimes Q = Q[m_1, m_2, \ldots]` with `|m_i| = 2i` is stored
as a dictionary from packed exponent vectors to rational coefficients.  Every
element is homogeneous; the zero element is homogeneous of every degree.

Monomials are packed into a single integer, eight bits per variable, so that
multiplying monomials is integer addition.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

_BITS = 8
_MASK = (1 << _BITS) - 1


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def mono_key(exponents):
    """Pack ``{i: e}`` (or a sequence indexed from ``m_1``) into a key."""
    if isinstance(exponents, dict):
        items = exponents.items()
    else:
        items = enumerate(exponents, start=1)
    key = 0
    for i, e in items:
        if e < 0 or e > _MASK:
            raise ValueError("exponent out of range: %r" % e)
        key |= e << (_BITS * (i - 1))
    return key


def mono_exponents(key):
    """Unpack a key into ``{i: e}`` with positive exponents only."""
    out = {}
    i = 1
    while key:
        e = key & _MASK
        if e:
            out[i] = e
        key >>= _BITS
        i += 1
    return out


def mono_degree(key):
    return sum(2 * i * e for i, e in mono_exponents(key).items())


def mono_str(key):
    parts = []
    for i, e in sorted(mono_exponents(key).items()):
        parts.append("m%d" % i if e == 1 else "m%d^%d" % (i, e))
    return "*".join(parts)


class GradedRational:
    """Homogeneous element of `Q[m_1, m_2, ...]`."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree, terms=None):
        if degree % 2:
            raise ValueError("internal degree must be even, got %r" % degree)
        self.degree = degree
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if c:
                    self.terms[k] = _norm(c)

    @classmethod
    def _raw(cls, degree, terms):
        obj = cls.__new__(cls)
        obj.degree = degree
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, c):
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return cls._raw(0, {0: c} if c else {})

    @classmethod
    def zero(cls, degree=0):
        return cls._raw(degree, {})

    @classmethod
    def gen(cls, i):
        """The logarithm coefficient `m_i`."""
        if i < 1:
            raise ValueError("generator index must be positive")
        return cls._raw(2 * i, {1 << (_BITS * (i - 1)): 1})

    # -- predicates ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (self.degree == 0)

    def constant_value(self):
        """The rational value of a degree-0 element."""
        if self.degree != 0 and self.terms:
            raise ValueError("element has positive degree")
        return self.terms.get(0, 0)

    def is_integral_in_m(self):
        return all(isinstance(c, int) for c in self.terms.values())

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, GradedRational):
            return other
        if isinstance(other, (int, Rational)):
            return GradedRational.const(other)
        return NotImplemented

    def _check_deg(self, other):
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError(
                "cannot add elements of degrees %d and %d" % (self.degree, other.degree))
        return self.degree if self.terms else other.degree

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        deg = self._check_deg(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            v = terms.get(k, 0) + c
            if v:
                terms[k] = _norm(v)
            else:
                terms.pop(k, None)
        return GradedRational._raw(deg, terms)

    __radd__ = __add__

    def __neg__(self):
        return GradedRational._raw(self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, GradedRational):
            if not other:
                return GradedRational._raw(self.degree, {})
            return GradedRational._raw(
                self.degree, {k: _norm(c * other) for k, c in self.terms.items()})
        if not isinstance(other, GradedRational):
            return NotImplemented
        deg = self.degree + other.degree
        a, b = self.terms, other.terms
        if not a or not b:
            return GradedRational._raw(deg, {})
        if len(a) < len(b):
            a, b = b, a
        out = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return GradedRational._raw(deg, {k: _norm(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, n):
        if not isinstance(n, (int, Rational)) or isinstance(n, GradedRational):
            return NotImplemented
        if not n:
            raise ZeroDivisionError("division by zero")
        return GradedRational._raw(
            self.degree, {k: _norm(Fraction(c) / n) for k, c in self.terms.items()})

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = GradedRational.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison / display -----------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms and (
            not self.terms or self.degree == other.degree)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items())

    def denominator_lcm(self):
        from math import lcm
        out = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                out = lcm(out, c.denominator)
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for k, c in self.sorted_terms():
            m = mono_str(k)
            if not m:
                body = str(abs(c))
            elif abs(c) == 1:
                body = m
            else:
                body = "%s*%s" % (abs(c), m)
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        s = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            s += " %s %s" % (sign, body)
        return s

    def __repr__(self):
        return "GradedRational(%d, %s)" % (self.degree, self)
