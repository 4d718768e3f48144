r"""
Truncated series `\sum g_{l,j} x^l u^j` in two formal variables with graded
rational coefficients and finitely many negative powers of `u`.

A series is homogeneous of a total degree; the two variables both have
degree ``weight`` (``-2`` for Euler-class–type variables).  The coefficient of
`x^l u^j` therefore has degree ``degree - weight*(l + j)``.  A series keeps
only the coefficients inside its window: x-exponent at most ``max_x`` and
coefficient degree in ``[0, max_deg]``.

Because every coefficient lives in a nonnegatively graded ring, a product
coefficient of degree ``<= max_deg`` only involves factor coefficients of
degree ``<= max_deg``.  Truncating by coefficient degree is therefore exact
under multiplication, even with negative powers of `u`; no precision is lost.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from numbers import Rational

from .errors import NotDivisibleError
from .graded import GradedRational

GR = GradedRational


class XUSeries:
    __slots__ = ("coeffs", "degree", "weight", "max_x", "max_deg")

    def __init__(self, coeffs, degree, max_x, max_deg, weight=-2):
        self.degree = degree
        self.weight = weight
        self.max_x = max_x
        self.max_deg = max_deg
        self.coeffs = {}
        for (l, j), c in coeffs.items():
            if not isinstance(c, GR):
                c = GR.const(c)
            if not c:
                continue
            cd = degree - weight * (l + j)
            if l < 0:
                raise ValueError("negative x-exponent")
            if c.degree != cd:
                raise ValueError(
                    "coefficient of x^%d u^%d has degree %d, expected %d"
                    % (l, j, c.degree, cd))
            if l <= max_x and cd <= max_deg:
                self.coeffs[(l, j)] = c

    @classmethod
    def _raw(cls, coeffs, degree, max_x, max_deg, weight):
        obj = cls.__new__(cls)
        obj.coeffs = coeffs
        obj.degree = degree
        obj.weight = weight
        obj.max_x = max_x
        obj.max_deg = max_deg
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def monomial(cls, c, l, j, max_x, max_deg, weight=-2):
        """``c * x^l * u^j``."""
        if not isinstance(c, GR):
            c = GR.const(c)
        return cls({(l, j): c}, c.degree + weight * (l + j), max_x, max_deg, weight)

    @classmethod
    def one(cls, max_x, max_deg, weight=-2):
        return cls.monomial(1, 0, 0, max_x, max_deg, weight)

    @classmethod
    def zero(cls, degree, max_x, max_deg, weight=-2):
        return cls._raw({}, degree, max_x, max_deg, weight)

    @classmethod
    def from_u(cls, coeffs, degree, max_x, max_deg, weight=-2):
        """Build an x-free series from ``{j: coefficient}``."""
        return cls({(0, j): c for j, c in coeffs.items()}, degree, max_x, max_deg, weight)

    def like(self, coeffs, degree=None):
        return XUSeries(coeffs, self.degree if degree is None else degree,
                        self.max_x, self.max_deg, self.weight)

    # -- accessors ----------------------------------------------------------

    def coeff_degree(self, l, j):
        return self.degree - self.weight * (l + j)

    def in_window(self, l, j):
        cd = self.coeff_degree(l, j)
        return 0 <= l <= self.max_x and 0 <= cd <= self.max_deg

    def coefficient(self, l, j):
        c = self.coeffs.get((l, j))
        if c is not None:
            return c
        return GR.zero(max(self.coeff_degree(l, j), 0) & ~1)

    def x_coeff(self, l):
        """The coefficient of ``x^l`` as ``{j: coefficient}``."""
        return {j: c for (ll, j), c in self.coeffs.items() if ll == l}

    def u_coeffs(self):
        return self.x_coeff(0)

    def min_u(self, l=None):
        js = [j for (ll, j) in self.coeffs if l is None or ll == l]
        return min(js) if js else None

    def is_x_free(self):
        return all(l == 0 for l, _ in self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __iter__(self):
        return iter(sorted(self.coeffs.items()))

    def __len__(self):
        return len(self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if self.weight != other.weight:
            raise ValueError("grading convention mismatch: weight %d vs %d"
                             % (self.weight, other.weight))

    def truncate(self, max_x=None, max_deg=None):
        max_x = self.max_x if max_x is None else min(max_x, self.max_x)
        max_deg = self.max_deg if max_deg is None else min(max_deg, self.max_deg)
        return XUSeries._raw(
            {k: c for k, c in self.coeffs.items()
             if k[0] <= max_x and c.degree <= max_deg},
            self.degree, max_x, max_deg, self.weight)

    def __add__(self, other):
        if not isinstance(other, XUSeries):
            other = XUSeries.monomial(other, 0, 0, self.max_x, self.max_deg, self.weight)
        self._check(other)
        if self.coeffs and other.coeffs and self.degree != other.degree:
            raise ValueError("cannot add series of degrees %d and %d"
                             % (self.degree, other.degree))
        deg = self.degree if self.coeffs else other.degree
        max_x = min(self.max_x, other.max_x)
        max_deg = min(self.max_deg, other.max_deg)
        out = {k: c for k, c in self.coeffs.items()
               if k[0] <= max_x and c.degree <= max_deg}
        for k, c in other.coeffs.items():
            if k[0] > max_x or c.degree > max_deg:
                continue
            v = out[k] + c if k in out else c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return XUSeries._raw(out, deg, max_x, max_deg, self.weight)

    __radd__ = __add__

    def __neg__(self):
        return XUSeries._raw({k: -c for k, c in self.coeffs.items()},
                             self.degree, self.max_x, self.max_deg, self.weight)

    def __sub__(self, other):
        if not isinstance(other, XUSeries):
            other = XUSeries.monomial(other, 0, 0, self.max_x, self.max_deg, self.weight)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        """Multiply by a scalar or graded coefficient."""
        if isinstance(c, GR):
            deg = self.degree + c.degree
            out = {}
            for k, v in self.coeffs.items():
                if v.degree + c.degree <= self.max_deg:
                    w = v * c
                    if w:
                        out[k] = w
            return XUSeries._raw(out, deg, self.max_x, self.max_deg, self.weight)
        if not c:
            return XUSeries._raw({}, self.degree, self.max_x, self.max_deg, self.weight)
        return XUSeries._raw({k: v * c for k, v in self.coeffs.items()},
                             self.degree, self.max_x, self.max_deg, self.weight)

    def __mul__(self, other):
        if isinstance(other, (int, Rational, GR)):
            return self.scale(other)
        if not isinstance(other, XUSeries):
            return NotImplemented
        self._check(other)
        max_x = min(self.max_x, other.max_x)
        max_deg = min(self.max_deg, other.max_deg)
        deg = self.degree + other.degree
        a = sorted(((k, c) for k, c in self.coeffs.items()), key=lambda t: t[1].degree)
        b = sorted(((k, c) for k, c in other.coeffs.items()), key=lambda t: t[1].degree)
        acc = defaultdict(list)
        for (l1, j1), c1 in a:
            d1 = c1.degree
            if d1 > max_deg or l1 > max_x:
                continue
            for (l2, j2), c2 in b:
                if d1 + c2.degree > max_deg:
                    break
                l = l1 + l2
                if l > max_x:
                    continue
                acc[(l, j1 + j2)].append(c1 * c2)
        out = {}
        for k, parts in acc.items():
            s = parts[0]
            for t in parts[1:]:
                s = s + t
            if s:
                out[k] = s
        return XUSeries._raw(out, deg, max_x, max_deg, self.weight)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n):
        if n < 0:
            return invert_unit(self) ** (-n)
        out = XUSeries.one(self.max_x, self.max_deg, self.weight)
        for _ in range(n):
            out = out * self
        return out

    def shift_u(self, n):
        """Multiply by ``u^n``."""
        return XUSeries._raw({(l, j + n): c for (l, j), c in self.coeffs.items()},
                             self.degree + self.weight * n,
                             self.max_x, self.max_deg, self.weight)

    def shift_x(self, n):
        return XUSeries({(l + n, j): c for (l, j), c in self.coeffs.items()},
                        self.degree + self.weight * n,
                        self.max_x, self.max_deg, self.weight)

    def drop_x(self):
        """Keep only the ``x^0`` part."""
        return XUSeries._raw({k: c for k, c in self.coeffs.items() if k[0] == 0},
                             self.degree, self.max_x, self.max_deg, self.weight)

    def substitute_u(self, inner):
        """Replace ``u`` by the x-free series ``inner`` (nonnegative powers only)."""
        self._check(inner)
        if not inner.is_x_free():
            raise ValueError("inner series must not involve x")
        if any(j < 0 for _, j in self.coeffs):
            raise ValueError("cannot substitute into negative powers of u")
        max_x = min(self.max_x, inner.max_x)
        max_deg = min(self.max_deg, inner.max_deg)
        top = max((j for _, j in self.coeffs), default=0)
        powers = [XUSeries.one(max_x, max_deg, self.weight)]
        for _ in range(top):
            powers.append(powers[-1] * inner)
        out = None
        for (l, j), c in self.coeffs.items():
            term = powers[j].scale(c).shift_x(l)
            out = term if out is None else out + term
        deg = self.degree - self.weight * 0
        if out is None:
            return XUSeries.zero(deg, max_x, max_deg, self.weight)
        return out

    # -- comparison ---------------------------------------------------------

    def window_equal(self, other):
        """Equality on the common window of both series."""
        self._check(other)
        max_x = min(self.max_x, other.max_x)
        max_deg = min(self.max_deg, other.max_deg)
        a = self.truncate(max_x, max_deg)
        b = other.truncate(max_x, max_deg)
        return a.coeffs == b.coeffs

    def __eq__(self, other):
        if isinstance(other, (int, Rational, GR)):
            other = XUSeries.monomial(other, 0, 0, self.max_x, self.max_deg, self.weight)
        if not isinstance(other, XUSeries):
            return NotImplemented
        return self.window_equal(other)

    __hash__ = None

    def __repr__(self):
        return "XUSeries(degree=%d, %s)" % (self.degree, self.to_str())

    def to_str(self, coeff_str=str):
        if not self.coeffs:
            return "0"
        parts = []
        for (l, j), c in sorted(self.coeffs.items()):
            mono = []
            if l:
                mono.append("x" if l == 1 else "x^%d" % l)
            if j:
                mono.append("u" if j == 1 else "u^%d" % j)
            parts.append("(%s)%s" % (coeff_str(c), "*" + "*".join(mono) if mono else ""))
        return " + ".join(parts)


def compose(coeffs, inner):
    """``sum_n coeffs[n] * inner**n`` for a list of graded coefficients.

    ``inner`` must be topologically nilpotent on its window (no constant
    term), which is the case for every series with vanishing ``x^0 u^0``
    coefficient and nonnegative u-powers.
    """
    total = None
    power = XUSeries.one(inner.max_x, inner.max_deg, inner.weight)
    for n, c in enumerate(coeffs):
        if n:
            power = power * inner
            if not power:
                break
        if c is None or (isinstance(c, GR) and not c) or (not isinstance(c, GR) and not c):
            continue
        term = power.scale(c)
        total = term if total is None else total + term
    if total is None:
        c0 = next((c for c in coeffs if isinstance(c, GR)), GR.zero())
        return XUSeries.zero(c0.degree, inner.max_x, inner.max_deg, inner.weight)
    return total


def invert_unit(a):
    """Multiplicative inverse by geometric series.

    The lowest u-power of the ``x^0`` part must carry a nonzero rational
    constant; the rest of the series is then topologically nilpotent once
    that term is factored out.
    """
    x0 = a.x_coeff(0)
    if not x0:
        raise ZeroDivisionError("series has no x^0 part; not invertible")
    m = min(x0)
    lead = x0[m]
    if lead.degree != 0:
        raise ZeroDivisionError(
            "leading coefficient u^%d has positive degree; not invertible" % m)
    c = lead.constant_value()
    factor = XUSeries.monomial(GR.const(Fraction(1) / c), 0, -m, a.max_x, a.max_deg, a.weight)
    e = a * factor - 1
    neg_e = -e
    total = XUSeries.one(a.max_x, a.max_deg, a.weight)
    power = total
    # every term of e raises x-order or coefficient degree, so this stops
    for _ in range(a.max_x + a.max_deg + 2):
        power = power * neg_e
        if not power:
            break
        total = total + power
    else:
        raise ZeroDivisionError("geometric series failed to terminate")
    return total * factor


def divide_by_p_series(S, ctx, floor=None):
    """Solve ``S = [p]u * Q`` for a series ``Q`` with coefficients in ``MU_*``.

    Works u-degree by u-degree from the bottom: the lowest equation of each
    x-coefficient reads ``p*q = s`` and every later one is linear in the next
    unknown with leading factor ``p``.  Each division by ``p`` is certified
    integral.  ``floor`` bounds the u-exponents allowed in ``Q`` (``0`` for
    genuine power series); by default ``Q`` may be Laurent.

    Raises :class:`NotDivisibleError` carrying the ``(l, j)`` position of the
    first coefficient of ``S`` at which division fails.
    """
    from .lazard import divide_by_p

    if S.weight != -2:
        raise ValueError("division by [p]u needs weight -2 series")
    c = ctx.p_series
    max_deg = min(S.max_deg, 2 * ctx.truncation)
    qdeg = S.degree + 2
    coeffs = {}
    for l in range(S.max_x + 1):
        row = S.x_coeff(l)
        if not row:
            continue
        qfloor = (min(row) - 1) if floor is None else floor
        for j, v in row.items():
            if j < qfloor + 1 and v:
                raise NotDivisibleError((l, j), v, "term below the allowed u-floor")
        q = {}
        e = qfloor + 1
        while True:
            cd = S.degree + 2 * (l + e)
            if cd > max_deg:
                break
            if cd >= 0:
                rhs = row.get(e, GR.zero(cd))
                for k in range(2, e - qfloor + 1):
                    prev = q.get(e - k)
                    if prev is not None and c.get(k) is not None:
                        rhs = rhs - c[k] * prev
                if rhs:
                    le = divide_by_p(rhs, ctx.prime)
                    if le is None:
                        raise NotDivisibleError((l, e), rhs)
                    q[e - 1] = le.value
            e += 1
        for j, v in q.items():
            coeffs[(l, j)] = v
    return XUSeries(coeffs, qdeg, S.max_x, max_deg, S.weight)


def antipode(b, inverse=None):
    """Coefficients of the multiplicative inverse of ``sum b[l] x^l``.

    Solves ``sum_{k<=l} d_k b_{l-k} = [l == 0]``.  ``inverse`` supplies
    ``b[0]**-1`` when the coefficients do not know how to invert themselves.
    """
    if not b:
        raise ValueError("empty coefficient list")
    if inverse is not None:
        d0 = inverse
    elif hasattr(b[0], "inverse"):
        d0 = b[0].inverse()
    elif isinstance(b[0], GR):
        if b[0].degree != 0 or not b[0]:
            raise ZeroDivisionError("constant term is not invertible")
        d0 = GR.const(Fraction(1) / b[0].constant_value())
    else:
        if not b[0]:
            raise ZeroDivisionError("constant term is not invertible")
        d0 = Fraction(1) / b[0]
        if d0.denominator == 1:
            d0 = d0.numerator
    d = [d0]
    for l in range(1, len(b)):
        s = None
        for k in range(1, l + 1):
            t = b[k] * d[l - k]
            s = t if s is None else s + t
        d.append(-(d0 * s))
    return d
