r"""
The Laurent ring `MU_*[u_i^{\pm1}, d^{(i)}_l]` receiving the localization map.

Monomials are dense exponent tuples.  Positions, most significant first:
the `d^{(i)}_l` for ``l >= 1`` in descending ``(l, i)``, then
`u_{p-1}^{-1}, ..., u_2^{-1}`, and last `u^{-1} = u_1^{-1}`.  Entries for
the `u`'s count powers of the *inverse* classes and may be negative.  With
this layout the lexicographic monomial order is plain tuple comparison, and
`d^{(i)}_0` is identified with `u_i^{-1}` on construction.
"""
from __future__ import annotations

from numbers import Rational

from ..graded import GradedRational

GR = GradedRational


class TargetRing:
    def __init__(self, p, L):
        self.p = p
        self.L = L
        self.dvars = [(l, i) for l in range(L, 0, -1) for i in range(p - 1, 0, -1)]
        self.dindex = {v: k for k, v in enumerate(self.dvars)}
        nd = len(self.dvars)
        self.uindex = {i: nd + (p - 1 - i) for i in range(1, p)}
        self.nvars = nd + p - 1
        self.vdeg = tuple([2 * (l + 1) for l, _ in self.dvars] + [2] * (p - 1))
        self._zero = (0,) * self.nvars

    def mono(self, d=(), uinv=None):
        """Monomial from ``d = [((l, i), e), ...]`` and ``uinv = {i: e}``."""
        ex = list(self._zero)
        for (l, i), e in d:
            if l == 0:
                ex[self.uindex[i]] += e
            else:
                if l > self.L:
                    raise ValueError("d_%d exceeds the target ring's range" % l)
                ex[self.dindex[(l, i)]] += e
        for i, e in (uinv or {}).items():
            ex[self.uindex[i]] += e
        return tuple(ex)

    def mono_degree(self, m):
        return sum(a * b for a, b in zip(m, self.vdeg))

    def element(self, terms):
        return TargetElement(self, terms)

    def const(self, c):
        if not isinstance(c, GR):
            c = GR.const(c)
        return TargetElement(self, {self._zero: c})

    def zero(self):
        return TargetElement(self, {})

    def one(self):
        return self.const(1)

    def u_inv(self, i=1, e=1, coeff=1):
        """``coeff * u_i^{-e}``."""
        return TargetElement(self, {self.mono(uinv={i: e}): _gr(coeff)})

    def d(self, l, i, coeff=1):
        """`d^{(i)}_l`, equal to `u_i^{-1}` when ``l = 0``."""
        return TargetElement(self, {self.mono(d=[((l, i), 1)]): _gr(coeff)})

    def mono_str(self, m):
        parts = []
        for k, e in enumerate(m):
            if not e:
                continue
            if k < len(self.dvars):
                l, i = self.dvars[k]
                base = "d_%d^(%d)" % (l, i)
                parts.append(base if e == 1 else "%s^%d" % (base, e))
            else:
                i = self.p - 1 - (k - len(self.dvars))
                name = "u" if i == 1 else "u_%d" % i
                parts.append(name if e == -1 else "%s^%d" % (name, -e))
        return "*".join(parts)


def _gr(c):
    return c if isinstance(c, GR) else GR.const(c)


class TargetElement:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    def __bool__(self):
        return bool(self.terms)

    def _wrap(self, other):
        if isinstance(other, TargetElement):
            return other
        if isinstance(other, (int, Rational, GR)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out[m] + c if m in out else c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return TargetElement._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return TargetElement._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational, GR)):
            if not other:
                return TargetElement._raw(self.ring, {})
            out = {}
            for m, c in self.terms.items():
                v = c * other
                if v:
                    out[m] = v
            return TargetElement._raw(self.ring, out)
        if not isinstance(other, TargetElement):
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = c1 * c2
                if m in out:
                    v = out[m] + v
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return TargetElement._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    __hash__ = None

    def leading(self):
        """``(monomial, coefficient)`` of the lexicographically largest term."""
        if not self.terms:
            return None
        m = max(self.terms)
        return m, self.terms[m]

    def degrees(self):
        return {c.degree + self.ring.mono_degree(m) for m, c in self.terms.items()}

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def to_str(self, coeff_str=str):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            ms = self.ring.mono_str(m)
            cs = coeff_str(c)
            if not ms:
                parts.append(cs)
            elif cs == "1":
                parts.append(ms)
            elif cs == "-1":
                parts.append("-" + ms)
            elif _is_atom(cs):
                parts.append(cs + "*" + ms)
            else:
                parts.append("(%s)*%s" % (cs, ms))
        return _join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return "TargetElement(%s)" % self.to_str()


def _is_atom(s):
    body = s[1:] if s.startswith("-") else s
    return " + " not in body and " - " not in body


def _join(parts):
    out = parts[0]
    for s in parts[1:]:
        if s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out
