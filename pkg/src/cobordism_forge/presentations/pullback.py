r"""
The equivariant ring `MU^{C_p}_*` through its pullback square.

An element is a pair: a power series in `u` (its image in
`MU_*[[u]]/[p]u`, kept as an honest representative) and a Laurent
polynomial (its localization at `u`).  Two elements are equal when the
Laurent parts agree exactly and the series differ by a certified multiple
of `[p]u`.

>>> from cobordism_forge.lazard import make_context
>>> M = mu_ring(make_context(3, 4))
>>> M.equal(M.eta(1), M.one())
True
"""
from __future__ import annotations

from numbers import Rational

from ..errors import NotDivisibleError
from ..graded import GradedRational
from ..series import XUSeries, divide_by_p_series
from .target import TargetRing

GR = GradedRational
_ONE = GR.const(1)


def rho_series(kind, ctx, *idx):
    """Power-series image of a generator (x-free, weight -2)."""
    D = ctx.truncation
    md = 2 * D
    if kind == "u":
        return XUSeries.monomial(1, 0, 1, 0, md)
    if kind == "eta":
        (i,) = idx
        coeffs = {k: ctx.a_shift(i, 0, k + 1) for k in range(D + 1)}
        return XUSeries.from_u(coeffs, 0, 0, md)
    if kind == "q":
        (j,) = idx
        coeffs = {}
        for k in range(D + 2):
            if 2 * (j + k - 1) <= md:
                coeffs[k] = ctx.c(j + k)
        return XUSeries.from_u(coeffs, 2 * (j - 1), 0, md)
    if kind == "d":
        l, j, i = idx
        coeffs = {}
        for k in range(D + 1):
            if 2 * (l + j + k + 1) <= md:
                coeffs[k] = ctx.t(i, l, j + k)
        return XUSeries.from_u(coeffs, 2 * (l + j + 1), 0, md)
    raise ValueError("unknown generator kind %r" % kind)


def phi(gen, ctx, *idx):
    """Series image of ``"d"`` (`d^{(i)}_l`), ``"u"`` (`u_i`) or ``"uinv"`` (`u_i^{-1}`)."""
    D = ctx.truncation
    md = 2 * D
    if gen == "d":
        l, i = idx
        row = {j: ctx.t(i, l, j) for j in range(-(l + 1), D - l)}
        return XUSeries.from_u(row, 2 * (l + 1), 0, md)
    if gen == "u":
        (i,) = idx
        return XUSeries.from_u({j: ctx.a_shift(i, 0, j) for j in range(1, D + 2)}, -2, 0, md)
    if gen == "uinv":
        (i,) = idx
        return phi("d", ctx, 0, i)
    raise ValueError("unknown generator %r" % gen)


class MURing:
    """Generators and arithmetic of `MU^{C_p}_*` for one context."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.p = ctx.prime
        self.target = TargetRing(ctx.prime, ctx.truncation)

    def _make(self, rho, kap, word):
        return PullbackElement(self, rho, kap, word)

    def scalar(self, c, word=None):
        if not isinstance(c, GR):
            c = GR.const(c)
        rho = XUSeries.monomial(c, 0, 0, 0, 2 * self.ctx.truncation)
        return self._make(rho, self.target.const(c), word or str(c))

    def one(self):
        return self.scalar(1, "1")

    def zero(self):
        return self.scalar(0, "0")

    def u(self):
        T = self.target
        return self._make(rho_series("u", self.ctx), T.u_inv(1, -1), "u")

    def eta(self, i):
        self.ctx._unit(i)
        T = self.target
        # u^{-1} u_i; the two cancel when i = 1
        m = list(T.mono(uinv={1: 1}))
        m[T.uindex[i]] -= 1
        kap = T.element({tuple(m): _ONE})
        return self._make(rho_series("eta", self.ctx, i), kap, "eta(%d)" % i)

    def q(self, j):
        if j < 0:
            raise ValueError("q index must be nonnegative")
        self.ctx._need(2 * (j - 1), "q(%d)" % j)
        T = self.target
        terms = {}
        for m in range(1, j + 1):
            c = self.ctx.c(j - m)
            if c:
                terms[T.mono(uinv={1: m})] = -c
        return self._make(rho_series("q", self.ctx, j), T.element(terms), "q(%d)" % j)

    def d(self, l, j, i):
        self.ctx._unit(i)
        self.ctx._need(2 * (l + j + 1), "d(%d,%d,%d)" % (l, j, i))
        T = self.target
        kap = T.element({T.mono(d=[((l, i), 1)], uinv={1: j}): _ONE})
        terms = {}
        for k in range(1, l + 2 + j):
            c = self.ctx.t(i, l, j - k)
            if c:
                terms[T.mono(uinv={1: k})] = -c
        kap = kap + T.element(terms)
        return self._make(rho_series("d", self.ctx, l, j, i), kap, "d(%d,%d,%d)" % (l, j, i))

    def make(self, word):
        """Evaluate a word given as a list of ``(kind, *indices)`` factors."""
        out = self.one()
        names = []
        for f in word:
            kind, idx = f[0], f[1:]
            g = {"u": self.u, "eta": self.eta, "q": self.q, "d": self.d}[kind](*idx)
            out = out * g
            names.append(g.word)
        out.word = "*".join(names) if names else "1"
        return out

    def compare(self, a, b):
        """``(equal, reason)``; ``reason`` names the channel or location of a failure."""
        if a.kappa != b.kappa:
            return False, "kappa images differ"
        diff = a.rho - b.rho
        if not diff:
            return True, None
        try:
            divide_by_p_series(diff, self.ctx, floor=0)
        except NotDivisibleError as e:
            return False, "rho difference not divisible by [p]u at u^%d" % e.location[1]
        return True, None

    def equal(self, a, b):
        return self.compare(a, b)[0]


class PullbackElement:
    __slots__ = ("ring", "rho", "kappa", "word")

    def __init__(self, ring, rho, kappa, word=""):
        self.ring = ring
        self.rho = rho
        self.kappa = kappa
        self.word = word

    def _wrap(self, other):
        if isinstance(other, PullbackElement):
            return other
        if isinstance(other, (int, Rational, GR)):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return PullbackElement(self.ring, self.rho + other.rho, self.kappa + other.kappa,
                               "%s + %s" % (self.word, other.word))

    __radd__ = __add__

    def __neg__(self):
        return PullbackElement(self.ring, -self.rho, -self.kappa, "-(%s)" % self.word)

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return PullbackElement(self.ring, self.rho - other.rho, self.kappa - other.kappa,
                               "%s - (%s)" % (self.word, other.word))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational, GR)):
            return PullbackElement(self.ring, self.rho.scale(other), self.kappa * other,
                                   "%s*(%s)" % (other, self.word))
        if not isinstance(other, PullbackElement):
            return NotImplemented
        return PullbackElement(self.ring, self.rho * other.rho, self.kappa * other.kappa,
                               "(%s)*(%s)" % (self.word, other.word))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n):
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self):
        return "PullbackElement(%s)" % self.word


def mu_ring(ctx):
    r = ctx._series.get("mu")
    if r is None:
        r = MURing(ctx)
        ctx._series["mu"] = r
    return r


def rho(word, ctx):
    """Series image of a generator word (see :meth:`MURing.make`)."""
    return mu_ring(ctx).make(word).rho


def pullback_make(word, ctx):
    return mu_ring(ctx).make(word)


def pullback_equal(a, b):
    return a.ring.equal(a, b)
