r"""
The geometric ring `\Omega^{C_p}_*` as a free `MU_*`-module.

Elements are kept in normal form over the basis ``{1, q_k, d_{I,j}}``.
Products of generators are rewritten with

    x_s x_t = x_{s-1} x_{t+1} + p_t x_s - p_{s-1} x_{t+1}      (s not a block start)
    q_1 x_t = p_t q_1

where `p_t` is the restriction of `x_t` (a `c_k` or a `t^{(i)}_{l,j}`).
Reduction always picks the least non-final factor that can be lowered and
pairs it with the largest factor; results are memoized per context.

>>> from cobordism_forge.lazard import make_context
>>> R = omega_ring(make_context(2, 4))
>>> R.q(1) * R.q(1) == R.q(1) * 2
True
"""
from __future__ import annotations

from numbers import Rational

from ..errors import NotDivisibleError
from ..graded import GradedRational
from ..lazard import LazardElement, divide_by_p, integrality_witness
from . import generators as G
from .target import TargetRing, _is_atom, _join

GR = GradedRational
_ONE = GR.const(1)


def coeff_str(c):
    """Print an `MU_*` coefficient as an integer a-polynomial when possible."""
    w = integrality_witness(c)
    if w is None:
        return "[rational-form: %s]" % c
    return str(w)


def _acc(out, terms, c):
    for w, v in terms.items():
        x = v * c
        if w in out:
            x = out[w] + x
        if x:
            out[w] = x
        else:
            out.pop(w, None)


class OmegaRing:
    """Normal-form arithmetic and structure maps for one context."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.p = ctx.prime
        self.target = TargetRing(ctx.prime, ctx.truncation)
        self._nf = {}
        self._kgen = {}
        self._kword = {}

    # -- constants attached to generators ------------------------------------

    def p_const(self, g):
        """Restriction of a generator: `c_k` for `q_k`, `t^{(i)}_{l,j}` for `d`."""
        n, j = g
        if n == 0:
            return self.ctx.c(j + 1)
        l, i = G.block_li(n, self.p)
        return self.ctx.t(i, l, j)

    # -- element constructors ------------------------------------------------

    def element(self, terms):
        return PresentationElement(self, terms)

    def zero(self):
        return PresentationElement(self, {})

    def one(self):
        return PresentationElement(self, {(): _ONE})

    def scalar(self, c):
        if not isinstance(c, GR):
            c = GR.const(c)
        return PresentationElement(self, {(): c})

    def gen(self, g):
        g = G.to_gen(g, self.p)
        if g is None:
            return self.zero()
        self.ctx._need(G.gen_degree(g, self.p), G.gen_str(g, self.p))
        return PresentationElement(self, {(g,): _ONE})

    def q(self, k):
        return self.gen(G.Q(k))

    def d(self, l, j, i):
        return self.gen(G.D(l, j, i))

    def basis_element(self, word):
        return PresentationElement(self, {tuple(word): _ONE})

    def basis(self, max_degree):
        return G.enumerate_basis(self.p, max_degree)

    # -- rewriting -----------------------------------------------------------

    def reduce(self, word):
        """Normal form of a sorted word of generator pairs as ``{basis word: coeff}``.

        The returned dictionary is shared with the cache; do not mutate it.
        """
        r = self._nf.get(word)
        if r is not None:
            return r
        if len(word) <= 1:
            r = {word: _ONE}
        elif G.Q1 in word:
            rest = list(word)
            rest.remove(G.Q1)
            c = _ONE
            for g in rest:
                c = c * self.p_const(g)
            r = {(G.Q1,): c} if c else {}
        else:
            last = len(word) - 1
            k = next((k for k in range(last) if word[k][1] >= 1), None)
            if k is None:
                r = {word: _ONE}
            else:
                s, t = word[k], word[last]
                rest = word[:k] + word[k + 1:last]
                s1 = (s[0], s[1] - 1)
                t1 = (t[0], t[1] + 1)
                r = {}
                _acc(r, self.reduce(tuple(sorted(rest + (s1, t1)))), _ONE)
                pt = self.p_const(t)
                if pt:
                    _acc(r, self.reduce(tuple(sorted(rest + (s,)))), pt)
                ps = self.p_const(s1)
                if ps:
                    _acc(r, self.reduce(tuple(sorted(rest + (t1,)))), -ps)
        self._nf[word] = r
        return r

    def normal_form(self, word):
        """Expand a product of generators (``Q``/``D`` indices or pairs)."""
        gens = []
        for g in word:
            g = G.to_gen(g, self.p)
            if g is None:
                return self.zero()
            gens.append(g)
        return PresentationElement(self, dict(self.reduce(tuple(sorted(gens)))))

    def multiply(self, a, b):
        out = {}
        for w1, c1 in a.terms.items():
            for w2, c2 in b.terms.items():
                _acc(out, self.reduce(tuple(sorted(w1 + w2))), c1 * c2)
        return PresentationElement(self, out)

    # -- kappa and res -------------------------------------------------------

    def kappa_gen(self, g):
        r = self._kgen.get(g)
        if r is not None:
            return r
        T = self.target
        n, j = g
        if n == 0:
            k = j + 1
            terms = {}
            for m in range(1, k + 1):
                c = self.ctx.c(k - m)
                if c:
                    terms[T.mono(uinv={1: m})] = -c
            r = T.element(terms)
        else:
            l, i = G.block_li(n, self.p)
            r = T.element({T.mono(d=[((l, i), 1)], uinv={1: j}): _ONE})
            terms = {}
            for k in range(1, l + 2 + j):
                c = self.ctx.t(i, l, j - k)
                if c:
                    terms[T.mono(uinv={1: k})] = -c
            r = r + T.element(terms)
        self._kgen[g] = r
        return r

    def kappa_word(self, word):
        r = self._kword.get(word)
        if r is not None:
            return r
        if not word:
            r = self.target.one()
        else:
            r = self.kappa_word(word[:-1]) * self.kappa_gen(word[-1])
        self._kword[word] = r
        return r

    def kappa(self, x):
        out = self.target.zero()
        for w, c in x.terms.items():
            out = out + self.kappa_word(w) * c
        return out

    def res_word(self, word):
        c = _ONE
        for g in word:
            c = c * self.p_const(g)
        return c

    def res(self, x):
        out = GR.zero(x.degree or 0)
        for w, c in x.terms.items():
            out = out + self.res_word(w) * c
        return out

    def kernel_test(self, x):
        """``(True, c)`` when ``x = c*q_1``; otherwise ``(False, None)``."""
        if not x.terms:
            return True, GR.zero(0)
        if set(x.terms) == {(G.Q1,)}:
            return True, x.terms[(G.Q1,)]
        return False, None

    # -- Gamma ---------------------------------------------------------------

    def _gamma_base(self):
        # d^{(p-1)}_{0,0} - q_2, which under kappa is u^{-1} + u_{p-1}^{-1}
        base = -self.q(2)
        if self.p > 2:
            base = base + self.d(0, 0, self.p - 1)
        return base

    def gamma_word(self, word):
        out = self._gamma_base() * self.res_word(word)
        prefix = _ONE
        for k, g in enumerate(word):
            shifted = [(g[0], g[1] + 1)] + list(word[k + 1:])
            if prefix:
                out = out + self.normal_form(shifted) * prefix
            prefix = prefix * self.p_const(g)
        return out

    def gamma(self, x):
        """The degree-raising operation, extended `MU_*`-linearly from the basis."""
        out = self.zero()
        for w, c in x.terms.items():
            out = out + self.gamma_word(w) * c
        return out

    # -- inverse of kappa by leading-monomial elimination --------------------

    def leading_basis(self, mono):
        """Basis word whose kappa-image has leading monomial ``mono``.

        Returns ``(word, leading coefficient)``; ``None`` when no basis
        element has this leading monomial.
        """
        T = self.target
        nd = len(T.dvars)
        blocks = []
        for k in range(nd):
            e = mono[k]
            if e < 0:
                return None
            l, i = T.dvars[k]
            blocks += [G.li_block(l, i, self.p)] * e
        for i in range(2, self.p):
            e = mono[T.uindex[i]]
            if e < 0:
                return None
            blocks += [G.li_block(0, i, self.p)] * e
        j = mono[T.uindex[1]]
        if j < 0:
            return None
        if blocks:
            blocks.sort()
            word = tuple((n, 0) for n in blocks[:-1]) + ((blocks[-1], j),)
            return word, _ONE
        if j == 0:
            return (), _ONE
        return ((0, j),), GR.const(-self.p)

    def from_kappa(self, target, res_value=None, certify=False):
        """Recover a normal-form element from its kappa-image.

        Repeatedly cancels the leading monomial against a basis element.
        The pure `u^{-e}` case needs a division by ``p``, which is certified.
        With ``res_value`` the `q_1` coefficient is fixed from the restriction;
        otherwise the result is determined modulo `q_1`.  With ``certify`` every
        coefficient is also checked to lie in `MU_*`.
        """
        rest = target
        out = {}
        guard = 0
        while rest:
            guard += 1
            if guard > 100000:
                raise RuntimeError("elimination did not terminate")
            mono, c = rest.leading()
            lb = self.leading_basis(mono)
            if lb is None:
                raise ValueError("monomial %s is not in the image of kappa"
                                 % self.target.mono_str(mono))
            word, lead = lb
            if lead == _ONE:
                lam = c
            else:
                le = divide_by_p(-c, self.p)
                if le is None:
                    raise NotDivisibleError(None, c, "leading coefficient of %s is not divisible by p"
                                            % self.target.mono_str(mono))
                lam = le.value
            if certify and integrality_witness(lam) is None:
                raise NotDivisibleError(None, lam, "coefficient of %s is not in MU_*"
                                        % G.basis_text(word, self.p))
            out[word] = lam
            rest = rest - self.kappa_word(word) * lam
        x = PresentationElement(self, out)
        if res_value is not None:
            diff = res_value - self.res(x)
            if diff:
                le = divide_by_p(diff, self.p)
                if le is None:
                    raise NotDivisibleError(None, diff, "restriction defect is not divisible by p")
                x = x + self.q(1) * le.value
        return x


class PresentationElement:
    """Homogeneous element of the geometric ring in normal form."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {}
        deg = None
        for w, c in terms.items():
            if not isinstance(c, GR):
                c = GR.const(c)
            if not c:
                continue
            w = tuple(w)
            if not G.is_basic(w):
                raise ValueError("word %s is not a basis monomial" % G.basis_text(w, ring.p))
            d = c.degree + G.word_degree(w, ring.p)
            if deg is None:
                deg = d
            elif d != deg:
                raise ValueError("inhomogeneous element: degrees %d and %d" % (deg, d))
            self.terms[w] = c

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    @property
    def degree(self):
        for w, c in self.terms.items():
            return c.degree + G.word_degree(w, self.ring.p)
        return None

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, word):
        return self.terms.get(tuple(word), GR.zero(0))

    def _wrap(self, other):
        if isinstance(other, PresentationElement):
            return other
        if isinstance(other, (int, Rational, GR)):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        if self.terms and other.terms and self.degree != other.degree:
            raise ValueError("cannot add elements of degrees %d and %d"
                             % (self.degree, other.degree))
        out = dict(self.terms)
        _acc(out, other.terms, _ONE)
        return PresentationElement._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return PresentationElement._raw(self.ring, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational, GR)):
            out = {}
            for w, c in self.terms.items():
                v = c * other
                if v:
                    out[w] = v
            return PresentationElement._raw(self.ring, out)
        if isinstance(other, PresentationElement):
            return self.ring.multiply(self, other)
        return NotImplemented

    def __rmul__(self, other):
        return self.__mul__(other)

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

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (G.word_degree(t[0], self.ring.p), t[0]))

    def to_str(self, cfmt=coeff_str):
        """Canonical text form; parses back to the same element."""
        if not self.terms:
            return "0"
        parts = []
        p = self.ring.p
        for w, c in self.sorted_terms():
            b = G.basis_text(w, p)
            cs = cfmt(c)
            if not w:
                parts.append(cs if _is_atom(cs) else "(%s)" % cs)
            elif cs == "1":
                parts.append(b)
            elif cs == "-1":
                parts.append("-" + b)
            elif _is_atom(cs):
                parts.append("%s*%s" % (cs, b))
            else:
                parts.append("(%s)*%s" % (cs, b))
        return _join(parts)

    def to_json(self, cfmt=coeff_str):
        return {
            "degree": self.degree if self.terms else 0,
            "terms": [{"basis": G.basis_label(w, self.ring.p), "coeff": cfmt(c)}
                      for w, c in self.sorted_terms()],
        }

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return "PresentationElement(%s)" % self.to_str(str)


def omega_ring(ctx):
    """The (cached) :class:`OmegaRing` of a context."""
    r = ctx._series.get("omega")
    if r is None:
        r = OmegaRing(ctx)
        ctx._series["omega"] = r
    return r


def multiply(a, b, ctx=None):
    return a.ring.multiply(a, b)


def normal_form(word, ctx):
    return omega_ring(ctx).normal_form(word)


def kappa(x, ctx=None):
    return x.ring.kappa(x)


def _lazard(c):
    w = integrality_witness(c)
    return LazardElement(c, None) if w is None else w


def res(x, ctx=None):
    """Restriction to the trivial group, as a :class:`LazardElement`."""
    return _lazard(x.ring.res(x))


def gamma(x, ctx=None):
    return x.ring.gamma(x)


def kernel_test(x):
    """``(is_kernel, coefficient)`` with the `q_1`-coefficient as a :class:`LazardElement`."""
    flag, c = x.ring.kernel_test(x)
    return flag, (None if c is None else _lazard(c))
