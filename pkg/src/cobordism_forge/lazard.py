r"""
The universal formal group law and exact arithmetic in `MU_*`.

Coordinates: `MU_* \otimes Q = Q[m_1, m_2, ...]` where the logarithm is
`log(x) = x + \sum_n m_n x^{n+1}`.  The law is `F(x, y) = exp(log x + log y)`
and its coefficients `a_{k,j}` span `MU_*` integrally.  Membership in `MU_*`
is decided one degree at a time by integer-lattice solving against all
monomials in the `a_{k,j}`.

>>> ctx = make_context(3, 4)
>>> ctx.c(1)
GradedRational(0, 3)
>>> str(integrality_witness(ctx.a(1, 1)))
'a(1,1)'
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import NotIntegralError, TruncationError
from .graded import GradedRational, mono_key
from .lattice import IntegerLattice
from .series import XUSeries, compose

GR = GradedRational

__all__ = [
    "FGLContext", "LazardElement", "make_context", "fgl_add", "n_series",
    "shifted_coeffs", "t_table", "integrality_witness", "divide_by_p",
    "is_prime", "a_monomial_str", "universal_log_exp", "fgl_axiom_defects",
    "clear_caches",
]


def is_prime(n):
    if not isinstance(n, int) or n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


# ---------------------------------------------------------------------------
# universal law, independent of the prime

@lru_cache(maxsize=None)
def universal_log_exp(D):
    """Coefficient lists of log and exp up to ``y^{D+1}``.

    ``log_c[k]`` and ``exp_c[k]`` are the coefficients of ``y^k`` (index 0 is
    ``None``); ``log_c[k] = m_{k-1}``.
    """
    N = D + 1
    log_c = [None, GR.const(1)] + [GR.gen(k - 1) for k in range(2, N + 1)]
    exp_c = [None, GR.const(1)]
    y = XUSeries.monomial(1, 0, 1, 0, 2 * D)
    for n in range(2, N + 1):
        E = compose(exp_c, y)
        L = compose(log_c, E)
        # log(E + e_n y^n) = log(E) + e_n y^n + (terms of order > n)
        exp_c.append(-L.coefficient(0, n))
    return tuple(log_c), tuple(exp_c)


@lru_cache(maxsize=None)
def universal_fgl(D):
    """``{(k, j): a_{k,j}}`` for ``k + j <= D + 1``."""
    log_c, exp_c = universal_log_exp(D)
    lx = XUSeries({(k, 0): log_c[k] for k in range(1, D + 2)}, -2, D + 1, 2 * D)
    lu = XUSeries({(0, k): log_c[k] for k in range(1, D + 2)}, -2, D + 1, 2 * D)
    F = compose(exp_c, lx + lu)
    return {k: c for k, c in F.coeffs.items() if k[0] + k[1] <= D + 1}


# ---------------------------------------------------------------------------
# integrality lattices

def a_monomial_str(mono):
    """Format a sorted tuple of ``(k, j)`` pairs as ``a(1,1)^2*a(1,2)``."""
    if not mono:
        return "1"
    parts = []
    i = 0
    while i < len(mono):
        e = 1
        while i + e < len(mono) and mono[i + e] == mono[i]:
            e += 1
        k, j = mono[i]
        parts.append("a(%d,%d)" % (k, j) + ("^%d" % e if e > 1 else ""))
        i += e
    return "*".join(parts)


def witness_str(witness):
    if not witness:
        return "0"
    items = sorted(witness.items(), key=lambda kv: (len(kv[0]), kv[0]))
    out = ""
    for n, (mono, c) in enumerate(items):
        body = a_monomial_str(mono)
        if mono:
            body = body if abs(c) == 1 else "%d*%s" % (abs(c), body)
        else:
            body = str(abs(c))
        if n == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def _partitions(n, largest=None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


class _Level:
    """Lattice of ``MU_{2n}`` inside the m-monomials of degree ``2n``."""

    def __init__(self, n, columns, lattice, values):
        self.n = n
        self.columns = columns
        self.index = {k: i for i, k in enumerate(columns)}
        self.lattice = lattice
        self.values = values   # basis as (GradedRational, label)

    def vector(self, z):
        vec = [0] * len(self.columns)
        for k, c in z.terms.items():
            if isinstance(c, Fraction):
                return None
            vec[self.index[k]] = c
        return vec

    def value_of(self, vec):
        return GR(2 * self.n, {self.columns[i]: v for i, v in enumerate(vec) if v})


_LEVELS = {}


def _level(n):
    lev = _LEVELS.get(n)
    if lev is not None:
        return lev
    columns = []
    for part in _partitions(n):
        ex = {}
        for k in part:
            ex[k] = ex.get(k, 0) + 1
        columns.append(mono_key(ex))
    columns.sort()
    lat = IntegerLattice(len(columns))
    if n == 0:
        lev = _Level(0, columns, lat, None)
        lat.insert([1], {(): 1})
    else:
        lev = _Level(n, columns, lat, None)
        fgl = universal_fgl(max(n, 2))
        for d in range(1, n + 1):
            prev = _level(n - d)
            prev_basis = [(prev.value_of(v), lab) for v, lab in prev.lattice.basis()]
            for k in range(1, (d + 1) // 2 + 1):
                j = d + 1 - k
                if j < k:
                    continue
                a = fgl[(k, j)]
                for val, lab in prev_basis:
                    v = lev.vector(a * val)
                    if v is None:
                        raise AssertionError("a-monomial image is not m-integral")
                    new_lab = {tuple(sorted(mono + ((k, j),))): c for mono, c in lab.items()}
                    lat.insert(v, new_lab)
    _LEVELS[n] = lev
    return lev


@dataclass(frozen=True)
class LazardElement:
    """An element of `MU_*` with an optional integer a-polynomial witness."""

    value: GradedRational
    witness: dict = None

    @property
    def degree(self):
        return self.value.degree

    def evaluate_witness(self):
        """Image of the witness polynomial; equals ``value`` by construction."""
        if self.witness is None:
            raise ValueError("no witness")
        fgl = universal_fgl(max(2, self.value.degree // 2))
        total = GR.zero(self.value.degree)
        for mono, c in self.witness.items():
            term = GR.const(c)
            for kj in mono:
                term = term * fgl[tuple(sorted(kj))]
            total = total + term
        return total

    def __str__(self):
        if self.witness is not None:
            return witness_str(self.witness)
        return "[rational-form: %s]" % self.value

    def __bool__(self):
        return bool(self.value)


def integrality_witness(z, ctx=None):
    """Write ``z`` as an integer polynomial in the ``a_{k,j}``.

    Returns a :class:`LazardElement`, or ``None`` when ``z`` is certified
    not to lie in `MU_*`.
    """
    if not isinstance(z, GR):
        z = GR.const(z)
    if ctx is not None and z.degree > 2 * ctx.truncation:
        raise TruncationError("degree %d exceeds truncation 2D = %d"
                              % (z.degree, 2 * ctx.truncation), z.degree)
    if not z:
        return LazardElement(z, {})
    if z.degree < 0:
        return None
    lev = _level(z.degree // 2)
    vec = lev.vector(z)
    if vec is None:
        return None
    combo = lev.lattice.solve(vec)
    if combo is None:
        return None
    return LazardElement(z, combo)


def divide_by_p(z, p):
    """``z / p`` with an integrality witness, or ``None`` if not in `MU_*`.

    ``p`` may be an integer or a context.  Raises :class:`NotIntegralError`
    when ``z`` itself is not integral.
    """
    ctx = None
    if isinstance(p, FGLContext):
        ctx, p = p, p.prime
    if not isinstance(z, GR):
        z = GR.const(z)
    w = integrality_witness(z / p, ctx)
    if w is None:
        if integrality_witness(z, ctx) is None:
            raise NotIntegralError("%s is not in MU_*" % z)
        return None
    return w


# ---------------------------------------------------------------------------
# per-prime context

@dataclass(frozen=True, eq=False)
class FGLContext:
    """All coefficient tables for a prime ``p`` and truncation ``D``.

    ``fgl_table[(k, j)]`` is `a_{k,j}`; ``shifted_tables[i][(k, j)]`` is
    `a^{(i)}_{k,j}`; ``p_series[j]`` is `c_j`; ``inv_reps[i]`` is
    ``(i^{-1}, k_i)``; ``f_tables[i][j]`` is the `u^j` coefficient of `f_i`;
    ``t_tables[i][(l, j)]`` is `t^{(i)}_{l,j}`.  Missing entries inside the
    bounds are zero.
    """

    prime: int
    truncation: int
    log: tuple
    exp: tuple
    fgl_table: dict
    shifted_tables: dict
    p_series: dict
    inv_reps: dict
    f_tables: dict
    t_tables: dict
    _series: dict = field(default_factory=dict, repr=False)

    @property
    def max_deg(self):
        return 2 * self.truncation

    def _need(self, degree, what):
        if degree > 2 * self.truncation:
            raise TruncationError(
                "%s needs degree %d > 2D = %d" % (what, degree, 2 * self.truncation),
                degree)

    def units(self):
        return range(1, self.prime)

    def _unit(self, i):
        if not 1 <= i <= self.prime - 1:
            raise ValueError("index %r is not in 1..%d" % (i, self.prime - 1))

    def inv(self, i):
        """Lowest positive representative of ``i^{-1}`` mod p."""
        return self.inv_reps[i % self.prime][0]

    def c(self, j):
        """p-series coefficient `c_j`, of degree ``2(j-1)``."""
        if j <= 0:
            return GR.zero(0)
        self._need(2 * (j - 1), "c_%d" % j)
        return self.p_series.get(j, GR.zero(2 * (j - 1)))

    def a(self, k, j):
        if k < 0 or j < 0:
            raise ValueError("negative index")
        if k + j == 0:
            return GR.zero(0)
        self._need(2 * (k + j - 1), "a_{%d,%d}" % (k, j))
        return self.fgl_table.get((k, j), GR.zero(2 * (k + j - 1)))

    def a_shift(self, i, k, j):
        self._unit(i)
        if k + j == 0:
            return GR.zero(0)
        self._need(2 * (k + j - 1), "a^(%d)_{%d,%d}" % (i, k, j))
        return self.shifted_tables[i].get((k, j), GR.zero(2 * (k + j - 1)))

    def t(self, i, l, j):
        """`t^{(i)}_{l,j}`, of degree ``2(l+j+1)``; zero below ``j = -(l+1)``."""
        self._unit(i)
        if l < 0:
            raise ValueError("negative x-exponent")
        if j < -(l + 1):
            return GR.zero(0)
        self._need(2 * (l + j + 1), "t^(%d)_{%d,%d}" % (i, l, j))
        return self.t_tables[i].get((l, j), GR.zero(2 * (l + j + 1)))

    def f(self, i, j):
        self._unit(i)
        if j < 0:
            return GR.zero(0)
        self._need(2 * j, "f_%d coefficient %d" % (i, j))
        return self.f_tables[i].get(j, GR.zero(2 * j))

    # series views ---------------------------------------------------------

    def p_xu(self):
        """`[p]u` as an x-free series."""
        return n_series(self.prime, self)

    def t_series(self, i):
        """The chosen representative of ``(x +_F [i]u)^{-1}``."""
        self._unit(i)
        return XUSeries(self.t_tables[i], 2, self.truncation, self.max_deg)

    def shifted_series(self, i):
        """``x +_F [i]u`` as a bivariate series."""
        self._unit(i)
        return XUSeries(self.shifted_tables[i], -2, self.truncation + 1, self.max_deg)

    def fgl_series(self):
        return XUSeries(self.fgl_table, -2, self.truncation + 1, self.max_deg)

    def __repr__(self):
        return "FGLContext(p=%d, D=%d)" % (self.prime, self.truncation)


def _n_series_raw(n, log_c, exp_c, D):
    if n == 0:
        return XUSeries.zero(-2, D + 1, 2 * D)
    nlog = XUSeries.from_u({k: log_c[k] * n for k in range(1, D + 2)}, -2, D + 1, 2 * D)
    return compose(exp_c, nlog)


@lru_cache(maxsize=None)
def make_context(p, D):
    """Build (and cache) the context for prime ``p`` and truncation ``D``."""
    if not is_prime(p):
        raise ValueError("p = %r is not prime" % (p,))
    if not isinstance(D, int) or D < 2:
        raise ValueError("truncation D must be an integer >= 2, got %r" % (D,))
    log_c, exp_c = universal_log_exp(D)
    fgl = universal_fgl(D)
    max_deg = 2 * D
    F = XUSeries(fgl, -2, D + 1, max_deg)

    nser = {}
    for n in range(1, p + 1):
        nser[n] = _n_series_raw(n, log_c, exp_c, D)
    p_series = dict(nser[p].u_coeffs())

    inv_reps = {}
    for i in range(1, p):
        ii = pow(i, -1, p)
        inv_reps[i] = (ii, (ii * i - 1) // p)

    shifted, f_tables, t_tables = {}, {}, {}
    for i in range(1, p):
        S = F.substitute_u(nser[i])
        shifted[i] = dict(S.coeffs)
        ii = inv_reps[i][0]
        # f_i(u) = ([i^{-1}](y) / y) evaluated at y = [i]u
        quot = [nser[ii].coefficient(0, j + 1) for j in range(D + 1)]
        f = compose(quot, nser[i])
        f_tables[i] = dict(f.u_coeffs())
        # x-free, but must keep max_x wide so products retain x-terms
        g = XUSeries.from_u(f_tables[i], f.degree, D + 1, f.max_deg).shift_u(-1)
        B = S - nser[i]
        gB = (g * B).truncate(max_x=D)
        T = g.truncate(max_x=D)
        term = g.truncate(max_x=D)
        for _ in range(D):
            term = -(term * gB)
            if not term:
                break
            T = T + term
        t_tables[i] = dict(T.coeffs)

    ctx = FGLContext(
        prime=p, truncation=D, log=log_c, exp=exp_c, fgl_table=dict(fgl),
        shifted_tables=shifted, p_series=p_series, inv_reps=inv_reps,
        f_tables=f_tables, t_tables=t_tables)
    ctx._series.update({("n", n): s for n, s in nser.items()})
    return ctx


def clear_caches():
    """Forget memoized laws, lattices and contexts (for cold timings)."""
    universal_log_exp.cache_clear()
    universal_fgl.cache_clear()
    make_context.cache_clear()
    _LEVELS.clear()


def n_series(n, ctx):
    """`[n]u = exp(n log u)` as an x-free series."""
    key = ("n", n)
    s = ctx._series.get(key)
    if s is None:
        s = _n_series_raw(n, ctx.log, ctx.exp, ctx.truncation)
        ctx._series[key] = s
    return s


def fgl_add(f, g, ctx):
    """Formal sum ``exp(log f + log g)`` of two series without constant term."""
    for s in (f, g):
        if s.coefficient(0, 0):
            raise ValueError("formal sum needs series without constant term")
        if any(j < 0 for _, j in s.coeffs):
            raise ValueError("formal sum needs nonnegative u-powers")
    lf = compose(ctx.log, f)
    lg = compose(ctx.log, g)
    return compose(ctx.exp, lf + lg)


def _tri_mul(P, Q, n):
    out = {}
    for e1, c1 in P.items():
        s1 = sum(e1)
        for e2, c2 in Q.items():
            if s1 + sum(e2) > n:
                continue
            e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
            v = c1 * c2
            out[e] = out[e] + v if e in out else v
    return out


def _substitute(table, A, B, n):
    """``sum a_{k,j} A^k B^j`` for trivariate polynomials without constant term."""
    one = {(0, 0, 0): GR.const(1)}
    powA, powB = [one], [one]
    for _ in range(n):
        powA.append(_tri_mul(powA[-1], A, n))
        powB.append(_tri_mul(powB[-1], B, n))
    out = {}
    for k in range(n + 1):
        inner = {}
        for j in range(n + 1 - k):
            a = table.get((k, j))
            if not a:
                continue
            for e, c in powB[j].items():
                v = c * a
                inner[e] = inner[e] + v if e in inner else v
        for e, c in _tri_mul(powA[k], inner, n).items():
            out[e] = out[e] + c if e in out else c
    return out


def fgl_axiom_defects(table, n):
    """Coefficients at which a law ``{(k, j): a_{k,j}}`` breaks an axiom.

    Everything is compared through total order ``n``.  Returns a dict from
    ``"unit"``, ``"commutative"`` and ``"associative"`` to sorted lists of
    offending exponents; all lists are empty for a formal group law.

    >>> sorted(fgl_axiom_defects(universal_fgl(3), 4).items())
    [('associative', []), ('commutative', []), ('unit', [])]
    """
    zero = GR.zero()
    unit = []
    for k in range(n + 1):
        want = GR.const(1 if k == 1 else 0)
        for e in ((k, 0), (0, k)):
            if table.get(e, zero) - want:
                unit.append(e)
    comm = sorted(e for e in table if e[0] + e[1] <= n
                  and table[e] - table.get((e[1], e[0]), zero))
    Fxy = {(k, j, 0): c for (k, j), c in table.items() if k + j <= n and c}
    Fyz = {(0, k, j): c for (k, j), c in table.items() if k + j <= n and c}
    left = _substitute(table, Fxy, {(0, 0, 1): GR.const(1)}, n)
    right = _substitute(table, {(1, 0, 0): GR.const(1)}, Fyz, n)
    assoc = sorted(e for e in set(left) | set(right)
                   if left.get(e, zero) - right.get(e, zero))
    return {"unit": sorted(set(unit)), "commutative": comm, "associative": assoc}


def shifted_coeffs(i, ctx):
    """Table ``{(k, j): a^{(i)}_{k,j}}`` of ``x +_F [i]u``."""
    ctx._unit(i)
    return ctx.shifted_tables[i]


def t_table(i, ctx):
    """Table ``{(l, j): t^{(i)}_{l,j}}`` of the inverse of ``x +_F [i]u``."""
    ctx._unit(i)
    return ctx.t_tables[i]

