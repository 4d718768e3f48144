"""
Expression language for elements of the geometric ring and of `MU^{C_p}_*`.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | factor
    factor := atom ("^" uint)?
    atom   := uint | "q(" uint ")" | "d(" uint "," uint "," uint ")"
            | "eta(" uint ")" | "u" | "a(" uint "," uint ")" | "(" expr ")"

``mode="omega"`` evaluates into normal forms, ``mode="mu"`` into pullback
pairs.  ``eta`` and ``u`` only exist in the second mode, and ``d(0,j,1)``
is refused in the first because it is identically zero there (use ``0``).

>>> from cobordism_forge.lazard import make_context
>>> ctx = make_context(2, 6)
>>> str(evaluate("q(1)*q(1) - 2*q(1)", ctx))
'0'
"""
from __future__ import annotations

import re
from collections import namedtuple

from .errors import ParseError
from .graded import GradedRational
from .presentations.omega import omega_ring
from .presentations.pullback import mu_ring

GR = GradedRational

Node = namedtuple("Node", "kind args pos")
Node.__doc__ = "AST node; ``pos`` is the 0-based offset of its first character."

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(\S))")
MODES = ("omega", "mu")


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.toks = []
        for m in _TOKEN.finditer(text):
            num, name, op = m.groups()
            if num is not None:
                self.toks.append(("int", int(num), m.start(1)))
            elif name is not None:
                self.toks.append(("name", name, m.start(2)))
            elif op is not None:
                self.toks.append(("op", op, m.start(3)))
        self.toks.append(("end", None, len(text.rstrip())))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, pos=None):
        if pos is None:
            pos = self.peek()[2]
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return ParseError(msg, line, col)

    def expect(self, op):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            shown = "end of input" if kind == "end" else repr(str(val))
            raise self.error("expected %r, found %s" % (op, shown))
        return self.next()

    def uint(self):
        kind, val, pos = self.peek()
        if kind != "int":
            raise self.error("expected a nonnegative integer")
        self.next()
        return val


_ARITY = {"q": 1, "d": 3, "eta": 1, "a": 2}


class _Parser:
    def __init__(self, text, mode, prime):
        if mode not in MODES:
            raise ValueError("mode must be one of %s" % (MODES,))
        self.t = _Tokens(text)
        self.mode = mode
        self.prime = prime

    def parse(self):
        if self.t.peek()[0] == "end":
            raise self.t.error("empty expression")
        node = self.expr()
        kind, val, pos = self.t.peek()
        if kind != "end":
            raise self.t.error("unexpected %r" % str(val))
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, val, pos = self.t.peek()
            if kind == "op" and val in "+-":
                self.t.next()
                node = Node("add" if val == "+" else "sub", (node, self.term()), pos)
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            kind, val, pos = self.t.peek()
            if kind == "op" and val == "*":
                self.t.next()
                node = Node("mul", (node, self.unary()), pos)
            else:
                return node

    def unary(self):
        kind, val, pos = self.t.peek()
        if kind == "op" and val == "-":
            self.t.next()
            return Node("neg", (self.unary(),), pos)
        return self.factor()

    def factor(self):
        node = self.atom()
        kind, val, pos = self.t.peek()
        if kind == "op" and val == "^":
            self.t.next()
            node = Node("pow", (node, self.t.uint()), pos)
        return node

    def atom(self):
        kind, val, pos = self.t.next()
        if kind == "int":
            return Node("int", (val,), pos)
        if kind == "op" and val == "(":
            node = self.expr()
            self.t.expect(")")
            return node
        if kind == "name":
            if val == "u":
                if self.mode != "mu":
                    raise self.t.error("'u' is only available in mu mode", pos)
                return Node("u", (), pos)
            if val in _ARITY:
                self.t.expect("(")
                args = [self.t.uint()]
                for _ in range(_ARITY[val] - 1):
                    self.t.expect(",")
                    args.append(self.t.uint())
                self.t.expect(")")
                self._check(val, args, pos)
                return Node(val, tuple(args), pos)
            raise self.t.error("unknown symbol %r" % val, pos)
        if kind == "end":
            raise self.t.error("unexpected end of input", pos)
        raise self.t.error("unexpected %r" % str(val), pos)

    def _check(self, name, args, pos):
        p = self.prime
        if name == "eta":
            if self.mode != "mu":
                raise self.t.error("'eta' is only available in mu mode", pos)
            i = args[0]
            if p is not None and not 1 <= i <= p - 1:
                raise self.t.error("eta(%d): index must lie in 1..%d" % (i, p - 1), pos)
        elif name == "d":
            l, j, i = args
            if i == 0 or (p is not None and i >= p):
                hi = "p-1" if p is None else str(p - 1)
                raise self.t.error("d(%d,%d,%d): superscript must lie in 1..%s" % (l, j, i, hi), pos)
            if self.mode == "omega" and l == 0 and i == 1:
                raise self.t.error(
                    "d(0,%d,1) is not a generator: d(0,j,1) vanishes in the geometric ring" % j, pos)
        elif name == "a":
            k, j = args
            if k + j == 0:
                raise self.t.error("a(0,0) is not a coefficient of the formal group law", pos)


def parse(text, mode="omega", prime=None):
    """Parse ``text`` into a :class:`Node` tree.

    When ``prime`` is given, superscripts are range-checked against it.
    """
    return _Parser(text, mode, prime).parse()


class _Evaluator:
    def __init__(self, ctx, mode, text):
        self.ctx = ctx
        self.mode = mode
        self.text = text
        self.R = omega_ring(ctx) if mode == "omega" else mu_ring(ctx)

    def error(self, msg, pos):
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return ParseError(msg, line, col)

    def lift(self, v):
        return v if not isinstance(v, GR) else self.R.scalar(v)

    def ev(self, node):
        k, a, pos = node
        R, ctx = self.R, self.ctx
        if k == "int":
            return GR.const(a[0])
        if k == "a":
            return ctx.a(*a)
        if k == "q":
            return R.q(a[0])
        if k == "d":
            return R.d(*a)
        if k == "eta":
            return R.eta(a[0])
        if k == "u":
            return R.u()
        if k == "neg":
            return -self.ev(a[0])
        if k == "pow":
            return self.ev(a[0]) ** a[1]
        x, y = self.ev(a[0]), self.ev(a[1])
        if k == "mul":
            if isinstance(x, GR) and not isinstance(y, GR):
                x, y = y, x
            return x * y
        if isinstance(x, GR) and isinstance(y, GR):
            return self._sum(x, y, k, pos)
        return self._sum(self.lift(x), self.lift(y), k, pos)

    def _sum(self, x, y, k, pos):
        dx, dy = _degree(x), _degree(y)
        if dx is not None and dy is not None and dx != dy:
            raise self.error("inhomogeneous sum: degrees %d and %d" % (dx, dy), pos)
        return x + y if k == "add" else x - y


def _degree(v):
    """Total degree of a nonzero value, ``None`` for zero."""
    if isinstance(v, GR):
        return v.degree if v else None
    if hasattr(v, "kappa"):
        if v.rho:
            return v.rho.degree
        degs = v.kappa.degrees()
        return min(degs) if degs else None
    return v.degree


def evaluate(text, ctx, mode="omega"):
    """Parse and evaluate ``text``; returns a ring element (scalars are lifted)."""
    tree = parse(text, mode, ctx.prime)
    ev = _Evaluator(ctx, mode, text)
    return ev.lift(ev.ev(tree))
