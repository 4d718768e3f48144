r"""
Generator and basis-word bookkeeping for the presented rings.

Generators of the geometric ring are encoded by ordinal pairs ``(n, j)``
standing for `x_{n\omega + j}`:

* block ``n = 0`` holds the `q`-generators, ``(0, k-1)`` is `q_k`;
* block ``n = l(p-1) + i - 1 >= 1`` holds `d^{(i)}_{l,j}` as ``(n, j)``.

Python tuple order on these pairs is exactly the ordinal order, so a word is
a sorted tuple of pairs.  A word is *basic* when it is empty, a single
`q_k`, or a product of `d`-generators in which every factor except the last
has ``j = 0``.
"""
from __future__ import annotations

from collections import namedtuple

Q = namedtuple("Q", "k")
Q.__doc__ = "The generator `q_k`."
D = namedtuple("D", "l j i")
D.__doc__ = "The generator `d^{(i)}_{l,j}`."

Q1 = (0, 0)


def q_gen(k):
    """Ordinal pair of `q_k`; ``None`` for the zero generator `q_0`."""
    if k < 0:
        raise ValueError("q index must be nonnegative")
    return None if k == 0 else (0, k - 1)


def d_gen(l, j, i, p):
    """Ordinal pair of `d^{(i)}_{l,j}`; ``None`` for the zero generators `d^{(1)}_{0,j}`."""
    if l < 0 or j < 0:
        raise ValueError("d indices must be nonnegative")
    if not 1 <= i <= p - 1:
        raise ValueError("d superscript %d is not a unit mod %d" % (i, p))
    if l == 0 and i == 1:
        return None
    return (l * (p - 1) + i - 1, j)


def to_gen(g, p):
    """Convert a :class:`Q` or :class:`D` index to an ordinal pair (or ``None``)."""
    if isinstance(g, Q):
        return q_gen(g.k)
    if isinstance(g, D):
        return d_gen(g.l, g.j, g.i, p)
    if isinstance(g, tuple) and len(g) == 2:
        return g
    raise TypeError("not a generator index: %r" % (g,))


def block_li(n, p):
    """``(l, i)`` of a nonzero block index."""
    return n // (p - 1), n % (p - 1) + 1


def li_block(l, i, p):
    return l * (p - 1) + i - 1


def from_gen(g, p):
    n, j = g
    if n == 0:
        return Q(j + 1)
    l, i = block_li(n, p)
    return D(l, j, i)


def gen_degree(g, p):
    n, j = g
    if n == 0:
        return 2 * j
    return 2 * (n // (p - 1) + j + 1)


def word_degree(word, p):
    return sum(gen_degree(g, p) for g in word)


def gen_str(g, p):
    n, j = g
    if n == 0:
        return "q(%d)" % (j + 1)
    l, i = block_li(n, p)
    return "d(%d,%d,%d)" % (l, j, i)


def is_basic(word):
    if len(word) <= 1:
        return True
    if any(n == 0 for n, _ in word):
        return False
    return all(j == 0 for _, j in word[:-1])


def basis_text(word, p):
    """Product form, e.g. ``d(0,0,2)*d(1,3,2)``; ``1`` for the empty word."""
    if not word:
        return "1"
    return "*".join(gen_str(g, p) for g in word)


def basis_label(word, p):
    """Compact label: ``1``, ``q(k)`` or ``d((l,i),...;j)``."""
    if not word:
        return "1"
    if word[0][0] == 0:
        return "q(%d)" % (word[0][1] + 1)
    pairs = ",".join("(%d,%d)" % block_li(n, p) for n, _ in word)
    return "d(%s;%d)" % (pairs, word[-1][1])


def _d_words(p, budget, min_block):
    """Sorted tuples of d-blocks whose ``l+1`` values sum to at most ``budget``."""
    out = []

    def rec(prefix, start, left):
        if prefix:
            out.append((tuple(prefix), left))
        n = start
        while True:
            l = n // (p - 1)
            if l + 1 > left:
                break
            prefix.append(n)
            rec(prefix, n, left - (l + 1))
            prefix.pop()
            n += 1

    rec([], min_block, budget)
    return out


def enumerate_basis(p, max_degree):
    """All basis words of degree at most ``max_degree``, sorted by (degree, word)."""
    words = [()]
    for k in range(1, max_degree // 2 + 2):
        if 2 * (k - 1) <= max_degree:
            words.append(((0, k - 1),))
    for blocks, left in _d_words(p, max_degree // 2, 1):
        init = tuple((n, 0) for n in blocks[:-1])
        for j in range(left + 1):
            words.append(init + ((blocks[-1], j),))
    words.sort(key=lambda w: (word_degree(w, p), w))
    return words
