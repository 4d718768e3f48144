"""
Integer row lattices in echelon form, with bookkeeping of how every basis
row was obtained from the inserted generators.

Used to decide membership of a rational vector in the lattice spanned by
finitely many integer vectors and, on success, to return an integer
combination of the generators' labels which produces it.
"""
from __future__ import annotations


def xgcd(a, b):
    """Return ``(g, s, t)`` with ``g = s*a + t*b = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _combine(x, a, y, b):
    """``a*x + b*y`` for label dictionaries."""
    out = {}
    if a:
        for k, v in x.items():
            out[k] = a * v
    if b:
        for k, v in y.items():
            w = out.get(k, 0) + b * v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
    return {k: v for k, v in out.items() if v}


def _axpy(a, x, y):
    return [a * xi + yi for xi, yi in zip(x, y)]


class IntegerLattice:
    """Row lattice in ``Z^n``.

    Rows are kept so that row ``r`` has its first nonzero entry (the pivot,
    positive) at a column no other row pivots on.  Each row carries a label,
    an integer combination ``{label_key: int}`` of inserted generators.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = {}   # pivot column -> (vector, label)

    @property
    def rank(self):
        return len(self.rows)

    def insert(self, vec, label):
        vec = list(vec)
        if len(vec) != self.ncols:
            raise ValueError("vector has wrong length")
        while True:
            col = next((i for i, v in enumerate(vec) if v), None)
            if col is None:
                return
            if col not in self.rows:
                if vec[col] < 0:
                    vec = [-v for v in vec]
                    label = {k: -v for k, v in label.items()}
                self.rows[col] = (vec, label)
                self._reduce_above(col)
                return
            rvec, rlab = self.rows[col]
            a, b = rvec[col], vec[col]
            g, s, t = xgcd(a, b)
            # unimodular step: new pivot row gets gcd, remainder loses the column
            new_r = [s * x + t * y for x, y in zip(rvec, vec)]
            new_l = _combine(rlab, s, label, t)
            rest = [(-b // g) * x + (a // g) * y for x, y in zip(rvec, vec)]
            rest_l = _combine(rlab, -b // g, label, a // g)
            self.rows[col] = (new_r, new_l)
            self._reduce_above(col)
            vec, label = rest, rest_l

    def _reduce_above(self, col):
        # keep entries above a pivot in [0, pivot) so numbers stay small
        pvec, plab = self.rows[col]
        piv = pvec[col]
        for c, (rvec, rlab) in list(self.rows.items()):
            if c < col and rvec[col]:
                q = rvec[col] // piv
                if q:
                    self.rows[c] = (_axpy(-q, pvec, rvec), _combine(rlab, 1, plab, -q))

    def solve(self, vec):
        """Return a label combination producing ``vec``, or ``None``."""
        vec = list(vec)
        combo = {}
        for col in range(self.ncols):
            v = vec[col]
            if not v:
                continue
            row = self.rows.get(col)
            if row is None:
                return None
            rvec, rlab = row
            q, r = divmod(v, rvec[col])
            if r:
                return None
            vec = _axpy(-q, rvec, vec)
            combo = _combine(combo, 1, rlab, q)
        return combo

    def basis(self):
        return [self.rows[c] for c in sorted(self.rows)]
