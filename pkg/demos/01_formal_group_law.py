"""
Walk through the coefficient layer: the universal formal group law, the
p-series, integrality witnesses in MU_*, and the inverse table t.

Run:  python3 demos/01_formal_group_law.py [prime] [max_degree]
"""
import sys

from cobordism_forge.lazard import (fgl_axiom_defects, integrality_witness, make_context,
                                    universal_fgl)
from cobordism_forge.presentations.omega import coeff_str


def section(title):
    print()
    print(title)
    print("-" * len(title))


def main(p=3, D=5):
    ctx = make_context(p, D)

    section("The universal law in logarithm coordinates m_i")
    fgl = universal_fgl(3)
    for (k, j) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3)]:
        print("a(%d,%d) = %s" % (k, j, fgl[(k, j)]))
    # F(F(x,y),z) = F(x,F(y,z)) coefficient by coefficient
    defects = fgl_axiom_defects(universal_fgl(D), D + 1)
    print("axiom defects through total order %d: %s" % (D + 1, defects))

    section("The %d-series [%d]u = sum c_j u^j" % (p, p))
    for j in range(D + 1):
        c = ctx.c(j)
        w = integrality_witness(c)
        print("c_%d = %-28s  witness: %s" % (j, c, w))

    # Rational is not the same as integral: half of a(1,1) has no witness.
    half = ctx.a(1, 1) / 2
    print("\na(1,1)/2 = %s, witness: %s" % (half, integrality_witness(half)))
    both = ctx.a(1, 2) + ctx.a(2, 1)
    print("a(1,2) + a(2,1) has witness %s" % integrality_witness(both))

    section("Inverse of x +_F [i]u modulo [p]u, a few entries")
    for i in range(1, p):
        row = ["t_{0,%d} = %s" % (j, coeff_str(ctx.t(i, 0, j))) for j in range(-1, 2)]
        print("i = %d: %s" % (i, ", ".join(row)))
    # for i = 1 the leading term is u^{-1} and all t_{0,j}, j >= 0, vanish
    print("\nt_{0,-1}^(i) is the inverse of i mod %d:" % p,
          [coeff_str(ctx.t(i, 0, -1)) for i in range(1, p)])


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:3]]
    main(*args)
