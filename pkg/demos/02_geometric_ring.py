"""
Arithmetic in the geometric ring: normal forms, the fixed-point map kappa,
restriction to MU_*, and the degree-raising operation Gamma.

Run:  python3 demos/02_geometric_ring.py [prime] [max_degree]
"""
import sys

from cobordism_forge.lazard import make_context
from cobordism_forge.parser import evaluate
from cobordism_forge.presentations import basis_text, omega_ring
from cobordism_forge.presentations.omega import coeff_str


def show(R, ctx, text):
    x = evaluate(text, ctx)
    print("%-22s -> %s" % (text, x))
    print("%22s    kappa = %s" % ("", R.kappa(x).to_str(coeff_str)))
    print("%22s    res   = %s" % ("", coeff_str(R.res(x))))


def main(p=3, D=6):
    ctx = make_context(p, D)
    R = omega_ring(ctx)

    print("Basis of the geometric ring over MU_* up to degree 4 (p = %d):" % p)
    print("  " + ", ".join(basis_text(w, p) for w in R.basis(4)))

    print("\nProducts reduce to the basis:")
    for text in ["q(1)*q(1)", "q(2)*q(2)", "d(0,1,2)*q(1)", "d(0,1,2)*d(0,1,2)"]:
        show(R, ctx, text)

    # q_1 is invisible to kappa; it is detected by res alone, and is torsion-free
    x = evaluate("a(1,1)*q(1)", ctx)
    flag, c = R.kernel_test(x)
    print("\nkernel_test(a(1,1)*q(1)) = %s, coefficient %s, res = %s"
          % (flag, coeff_str(c), coeff_str(R.res(x))))

    print("\nGamma raises degree by 2 and obeys the fixed-point contract:")
    x = R.one()
    for n in range(4):
        print("Gamma^%d(1) = %s" % (n, x))
        x = R.gamma(x)
    T = R.target
    y = R.q(2)
    lhs = R.kappa(R.gamma(y))
    rhs = T.u_inv(1, 1) * R.kappa(y) + T.u_inv(p - 1, 1) * R.res(y)
    print("kappa(Gamma q_2) - (u^-1 kappa(q_2) + res(q_2) u_%d^-1) = %s"
          % (p - 1, (lhs - rhs).to_str()))


if __name__ == "__main__":
    main(*[int(a) for a in sys.argv[1:3]])
