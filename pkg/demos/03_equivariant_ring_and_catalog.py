"""
The equivariant ring MU^{C_p}_* as a pullback, and the identification of
geometric generators (points, spheres and projective spaces with C_p-actions)
in the normal-form basis.

Run:  python3 demos/03_equivariant_ring_and_catalog.py [prime] [max_degree]
"""
import sys

from cobordism_forge.lazard import make_context
from cobordism_forge.parser import evaluate
from cobordism_forge.presentations import mu_ring
from cobordism_forge.verify import kosniowski_catalog, kosniowski_N


def main(p=5, D=5):
    ctx = make_context(p, D)
    M = mu_ring(ctx)

    print("Each element is a pair (series in u mod [p]u, Laurent polynomial).")
    for a, b in [("eta(1)", "1"), ("u*q(1)", "0"), ("eta(2)*q(1)", "2*q(1)"), ("eta(2)", "2")]:
        x, y = evaluate(a, ctx, "mu"), evaluate(b, ctx, "mu")
        ok, why = M.compare(x, y)
        print("  %-12s == %-7s : %s%s" % (a, b, ok, "" if ok else "  (%s)" % why))
    # eta(2) and 2 agree only modulo u; the difference is u times an explicit element
    k = ctx.inv_reps[2][1]
    lhs = evaluate("eta(2) - 2", ctx, "mu")
    rhs = M.u() * (M.eta(2) * M.q(2) * k - M.eta(2) * M.d(0, 0, 2) * 2)
    print("  eta(2) - 2 == u*(...)  :", M.equal(lhs, rhs))

    print("\nGeometric generators at p = %d:" % p)
    catalog = kosniowski_catalog(ctx)
    for e in catalog:
        if e.status == "unresolved":
            continue
        line = "  %-18s %-9s" % (e.tag, e.status)
        if e.claimed is not None:
            line += " %s" % e.claimed
        print(line)
        if e.N is not None:
            print("  %18s N = %d, M = %s" % ("", e.N, e.M))
    # higher projective spaces carry fixed-point data only; elimination from
    # that data alone does not reach the basis under these conventions
    rest = [e.tag for e in catalog if e.status == "unresolved"]
    print("  (%d entries with fixed-point data only: %s ...)" % (len(rest), ", ".join(rest[:3])))

    print("\nN_{p,i} for small primes:")
    for q in (5, 7, 11, 13):
        print("  p = %2d:" % q, [kosniowski_N(q, i) for i in range(2, (q - 1) // 2 + 1)])


if __name__ == "__main__":
    main(*[int(a) for a in sys.argv[1:3]])
