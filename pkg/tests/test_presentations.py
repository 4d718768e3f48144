import pytest

from cobordism_forge.graded import GradedRational as GR
from cobordism_forge.lazard import make_context, n_series
from cobordism_forge.presentations import (D, Q, basis_label, enumerate_basis, gamma, kappa,
                                           kernel_test, mu_ring, multiply, normal_form,
                                           omega_ring, phi, pullback_equal, pullback_make,
                                           res, rho)
from cobordism_forge.presentations.generators import from_gen, gen_degree, word_degree
from cobordism_forge.series import XUSeries, divide_by_p_series

PRIMES = [2, 3, 5]


@pytest.fixture(scope="module", params=PRIMES)
def R(request):
    return omega_ring(make_context(request.param, 6))


# -- normal forms ------------------------------------------------------------

def test_q1_square(R):
    assert R.q(1) * R.q(1) == R.q(1) * R.p
    assert R.one() * R.d(0, 0, R.p - 1) == R.d(0, 0, R.p - 1) or R.p == 2


def test_q2_square(R):
    c = R.ctx.c
    expected = R.q(1) * c(3) + R.q(2) * c(2) - R.q(3) * R.p
    assert multiply(R.q(2), R.q(2)) == expected


def test_d_times_q1_collapses(R):
    for i in range(1, R.p):
        for l in range(1 if i == 1 else 0, 3):
            assert R.d(l, 0, i) * R.q(1) == R.q(1) * R.ctx.t(i, l, 0)


def test_basic_words_are_fixed(R):
    ctx = R.ctx
    if R.p > 2:
        x = normal_form([D(0, 1, 2)], ctx)
        assert list(x.terms) == [((1, 1),)]
    assert normal_form([Q(1)] * 3, ctx) == R.q(1) * R.p ** 2
    assert not normal_form([Q(0), Q(2)], ctx)
    assert not normal_form([D(0, 3, 1)], ctx)


def test_one_rewriting_step_at_three():
    R = omega_ring(make_context(3, 6))
    x = normal_form([D(0, 1, 2), D(0, 0, 2)], R.ctx)
    lead = max(x.terms, key=lambda w: (word_degree(w, 3), w))
    assert basis_label(lead, 3) == "d((0,2),(0,2);1)"
    assert R.kappa(x) == R.kappa(R.d(0, 1, 2)) * R.kappa(R.d(0, 0, 2))


def _generator_words(p, top):
    """Multisets of generators of total degree <= top, with q_1 used at most once."""
    gens = [(0, k) for k in range(1, top // 2 + 2)]
    gens += [(n, j) for n in range(1, (top // 2) * (p - 1) + 1) for j in range(top // 2)]
    gens = [g for g in gens if gen_degree(g, p) <= top] + [(0, 0)]
    out = []

    def rec(start, left, word):
        out.append(tuple(word))
        for k in range(start, len(gens)):
            g = gens[k]
            d = gen_degree(g, p)
            if d <= left and not (g == (0, 0) and (0, 0) in word):
                rec(k if g != (0, 0) else k + 1, left - d, word + [g])

    rec(0, top, [])
    return out


@pytest.mark.parametrize("p", PRIMES)
def test_products_span_exactly_the_enumerated_basis(p):
    top = 8
    R = omega_ring(make_context(p, 5))
    seen = set()
    for word in _generator_words(p, top):
        seen |= set(normal_form([from_gen(g, p) for g in word], R.ctx).terms)
    basis = set(enumerate_basis(p, top))
    assert seen == basis
    for w in basis:
        assert R.normal_form([from_gen(g, p) for g in w]) == R.basis_element(w)


def test_inhomogeneous_sum_rejected(R):
    with pytest.raises(ValueError):
        R.q(1) + R.q(2)


# -- kappa, res, kernel ------------------------------------------------------

def test_kappa_pins(R):
    T, p = R.target, R.p
    assert not kappa(R.q(1))
    assert kappa(R.q(2)) == T.u_inv(1, 1, -p)
    for i in range(2, p):
        assert kappa(R.d(0, 0, i)) == T.u_inv(i, 1) - T.u_inv(1, 1, pow(i, -1, p))


def test_kappa_is_multiplicative(R):
    T = R.target
    x = R.q(2) + R.d(0, 0, R.p - 1) if R.p > 2 else R.q(2)
    y = R.q(3) * 2 - (R.d(1, 0, 1) if R.p > 2 else R.q(3))
    assert R.kappa(x * y) == R.kappa(x) * R.kappa(y)
    assert R.kappa(R.one()) == T.one()


def test_res_pins(R):
    assert str(res(R.q(1))) == str(R.p)
    assert str(res(R.one())) == "1"
    ctx = R.ctx
    for i in range(1, R.p):
        for l, j in [(1, 0), (1, 2), (2, 1)]:
            assert R.res(R.d(l, j, i)) == ctx.t(i, l, j)
    assert R.res(R.q(3)) == ctx.c(3)


def test_kernel_test(R):
    flag, c = kernel_test(R.q(1))
    assert flag and str(c) == "1"
    flag, c = kernel_test(R.q(1) * R.p - multiply(R.q(1), R.q(1)))
    assert flag and str(c) == "0"
    if R.p > 2:
        assert kernel_test(R.d(0, 0, 2)) == (False, None)


# -- Gamma --------------------------------------------------------------------

def test_gamma_on_q(R):
    p, ctx = R.p, R.ctx
    base = -R.q(2) + (R.d(0, 0, p - 1) if p > 2 else R.zero())
    assert gamma(R.one()) == base
    for j in range(1, 5):
        assert gamma(R.q(j)) == base * ctx.c(j) + R.q(j + 1)
    T = R.target
    assert R.kappa(gamma(R.q(1))) == T.u_inv(p - 1, 1, p)
    assert not gamma(R.zero())


# -- the pullback ring -------------------------------------------------------

@pytest.fixture(scope="module", params=PRIMES)
def M(request):
    return mu_ring(make_context(request.param, 6))


def test_eta_one_and_u_q1(M):
    assert pullback_equal(pullback_make([("eta", 1)], M.ctx), M.one())
    assert M.equal(M.u() * M.q(1), M.zero())
    assert M.equal(M.q(0), M.zero())


def test_eta_relation(M):
    ctx = M.ctx
    for i in range(1, M.p):
        ii, k = ctx.inv_reps[i]
        lhs = M.eta(i) * (M.u() * M.d(0, 0, i) + ii)
        assert M.equal(lhs, M.one() + M.q(1) * k)


def test_rho_pins(M):
    ctx, p = M.ctx, M.p
    assert rho([("eta", 1)], ctx) == XUSeries.one(0, 2 * ctx.truncation)
    assert rho([("q", 0)], ctx) == n_series(p, ctx).truncate(max_x=0)
    for i in range(1, p):
        r = rho([("eta", i)], ctx)
        assert r.coefficient(0, 0) == GR.const(i)


def test_phi_pins(M):
    ctx, p = M.ctx, M.p
    u = XUSeries.monomial(1, 0, 1, 0, 2 * ctx.truncation)
    assert phi("u", ctx, 1) == u
    for i in range(1, p):
        assert phi("u", ctx, i) == n_series(i, ctx).truncate(max_x=0)
    assert phi("d", ctx, 0, 1) == XUSeries.monomial(1, 0, -1, 0, 2 * ctx.truncation)


def test_pullback_compare_reports_channel(M):
    ok, why = M.compare(M.u(), M.zero())
    assert not ok and "kappa" in why
    # same kappa image, series off by something not divisible by [p]u
    x = M.q(1)
    y = M.q(1) + M.scalar(1) - M.scalar(1)
    assert M.equal(x, y)
    ctx = M.ctx
    fake = type(x)(M, x.rho + XUSeries.monomial(1, 0, 0, 0, 2 * ctx.truncation), x.kappa)
    ok, why = M.compare(fake, x)
    assert not ok and "u^" in why


def test_rho_channel_exact_division(M):
    ctx = M.ctx
    diff = (M.u() * M.q(1)).rho
    Q = divide_by_p_series(diff, ctx, floor=0)
    assert (n_series(M.p, ctx).truncate(max_x=0) * Q - diff).truncate(
        max_deg=2 * ctx.truncation) == XUSeries.zero(diff.degree, 0, 2 * ctx.truncation)
