import random
from fractions import Fraction
from itertools import combinations

import pytest

from yokonuma.algebra import YokonumaHecke, affine_hecke
from yokonuma.coeffring import ONE, U, V, ZERO, parse_poly, root_of_unity, xparam
from yokonuma.combinatorics import all_perms
from yokonuma.isomorphism import HeckeTensor, ResourceError
from yokonuma.traces import (
    Z0, AffineTrace, MarkovSpec, TraceParams, affine_trace, ocneanu_trace, rho_basic,
    rho_from_tilde, rho_tilde, tensor_trace, x_ab,
)

x = lambda a, k=1: xparam(k, a)


def two_strand_trace(k):
    """
    tau_2(g^k) in H_2 without the engine: elements are pairs (a, b) = a + b g,
    with g^2 = u^2 + v g, g^-1 = u^-2 g - u^-2 v and tau_2(a + b g) = a z0 + b.
    """
    def mul(p, q):
        a, b = p
        c, e = q
        # (a + b g)(c + e g) = ac + (ae + bc) g + be (u^2 + v g)
        return (a * c + b * e * U * U, a * e + b * c + b * e * V)

    step = (ZERO, ONE) if k >= 0 else (-(U ** -2) * V, U ** -2)
    acc = (ONE, ZERO)
    for _ in range(abs(k)):
        acc = mul(acc, step)
    return acc[0] * Z0 + acc[1]


class TestOcneanu:
    def test_small_values(self):
        assert ocneanu_trace(affine_hecke(1).one()) == ONE
        assert ocneanu_trace(affine_hecke(2).g(1)) == ONE
        assert ocneanu_trace(affine_hecke(2).one()) == V ** -1 * (ONE - U * U)
        assert ocneanu_trace(affine_hecke(2).g(1) ** 3) == parse_poly("2*u^2 - u^4 + v^2")

    def test_z0_is_forced_by_the_markov_axiom(self):
        # tau_2(g^-1) = tau_1(1) = 1 and g^-1 = u^-2 g - u^-2 v give
        # 1 = u^-2 - u^-2 v tau_2(1), i.e. tau_2(1) = v^-1 (1 - u^2)
        assert (ONE - U ** 2) * V ** -1 == Z0
        H = affine_hecke(2)
        assert ocneanu_trace(H.g_inv(1)) == ONE

    @pytest.mark.parametrize("k", range(-5, 6))
    def test_powers_of_one_crossing(self, k):
        H = affine_hecke(2)
        elem = H.g(1) ** k if k >= 0 else H.g_inv(1) ** -k
        assert ocneanu_trace(elem) == two_strand_trace(k)

    def test_markov_and_trace_axioms_on_h3(self):
        H3, H4 = affine_hecke(3), affine_hecke(4)
        basis = [H3.basis(w=w) for w in all_perms(3)]
        for b in basis:
            e = b.embed()
            assert ocneanu_trace(e * H4.g(3)) == ocneanu_trace(b)
            assert ocneanu_trace(e * H4.g_inv(3)) == ocneanu_trace(b)
            assert ocneanu_trace(e) == Z0 * ocneanu_trace(b)
            for c in basis:
                assert ocneanu_trace(b * c) == ocneanu_trace(c * b)

    def test_rejects_loops(self):
        with pytest.raises(ValueError):
            ocneanu_trace(affine_hecke(2).X(1))


class TestAffineTrace:
    def test_examples(self):
        H1, H2 = affine_hecke(1), affine_hecke(2)
        for a in (-2, -1, 1, 3):
            assert affine_trace(H1.X(1, a)) == x(a)
        assert affine_trace(H2.X(1) * H2.g(1)) == x(1)
        # g^-1 X1 g = X2 - u^-2 v X1 g, and tau_2(X~_2) = x_1 tau_2(1)
        assert affine_trace(H2.xtilde(2)) == x(1) * Z0
        assert affine_trace(H2.X(2)) == x(1) * (Z0 + U ** -2 * V)

    def test_loop_on_two_strands_by_hand(self):
        # X2 = u^-2 g X1 g, so tau(X2) = u^-2 tau(X1 g^2) = tau(X1) + u^-2 v tau(X1 g)
        H2 = affine_hecke(2)
        assert affine_trace(H2.X(1)) == Z0 * x(1)
        assert H2.X(1) * H2.g(1) * H2.g(1) == H2.X(1) * U ** 2 + H2.X(1) * H2.g(1) * V
        expected = affine_trace(H2.X(1)) + U ** -2 * V * affine_trace(H2.X(1) * H2.g(1))
        assert affine_trace(H2.X(2)) == expected

    def test_conversion_seed(self):
        H = affine_hecke(2)
        assert H.X(2) == H.xtilde(2) + H.X(1) * H.g(1) * (U ** -2 * V)

    def test_reduction_rules(self):
        H = affine_hecke(3)
        for m in (2, 3):
            g = H.g(m - 1)
            assert H.X(m) * g == g * H.X(m - 1) + H.X(m) * V
            assert H.X(m, -1) * g == g * H.X(m - 1, -1) - H.X(m - 1, -1) * V
            for k in (1, 2, -1):
                lhs = H.xtilde_power(m, k) * g
                rhs = g * H.xtilde_power(m - 1, k) - H.xtilde_power(m - 1, k) * V + H.xtilde_power(m, k) * V
                assert lhs == rhs

    def test_agrees_with_ocneanu_without_loops(self):
        for n in (1, 2, 3, 4):
            H = affine_hecke(n)
            for w in all_perms(n):
                assert affine_trace(H.basis(w=w)) == ocneanu_trace(H.basis(w=w))

    @pytest.mark.parametrize("m", [2, 3])
    def test_loop_rule(self, m):
        H, Hl = affine_hecke(m), affine_hecke(m - 1)
        rng = random.Random(m)
        for _ in range(10):
            h = random_affine(rng, Hl)
            for k in (-2, -1, 1, 2):
                lhs = affine_trace(H.xtilde_power(m, k) * h.embed())
                assert lhs == x(k) * affine_trace(h.embed())

    def test_trace_and_markov_properties(self):
        rng = random.Random(11)
        for _ in range(40):
            n = rng.choice((2, 3))
            H = affine_hecke(n)
            a, b = random_affine(rng, H), random_affine(rng, H)
            assert affine_trace(a * b) == affine_trace(b * a)
            Hn = affine_hecke(n + 1)
            assert affine_trace(a.embed() * Hn.g(n)) == affine_trace(a)
            assert affine_trace(a.embed() * Hn.g_inv(n)) == affine_trace(a)

    def test_random_strategy_matches_canonical(self):
        rng = random.Random(5)
        ev = AffineTrace(strategy="random", seed=9)
        for _ in range(50):
            H = affine_hecke(rng.choice((2, 3)))
            h = random_affine(rng, H) + random_affine(rng, H) * U
            assert ev(h) == affine_trace(h)

    def test_concrete_parameters(self):
        params = TraceParams.of(1, {1: 2, -1: U})
        H = affine_hecke(2)
        assert affine_trace(H.X(1) * H.g(1), params) == parse_poly("2")
        assert affine_trace(H.X(2, -1), params) == affine_trace(H.X(2, -1)).substitute(
            {"x(1,-1)": U})
        assert params.x(0) == ONE and params.x(5) == x(5)

    def test_degree_bound(self):
        H = affine_hecke(2)
        with pytest.raises(ResourceError):
            affine_trace(H.X(1, 4) * H.X(2, 3), max_degree=6)
        with pytest.raises(ValueError):
            affine_trace(YokonumaHecke(2, 1).X(1))
        with pytest.raises(ValueError):
            AffineTrace(strategy="greedy")


def random_affine(rng, H, max_loops=2):
    n = H.n
    lam = [0] * n
    for _ in range(rng.randint(0, max_loops)):
        lam[rng.randrange(n)] += rng.choice((-1, 1))
    return H.basis(lam=lam, w=rng.choice(all_perms(n)))


class TestBasicTraces:
    def test_tensor_examples(self):
        H2 = affine_hecke(2)
        spec = MarkovSpec.make(2, {1, 2})
        assert tensor_trace(HeckeTensor((1, 1), H2.one()), spec) == ONE
        assert tensor_trace(HeckeTensor((2, 0), H2.one()), spec) == ZERO
        single = MarkovSpec.make(3, {2})
        h = H2.X(2) * H2.g(1)
        assert tensor_trace(HeckeTensor((0, 2, 0), h), single) == affine_trace(h, TraceParams(2))

    def test_tensor_splits_factors(self):
        H3 = affine_hecke(3)
        spec = MarkovSpec.make(2, {1, 2})
        t = HeckeTensor((2, 1), H3.X(1) * H3.X(3, -1) * H3.g(1))
        assert tensor_trace(t, spec) == x(1, 1) * x(-1, 2)

    def test_one_strand(self):
        for d in (1, 2, 3):
            one = YokonumaHecke(d, 1).one()
            for r in range(1, d + 1):
                for S in combinations(range(1, d + 1), r):
                    expected = ONE if len(S) == 1 else ZERO
                    assert rho_basic(one, MarkovSpec.make(d, S)) == expected

    def test_d1_is_the_affine_trace(self):
        rng = random.Random(2)
        spec = MarkovSpec.make(1, {1})
        for _ in range(20):
            H = affine_hecke(rng.choice((2, 3)))
            h = random_affine(rng, H)
            assert rho_basic(h, spec) == affine_trace(h)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            MarkovSpec.make(2, set())
        with pytest.raises(ValueError):
            MarkovSpec.make(2, {3})
        with pytest.raises(ValueError):
            MarkovSpec.make(2, {1}, {2: TraceParams(2)})
        with pytest.raises(ValueError):
            rho_basic(YokonumaHecke(3, 1).one(), MarkovSpec.make(2, {1}))

    @pytest.mark.parametrize("S", [{1}, {2}, {1, 2}])
    def test_trace_property(self, S):
        rng = random.Random(len(S) * 10 + min(S))
        A = YokonumaHecke(2, 3)
        spec = MarkovSpec.make(2, S)
        for _ in range(100):
            a, b = random_monomial(rng, A), random_monomial(rng, A)
            assert rho_basic(a * b, spec) == rho_basic(b * a, spec)

    @pytest.mark.parametrize("d", [1, 2])
    def test_markov_property(self, d):
        rng = random.Random(d)
        for r in range(1, d + 1):
            for S in combinations(range(1, d + 1), r):
                spec = MarkovSpec.make(d, S)
                for n in (1, 2, 3):
                    A, B = YokonumaHecke(d, n), YokonumaHecke(d, n + 1)
                    for _ in range(8):
                        h = random_monomial(rng, A)
                        base = rho_basic(h, spec)
                        assert rho_basic(h.embed() * B.g(n), spec) == base
                        assert rho_basic(h.embed() * B.g_inv(n), spec) == base


def random_monomial(rng, A):
    a = [rng.randrange(A.d) for _ in range(A.n)]
    lam = [0] * A.n
    if rng.random() < 0.6:
        lam[rng.randrange(A.n)] = rng.choice((-1, 1))
    return A.basis(a, lam, rng.choice(all_perms(A.n)))


class TestCombinedTraces:
    def test_single_colour(self):
        A = YokonumaHecke(2, 2)
        h = A.X(1) * A.g(1) * A.t(2)
        assert rho_tilde(h, 2, {1}) == rho_basic(h, MarkovSpec.make(2, {1}))

    def test_two_colours(self):
        A = YokonumaHecke(2, 2)
        h = A.X(2) * A.g(1) + A.t(1)
        expected = (rho_basic(h, MarkovSpec.make(2, {1})) + rho_basic(h, MarkovSpec.make(2, {2}))
                    + Z0 * rho_basic(h, MarkovSpec.make(2, {1, 2}))) * Fraction(1, 2)
        assert rho_tilde(h, 2, {1, 2}) == expected
        with pytest.raises(ValueError):
            rho_tilde(h, 2, set())

    def test_x_ab(self):
        assert x_ab(1, 0, 2, {1, 2}) == (x(1, 1) + x(1, 2)) * Fraction(1, 2)
        assert x_ab(1, 1, 2, {1, 2}) == (x(1, 1) - x(1, 2)) * Fraction(1, 2)
        assert x_ab(0, 1, 3, {1, 2}) == (ONE + ONE.scale(root_of_unity(3, 1))) * Fraction(1, 2)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_loop_and_framing_rule(self, n):
        d, D = 2, {1, 2}
        A = YokonumaHecke(d, n)
        low = YokonumaHecke(d, n - 1) if n > 1 else None
        rng = random.Random(n)
        samples = [random_monomial(rng, low).embed() for _ in range(4)] if low else [A.one()]
        for h in samples:
            base = rho_tilde(h, d, D)
            for a in (-1, 0, 1):
                for b in (0, 1):
                    lhs = rho_tilde(A.xtilde_power(n, a) * A.t(n, b) * h, d, D)
                    assert lhs == x_ab(a, b, d, D) * base

    def test_change_of_basis_inverts(self):
        rng = random.Random(4)
        d = 3
        A = YokonumaHecke(d, 2)
        for _ in range(6):
            h = random_monomial(rng, A) + random_monomial(rng, A)
            tilde = {}
            for r in (1, 2, 3):
                for D in combinations((1, 2, 3), r):
                    tilde[frozenset(D)] = rho_tilde(h, d, D)
            for S in [{1}, {1, 3}, {1, 2, 3}]:
                assert rho_from_tilde(tilde, S) == rho_basic(h, MarkovSpec.make(d, S))
