from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from yokonuma.coeffring import (
    GAMMA, ONE, U, V, ZERO, CycNumber, LaurentPoly, NonInvertibleSubstitutionError,
    OrderMismatchError, cyc_mul, cyclotomic_polynomial, euler_phi, parse_poly, root_of_unity,
    var, xparam,
)


def z(d):
    return CycNumber(d, [0, 1])


class TestCyclotomic:
    def test_phi_small(self):
        assert cyclotomic_polynomial(1) == (-1, 1)
        assert cyclotomic_polynomial(3) == (1, 1, 1)
        assert cyclotomic_polynomial(4) == (1, 0, 1)
        assert cyclotomic_polynomial(6) == (1, -1, 1)

    @pytest.mark.parametrize("d", range(1, 7))
    def test_root_is_a_root_of_its_cyclotomic_polynomial(self, d):
        acc = CycNumber(d, [0])
        for k, c in enumerate(cyclotomic_polynomial(d)):
            acc = acc + CycNumber(d, [0] * k + [1]) * c
        assert acc.is_zero()

    @pytest.mark.parametrize("d", range(1, 9))
    def test_coords_have_totient_length(self, d):
        assert len(CycNumber(d, [1, 2, 3, 4, 5, 6, 7, 8, 9]).coords) == euler_phi(d)

    def test_d2_minus_one_squared(self):
        m = root_of_unity(2, 1)
        assert m == -1
        assert CycNumber(2, [-1]) * CycNumber(2, [-1]) == CycNumber(2, [1])

    def test_d3_zeta_squared(self):
        assert cyc_mul(z(3), z(3)) == CycNumber(3, [-1, -1])

    def test_d3_norm_of_one_plus_zeta(self):
        # 1 + z + z^2 + z^3 = 0 + 1 after reducing by Phi_3 and z^3 = 1
        zz = cyc_mul(z(3), z(3))
        assert cyc_mul(CycNumber(3, [1, 1]), CycNumber(3, [1]) + zz) == CycNumber(3, [1])

    def test_order_mismatch(self):
        with pytest.raises(OrderMismatchError):
            cyc_mul(z(3), z(5))

    @pytest.mark.parametrize("d", [3, 4, 5, 7, 8])
    def test_inverse(self, d):
        x = CycNumber(d, [2, 1]) + z(d) * z(d)
        assert x * x.inverse() == CycNumber(d, [1])

    @pytest.mark.parametrize("d", [1, 2, 3, 4, 6])
    def test_roots_of_unity_have_order_d(self, d):
        prod = ONE
        for _ in range(d):
            prod = prod.scale(root_of_unity(d, 1))
        assert prod == ONE


class TestLaurentPoly:
    def test_difference_of_squares(self):
        assert (U + V) * (U - V) == U * U - V * V

    def test_identity_and_units(self):
        p = parse_poly("3*u^2 - v*gamma^-1")
        assert p * ONE == p
        assert U ** -2 * U ** 2 == ONE

    def test_canonical_strings(self):
        assert str(ZERO) == "0"
        assert str(parse_poly("u^2 + u^2 - u^4 + v^2")) == "2*u^2 - u^4 + v^2"
        assert str(U.scale(root_of_unity(4, 1))) == "(z)*u"

    def test_x_parameters(self):
        assert xparam(2, 0) == ONE
        assert str(xparam(1, -2)) == "x(1,-2)"
        with pytest.raises(ValueError):
            var("x(1,0)")

    def test_substitution_examples(self):
        assert (U * U).substitute({"u": GAMMA}) == GAMMA * GAMMA
        assert (V ** -1).substitute({"v": U}) == U ** -1
        half = parse_poly("lam^(1/2)*q^(1/2)")
        assert str(U.substitute({"u": half})) == "lam^(1/2)*q^(1/2)"

    def test_negative_power_needs_a_unit(self):
        with pytest.raises(NonInvertibleSubstitutionError):
            (V ** -1).substitute({"v": ONE + U})
        assert (V ** 2).substitute({"v": ONE + U}) == (ONE + U) * (ONE + U)

    def test_half_powers(self):
        r = var("lam").half_power(1)
        assert r * r == var("lam")
        with pytest.raises(ValueError):
            (ONE + U).half_power(1)

    def test_inverse_only_for_units(self):
        assert (U * V.scale(3)).inverse() == (U * V) ** -1 * Fraction(1, 3)
        with pytest.raises(ValueError):
            (ONE + U).inverse()

    def test_cyclotomic_coefficients_parse(self):
        p = parse_poly("(1+z)*u", d=3)
        assert p * parse_poly("(1+z^2)", d=3) == U
        with pytest.raises(ValueError):
            parse_poly("z*u")


VARS = ["u", "v", "gamma", "x(1,1)", "x(2,-1)"]


@st.composite
def polys(draw, max_terms=4):
    p = ZERO
    for _ in range(draw(st.integers(0, max_terms))):
        c = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 3)))
        mono = ONE
        for name in draw(st.lists(st.sampled_from(VARS), max_size=3)):
            mono = mono * var(name) ** draw(st.integers(-2, 2))
        p = p + mono * c
    return p


class TestRingAxioms:
    @settings(max_examples=1000)
    @given(polys(), polys(), polys())
    def test_distributive_and_commutative(self, p, q, r):
        assert (p + q) * r == p * r + q * r
        assert p * q == q * p

    @settings(max_examples=200)
    @given(polys(), polys(), polys())
    def test_associative(self, p, q, r):
        assert (p * q) * r == p * (q * r)

    @settings(max_examples=300)
    @given(polys())
    def test_string_round_trip(self, p):
        assert parse_poly(str(p)) == p

    @settings(max_examples=200)
    @given(polys())
    def test_unit_substitution_round_trip(self, p):
        there = p.substitute({"u": var("w")})
        assert there.substitute({"w": U}) == p

    @settings(max_examples=100)
    @given(polys(), st.sampled_from([3, 4, 5]))
    def test_cyclotomic_string_round_trip(self, p, d):
        q = p.scale(root_of_unity(d, 1) + 2)
        assert parse_poly(str(q), d) == q


class TestExactDivision:
    def test_divides_by_a_non_unit(self):
        z0 = (ONE - U * U) * V ** -1
        p = parse_poly("3*u^-1*gamma - v + x(1,2)")
        assert (p * z0 * z0).divide_exact(z0 * z0) == p
        assert (p * z0) / z0 == p

    def test_cyclotomic_leading_coefficient(self):
        q = U.scale(root_of_unity(3, 1)) + ONE
        p = parse_poly("u^2 - v", d=3)
        assert (p * q).divide_exact(q) == p

    def test_rejects_non_multiples(self):
        with pytest.raises(NonInvertibleSubstitutionError):
            (U + V).divide_exact(ONE - U * U)
        with pytest.raises(ZeroDivisionError):
            U.divide_exact(ZERO)

    @settings(max_examples=200)
    @given(polys(), polys())
    def test_product_round_trip(self, p, q):
        if not q.is_zero():
            assert (p * q).divide_exact(q) == p
