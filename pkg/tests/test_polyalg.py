"""Exact arithmetic layer: polynomials in d, canonical rational functions,
moment polynomials in t, and the c-form ingest/display syntax."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srbm.polyalg import (DomainError, MomentPoly, ParseError, PolyD, RatFunc,
                          c_value, eval_moment, limit_d_infinity,
                          substitute_c_form, to_c_form)

fractions_st = st.fractions(min_value=-10, max_value=10, max_denominator=12)
polys_st = st.lists(fractions_st, min_size=0, max_size=5).map(PolyD)
nonzero_polys_st = polys_st.filter(lambda p: not p.is_zero())


class TestPolyD:
    def test_trailing_zeros_stripped(self):
        assert PolyD([1, 2, 0, 0]).coeffs == (1, 2)
        assert PolyD([0, 0]).is_zero()

    def test_divmod_identity(self):
        a = PolyD([1, 0, 3, 2])
        b = PolyD([2, 1])
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.degree < b.degree

    def test_gcd_monic(self):
        a = PolyD([0, 2, 2])    # 2d(d+1)
        b = PolyD([0, 0, 4, 4])  # 4d^2(d+1)
        g = PolyD.gcd(a, b)
        assert g == PolyD([0, 1, 1])

    @given(polys_st, nonzero_polys_st)
    @settings(max_examples=60, deadline=None)
    def test_divmod_roundtrip(self, a, b):
        q, r = a.divmod(b)
        assert q * b + r == a


class TestRatFunc:
    def test_reduction_canonical(self):
        # (2d + 2)/(4d) reduces with monic denominator
        r = RatFunc(PolyD([2, 2]), PolyD([0, 4]))
        s = RatFunc(PolyD([Fraction(1, 2), Fraction(1, 2)]), PolyD([0, 1]))
        assert r == s
        assert hash(r) == hash(s)

    def test_zero_normal_form(self):
        r = RatFunc(PolyD(), PolyD([3, 7]))
        assert r.is_zero()
        assert r.den == PolyD.const(1)

    @given(polys_st, nonzero_polys_st, nonzero_polys_st)
    @settings(max_examples=60, deadline=None)
    def test_common_factor_invisible(self, num, den, junk):
        # multiplying numerator and denominator by the same polynomial
        # cannot change the canonical form
        assert RatFunc(num, den) == RatFunc(num * junk, den * junk)

    @given(polys_st, nonzero_polys_st, st.integers(min_value=2, max_value=9))
    @settings(max_examples=60, deadline=None)
    def test_evaluation_consistent(self, num, den, d):
        dv = Fraction(d)
        if den.evaluate(dv) == 0:
            return
        assert RatFunc(num, den).evaluate(dv) == \
            num.evaluate(dv) / den.evaluate(dv)

    def test_negative_d_power(self):
        r = RatFunc.d_power(-2)
        assert r.evaluate(3) == Fraction(1, 9)
        assert r * RatFunc.d_power(2) == RatFunc.const(1)

    def test_limit_behavior(self):
        assert RatFunc(PolyD([1, 2]), PolyD([0, 1])).limit_d_infinity() == 2
        assert RatFunc(PolyD([5]), PolyD([0, 1])).limit_d_infinity() == 0
        from srbm.polyalg import InvariantError
        with pytest.raises(InvariantError):
            RatFunc(PolyD([0, 0, 1]), PolyD([0, 1])).limit_d_infinity()

    def test_json_roundtrip(self):
        r = RatFunc(PolyD([1, Fraction(2, 3)]), PolyD([2, 0, 1]))
        assert RatFunc.from_json(r.to_json()) == r


class TestCValues:
    def test_c1_is_one(self):
        assert c_value(1) == RatFunc.const(1)

    @pytest.mark.parametrize("m", range(1, 7))
    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_against_gamma_ratio(self, m, d):
        # c_m d = <(a.y)^{2m}> d = (2m-1)!! Gamma(d/2) / (2^? ...) reduces to
        # the rising-factorial form below; evaluated with exact rationals
        want = Fraction(math.factorial(2 * m),
                        2 ** m * math.factorial(m))
        for j in range(1, m):
            want /= (d + 2 * j)
        assert c_value(m, d) == want

    def test_d1_all_one(self):
        for m in range(1, 8):
            assert c_value(m, 1) == 1

    def test_limit_vanishes(self):
        for m in range(2, 8):
            assert c_value(m).limit_d_infinity() == 0
        assert c_value(1).limit_d_infinity() == 1

    def test_domain(self):
        with pytest.raises(DomainError):
            c_value(0)


class TestMomentPoly:
    def test_zero_terms_dropped(self):
        p = MomentPoly({1: RatFunc.const(0), 2: RatFunc.const(3)})
        assert list(p.terms) == [2]

    def test_arith(self):
        p = MomentPoly({1: RatFunc.const(1)})
        q = (p + p) * p
        assert q == MomentPoly({2: RatFunc.const(2)})
        assert q / 2 == MomentPoly({2: RatFunc.const(1)})

    def test_eval_moment_domain(self):
        p = MomentPoly({1: RatFunc.const(1)})
        assert eval_moment(p, Fraction(3, 2), 2) == Fraction(3, 2)
        with pytest.raises(DomainError):
            eval_moment(p, 1, Fraction(1, 2))

    def test_json_roundtrip(self):
        p = MomentPoly({1: RatFunc.const(1),
                        2: RatFunc(PolyD([30, 12]), PolyD([2, 1]))})
        assert MomentPoly.from_json(p.to_json()) == p


class TestCForm:
    def test_basic_parse(self):
        p = substitute_c_form("t + 2 t^2")
        assert p == MomentPoly({1: RatFunc.const(1), 2: RatFunc.const(2)})

    def test_c2_substitution(self):
        # c2 = 3/(d+2)
        p = substitute_c_form("c2 t")
        assert p.coeff(1) == RatFunc(PolyD([3]), PolyD([2, 1]))

    def test_juxtaposition_and_fractions(self):
        p = substitute_c_form("c2/3 (1 + 2 c2) t^2")
        c2 = RatFunc(PolyD([3]), PolyD([2, 1]))
        want = c2 / 3 * (RatFunc.const(1) + 2 * c2)
        assert p.coeff(2) == want

    def test_equivalent_c_forms_agree(self):
        # the c-form is non-unique; different spellings of the same
        # coefficient must canonicalize identically
        a = substitute_c_form("(12 + 2 c2) t^2")
        b = substitute_c_form("2 (6 + c2) t^2")
        assert a == b

    def test_parse_errors(self):
        for bad in ("t +", "c2 ** t", "(t", "t ^ c2", "q t"):
            with pytest.raises(ParseError):
                substitute_c_form(bad)

    def test_to_c_form_roundtrip(self):
        for expr in ("t + 2 t^2", "t + (12 + 2 c2) t^2 + 28 t^3 + 14 t^4"):
            p = substitute_c_form(expr)
            disp = to_c_form(p)
            assert disp is not None
            assert substitute_c_form(disp) == p

    @given(st.integers(min_value=2, max_value=4),
           st.integers(min_value=0, max_value=3),
           st.integers(min_value=0, max_value=2))
    @settings(max_examples=40, deadline=None)
    def test_c_monomial_roundtrip(self, m, e, k):
        expr = f"c{m}^{e} t^{k}" if e else f"t^{k}"
        p = substitute_c_form(expr)
        assert p.coeff(k) == c_value(m) ** e

    def test_limit_d_infinity_drops_c_terms(self):
        p = substitute_c_form("t + (12 + 2 c2) t^2")
        assert limit_d_infinity(p) == {1: Fraction(1), 2: Fraction(12)}
