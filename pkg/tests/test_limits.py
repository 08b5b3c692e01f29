"""Limiting laws: series solutions, closed-form densities, Stieltjes
inversion and branch tracking."""

import math
from fractions import Fraction

import numpy as np
import pytest

from srbm import limits
from srbm.polyalg import DomainError
from srbm.walks import catalan_number, narayana_number


class TestSeries:
    def test_em_low_orders(self):
        ser = limits.em_moment_series(6)
        assert ser.coeffs[0] == (Fraction(1),)
        assert ser.coeffs[2] == (Fraction(0), Fraction(1))          # t
        assert ser.coeffs[4] == (Fraction(0), Fraction(1), Fraction(2))
        assert ser.coeffs[6] == (Fraction(0), Fraction(1), Fraction(6),
                                 Fraction(5))
        assert ser.coeffs[3] == ()

    def test_mp_low_orders(self):
        ser = limits.mp_moment_series(4)
        assert ser.coeffs[1] == (Fraction(0), Fraction(1))          # t
        assert ser.coeffs[2] == (Fraction(0), Fraction(2), Fraction(1))
        assert ser.coeffs[3] == (Fraction(0), Fraction(4), Fraction(6),
                                 Fraction(1))

    def test_em_catalan_leading(self):
        ser = limits.em_moment_series(12)
        for n in (2, 4, 6, 8, 10, 12):
            assert ser.coeffs[n][n // 2] == catalan_number(n // 2)

    def test_narayana_consistency(self):
        assert limits.narayana_consistency(8, "adjacency")
        assert limits.narayana_consistency(8, "laplacian")

    def test_narayana_polynomial(self):
        for s in range(1, 9):
            tp = limits.narayana(s)
            for j, c in enumerate(tp):
                assert c == narayana_number(s, j)

    def test_poisson_moments(self):
        # E[X], E[X^2], E[X^3] for Poisson(Z)
        z = Fraction(3)
        assert limits.poisson_moment(1, z) == z
        assert limits.poisson_moment(2, z) == z + z ** 2
        assert limits.poisson_moment(3, z) == z + 3 * z ** 2 + z ** 3

    def test_stirling(self):
        assert limits.stirling2(4, 2) == 7
        assert limits.stirling2(5, 3) == 25
        assert limits.stirling2(3, 0) == 0


class TestClosedFormDensities:
    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    def test_mp_normalization_with_atom(self, t):
        a, b = limits.mp_support(t)
        bulk = limits.bulk_moment(limits.mp_density, a, b, 0, (t,))
        assert abs(bulk + limits.mp_atom(t) - 1.0) < 1e-9

    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    def test_pastur_block_normalization(self, t):
        a, b = limits.pastur_block_support(t)
        bulk = limits.bulk_moment(limits.pastur_block_density, a, b, 0, (t,))
        assert abs(bulk + limits.pastur_block_atom(t) - 1.0) < 1e-9

    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    def test_mp_moments_match_series(self, t):
        ser = limits.mp_moment_series(8)
        a, b = limits.mp_support(t)
        for n in range(1, 9):
            # the atom sits at 0 so it never contributes to n >= 1 moments
            got = limits.bulk_moment(limits.mp_density, a, b, n, (t,))
            want = float(limits.tpoly_eval(ser.coeffs[n], Fraction(t)))
            assert abs(got - want) < 1e-8 * max(1.0, abs(want))

    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    def test_pastur_block_moments_narayana(self, t):
        a, b = limits.pastur_block_support(t)
        for s in range(1, 9):
            got = limits.bulk_moment(limits.pastur_block_density, a, b, s,
                                     (t,))
            want = float(limits.tpoly_eval(limits.narayana(s), Fraction(t)))
            assert abs(got - want) < 1e-8 * max(1.0, abs(want))

    def test_semicircle_moments(self):
        t = 1.5
        for n in (0, 2, 4, 6):
            got = limits.bulk_moment(limits.semicircle_density,
                                     -2 * math.sqrt(t), 2 * math.sqrt(t), n,
                                     (t,))
            want = catalan_number(n // 2) * t ** (n // 2) if n else 1.0
            assert abs(got - want) < 1e-8 * max(1.0, want)

    def test_shifted_semicircle_coeffs(self):
        # leading pair of the Laplacian moments: nu_4 ~ t^4 + 12 t^3
        coeffs = limits.shifted_semicircle_moment_coeffs(4)
        assert abs(coeffs[0] - 1.0) < 1e-9
        assert abs(coeffs[1] - 12.0) < 1e-6

    def test_leading_coefficients(self):
        from srbm.averager import moment
        top = limits.leading_coefficients(moment("laplacian", 4), 2)
        assert top == [(4, Fraction(1)), (3, Fraction(12))]

    def test_support_domain(self):
        with pytest.raises(DomainError):
            limits.mp_support(0)


class TestResolvents:
    def test_em_asymptotics(self):
        z = 1e6j
        r = limits.em_resolvent(z, 2.0)
        assert abs(r - 1 / z) < 1e-9

    def test_mp_asymptotics(self):
        z = 1e6j
        r = limits.mp_resolvent(z, 1.0)
        assert abs(r - 1 / z) < 1e-9

    def test_herglotz_sign(self):
        # the physical branch maps the upper half plane to the lower:
        # Im r <= 0 so the recovered density is non-negative
        rng = np.random.default_rng(5)
        for _ in range(50):
            z = complex(rng.uniform(-6, 10), 10 ** rng.uniform(-5, 1))
            for fn, t in ((limits.em_resolvent, 1.0),
                          (limits.mp_resolvent, 2.0)):
                assert np.imag(fn(z, t)) <= 1e-12

    def test_moment_generating(self):
        # z r(z) = 1 + sum mu_n z^{-n}: check against series at large |z|
        t = 1.0
        z = 60.0 + 1e-3j
        ser = limits.em_moment_series(8)
        approx = sum(float(limits.tpoly_eval(ser.coeffs[n], Fraction(1)))
                     / z ** (n + 1) for n in range(0, 9))
        r = limits.em_resolvent(z, t)
        assert abs(r - approx) < 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            limits.em_resolvent(1.0 - 1j, 1.0)


class TestStieltjesInversion:
    def test_mp_pointwise_interior(self):
        t = 2.0
        grid = np.linspace(0.5, 7.5, 301)
        curve = limits.density_from_resolvent("mp", t, grid, 1e-6)
        ref = limits.mp_density(grid, t)
        assert np.max(np.abs(curve.values - ref)) < 5e-4

    def test_mp_atom_detection(self):
        t = 1.0
        grid = limits.stieltjes_grid(-1.0, 8.0, 2001,
                                     refine_at=(0.0,) + limits.mp_support(t))
        curve = limits.density_from_resolvent("mp", t, grid, 1e-6)
        assert abs(curve.atom_at_zero - 0.5) < 1e-6
        assert abs(curve.total_mass() - 1.0) < 1e-3

    @pytest.mark.parametrize("t", [1.0, 2.0])
    def test_em_normalization(self, t):
        grid = limits.stieltjes_grid(-7.0, 9.0, 16001, refine_at=(0.0,))
        curve = limits.density_from_resolvent("em", t, grid, 1e-6)
        assert curve.atom_at_zero == 0.0
        assert abs(curve.integral() - 1.0) < 1e-3

    def test_em_symmetric(self):
        grid = np.linspace(-6.0, 6.0, 1201)
        curve = limits.density_from_resolvent("em", 1.5, grid, 1e-6)
        assert np.max(np.abs(curve.values - curve.values[::-1])) < 1e-8

    def test_csv_and_json(self, tmp_path):
        grid = np.linspace(-1.0, 1.0, 11)
        curve = limits.density_from_resolvent("em", 1.0, grid, 1e-6)
        path = tmp_path / "c.csv"
        curve.to_csv(path)
        data = np.loadtxt(path, delimiter=",")
        assert data.shape == (11, 2)
        obj = curve.to_json()
        assert obj["model"] == "em" and len(obj["grid"]) == 11

    def test_bad_eps(self):
        with pytest.raises(DomainError):
            limits.density_from_resolvent("em", 1.0, [0.0], eps=-1.0)
