"""Spectral-core operations against independent oracles and frozen values."""

import numpy as np
import pytest

from circleq.spectral import (
    FourierSeries,
    RotationSystem,
    evaluate,
    frac_derivative,
    generator,
    gl_oracle,
    gl_study_terms,
    koopman,
    lower,
    mode,
    project,
    raise_,
    zero_series,
)

SYS = RotationSystem(1.0)


def naive_evaluate(f, theta):
    """Independent pointwise synthesis: plain Python loop over modes."""
    J = f.order
    total = 0.0 + 0.0j
    for j in range(-J, J + 1):
        total += f.coeff(j) * complex(np.cos(j * theta), np.sin(j * theta))
    return total


def series(coeff_map, J):
    c = np.zeros(2 * J + 1, dtype=complex)
    for j, v in coeff_map.items():
        c[j + J] = v
    return FourierSeries(c)


class TestEvaluate:
    def test_constant(self):
        assert evaluate(mode(0, 4), 1.7) == pytest.approx(1.0 + 0.0j)

    def test_first_mode_at_pi(self):
        assert evaluate(mode(1, 4), np.pi) == pytest.approx(-1.0 + 0.0j, abs=1e-15)

    def test_cosine_zero(self):
        f = series({2: 1.0, -2: 1.0}, 4)
        # 2 cos(2 * pi/4) = 0, cross-checked against the loop oracle
        val = evaluate(f, np.pi / 4)
        assert abs(val) < 1e-15
        assert val == pytest.approx(naive_evaluate(f, np.pi / 4), abs=1e-14)

    def test_matches_naive_oracle(self):
        rng = np.random.default_rng(0)
        f = FourierSeries(rng.standard_normal(17) + 1j * rng.standard_normal(17))
        for theta in rng.uniform(0, 2 * np.pi, 5):
            assert evaluate(f, theta) == pytest.approx(naive_evaluate(f, theta), abs=1e-12)

    def test_grid_evaluation(self):
        f = series({1: 2.0, -1: 0.5j}, 3)
        thetas = np.linspace(0, 2 * np.pi, 7)
        vals = evaluate(f, thetas)
        assert vals.shape == (7,)
        assert vals[3] == pytest.approx(naive_evaluate(f, thetas[3]), abs=1e-13)


class TestKoopman:
    def test_full_period(self):
        out = koopman(SYS, mode(1, 3), 2 * np.pi / SYS.alpha)
        assert (out - mode(1, 3)).norm() < 1e-14

    def test_phase_multiplier(self):
        t = 0.83
        out = koopman(SYS, mode(3, 5), t)
        assert out.coeff(3) == pytest.approx(np.exp(3j * SYS.alpha * t))

    def test_quarter_period_pair(self):
        f = series({1: 1.0, -1: 1.0}, 3)
        out = koopman(SYS, f, np.pi / (2 * SYS.alpha))
        assert out.coeff(1) == pytest.approx(1j)
        assert out.coeff(-1) == pytest.approx(-1j)
        # pointwise cross-check: (U^t f)(theta) = f(theta + alpha t)
        for theta in (0.3, 2.1):
            lhs = evaluate(out, theta)
            rhs = naive_evaluate(f, theta + SYS.alpha * np.pi / (2 * SYS.alpha))
            assert lhs == pytest.approx(rhs, abs=1e-13)

    def test_unitary(self):
        rng = np.random.default_rng(1)
        f = FourierSeries(rng.standard_normal(33) + 1j * rng.standard_normal(33))
        for t in (-7.7, 0.1, 12.0):
            assert koopman(SYS, f, t).norm() == pytest.approx(f.norm(), rel=1e-14)

    def test_group_law_dyadic(self):
        rng = np.random.default_rng(2)
        f = FourierSeries(rng.standard_normal(33) + 1j * rng.standard_normal(33))
        lhs = koopman(SYS, koopman(SYS, f, 0.75), 1.5)
        rhs = koopman(SYS, f, 2.25)
        assert (lhs - rhs).norm() < 1e-14


class TestGenerator:
    def test_constant_in_kernel(self):
        assert generator(SYS, mode(0, 3)).norm() == 0.0

    def test_eigenvalue(self):
        out = generator(SYS, mode(3, 5))
        assert out.coeff(3) == pytest.approx(3j * SYS.alpha)

    def test_finite_difference_quotient(self):
        # (U^h f - f)/h -> V f as h -> 0, checked pointwise
        f = series({1: 1.0, -1: 1.0}, 3)
        vf = generator(SYS, f)
        assert vf.coeff(1) == pytest.approx(1j * SYS.alpha)
        assert vf.coeff(-1) == pytest.approx(-1j * SYS.alpha)
        theta = 0.9
        errs = []
        for h in (1e-4, 1e-5):
            quot = (naive_evaluate(koopman(SYS, f, h), theta) - naive_evaluate(f, theta)) / h
            errs.append(abs(quot - evaluate(vf, theta)))
        assert errs[1] < errs[0]
        assert errs[1] < 1e-4


class TestShifts:
    def test_lower_basis(self):
        assert (lower(mode(0, 3)) - mode(-1, 3)).norm() == 0.0

    def test_round_trip_off_boundary(self):
        f = series({-2: 1.0, 0: 2.0, 3: -1.0j}, 4)
        assert (raise_(lower(f)) - f).norm() == 0.0
        assert (lower(raise_(f)) - f).norm() == 0.0

    def test_boundary_drop(self):
        assert lower(mode(-3, 3)).norm() == 0.0
        assert raise_(mode(3, 3)).norm() == 0.0

    def test_isometry_when_no_edge_mass(self):
        rng = np.random.default_rng(3)
        c = rng.standard_normal(9) + 1j * rng.standard_normal(9)
        c[0] = 0.0
        f = FourierSeries(c)
        assert lower(f).norm() == pytest.approx(f.norm(), rel=1e-15)


class TestProject:
    def test_positive_of_constant(self):
        assert project(mode(0, 3), "pos").norm() == 0.0

    def test_negative_selection(self):
        f = series({-2: 1.0, 2: 1.0}, 3)
        assert (project(f, "neg") - mode(-2, 3)).norm() == 0.0

    def test_partition(self):
        rng = np.random.default_rng(4)
        f = FourierSeries(rng.standard_normal(11) + 1j * rng.standard_normal(11))
        total = project(f, "neg") + project(f, "zero") + project(f, "pos")
        assert (total - f).norm() == 0.0

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            project(mode(0, 2), "nonneg")


class TestFracDerivative:
    def test_half_order_principal_branch(self):
        out = frac_derivative(mode(1, 3), 0.5)
        assert out.coeff(1) == pytest.approx(np.exp(1j * np.pi / 4))

    def test_integer_order_is_weak_derivative(self):
        for j in (-3, -1, 0, 2):
            out = frac_derivative(mode(j, 4), 1.0)
            assert out.coeff(j) == pytest.approx(1j * j)

    def test_half_order_semigroup(self):
        out = frac_derivative(frac_derivative(mode(-3, 4), 0.5), 0.5)
        # equals the r = 1 multiplier i(-3) = -3i
        assert out.coeff(-3) == pytest.approx(-3j, abs=1e-14)

    def test_zero_mode_annihilated(self):
        assert frac_derivative(mode(0, 2), 0.5).norm() == 0.0
        assert frac_derivative(mode(0, 2), 0.0).coeff(0) == pytest.approx(1.0)

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            frac_derivative(mode(1, 2), -0.5)


class TestGLOracle:
    def test_rejects_bad_step(self):
        with pytest.raises(ValueError):
            gl_oracle(mode(1, 2), 0.5, -0.1)
        with pytest.raises(ValueError):
            gl_oracle(mode(1, 2), 0.5, 0.1, n_terms=0)

    def test_constant_residual(self):
        # the alternating binomial sum tends to zero, but a^{-r} amplifies
        # the truncated tail: with the default 1/a term count the zero mode
        # retains a stable residual instead of vanishing
        out = gl_oracle(mode(0, 2), 0.5, 2.0**-8)
        assert 0.0 < abs(out.coeff(0)) < 0.5

    def test_two_term_riemann_difference(self):
        a = 1e-3
        out = gl_oracle(mode(1, 2), 1.0, a, n_terms=2)
        # (1 - e^{-i a})/a = i + O(a)
        assert abs(out.coeff(1) - 1j) < 2 * a

    def test_converges_to_spectral_multiplier(self):
        f = mode(2, 3)
        target = frac_derivative(f, 0.5)
        errs = []
        for a in (2.0**-4, 2.0**-6, 2.0**-8):
            out = gl_oracle(f, 0.5, a, n_terms=gl_study_terms(a))
            errs.append((out - target).norm())
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 1e-2


class TestSeriesBasics:
    def test_parseval(self):
        rng = np.random.default_rng(5)
        c = rng.standard_normal(9) + 1j * rng.standard_normal(9)
        f = FourierSeries(c)
        assert f.norm() == pytest.approx(np.sqrt(np.sum(np.abs(c) ** 2)))

    def test_length_validation(self):
        with pytest.raises(ValueError):
            FourierSeries(np.zeros(4))

    def test_mode_outside_band(self):
        with pytest.raises(ValueError):
            mode(5, 4)

    def test_zero_frequency_rejected(self):
        with pytest.raises(ValueError):
            RotationSystem(0.0)

    def test_coeffs_immutable(self):
        f = zero_series(2)
        with pytest.raises(ValueError):
            f.coeffs[0] = 1.0
