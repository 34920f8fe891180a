import math

import pytest

from confrac import functions as fam
from confrac.calculus import Alpha, ConformableFn
from confrac.ivp import IvpSpec, LinearOperator, cauchy_function, solve_full, solve_voc
from confrac.taylor import taylor_poly


def op_free(order, alpha):
    return LinearOperator(order=order, alpha=Alpha(alpha))


class TestLinearOperator:
    def test_rejects_zero_order(self):
        with pytest.raises(ValueError):
            LinearOperator(order=0, alpha=Alpha(0.5))

    def test_rejects_wrong_coefficient_count(self):
        with pytest.raises(ValueError):
            LinearOperator(order=2, alpha=Alpha(0.5),
                           coefficients=(fam.constant(1.0),))

    def test_ivp_spec_initial_count(self):
        with pytest.raises(ValueError):
            IvpSpec(op_free(2, 0.5), None, 0.0, (1.0,))


class TestCauchyFunction:
    def test_first_order_free(self):
        assert cauchy_function(op_free(1, 0.5), 1.0, 3.0) == 1.0

    def test_second_order_closed_form(self):
        assert cauchy_function(op_free(2, 0.5), 1.0, 4.0) == pytest.approx(2.0, rel=1e-14)

    def test_classical_decay(self):
        # y' + c y = 0 with y(s) = 1: kernel e^{-c (t - s)}
        c = 0.7
        op = LinearOperator(order=1, alpha=Alpha(1.0),
                            coefficients=(fam.constant(c),))
        for s, t in ((0.0, 2.0), (1.0, 0.5)):
            got = cauchy_function(op, s, t, steps=1024)
            assert got == pytest.approx(math.exp(-c * (t - s)), abs=1e-6)

    def test_numeric_matches_closed_form(self):
        for n in (1, 2, 3):
            for alpha in (0.5, 1.0):
                op = op_free(n, alpha)
                for s, t in ((0.5, 2.0), (1.0, 3.5)):
                    closed = cauchy_function(op, s, t)
                    forced = cauchy_function(op, s, t, method="rk4")
                    assert forced == pytest.approx(closed, abs=1e-8)

    def test_defining_initial_data_by_u_differences(self):
        # D^i y(., s) at t = s: 0 for i <= n-2 and 1 for i = n-1, probed by
        # finite differences in the transformed variable
        alpha = 0.5
        op = LinearOperator(
            order=2, alpha=Alpha(alpha),
            coefficients=(ConformableFn.from_expr("0.3"),
                          ConformableFn.from_expr("0.1*t")))
        s = 1.0
        us = s ** alpha / alpha
        h = 1e-4

        def y_of_u(u):
            t = (alpha * u) ** (1.0 / alpha)
            return cauchy_function(op, s, t, steps=256)

        assert y_of_u(us) == pytest.approx(0.0, abs=1e-12)
        d1 = (y_of_u(us + h) - y_of_u(us - h)) / (2 * h)
        assert d1 == pytest.approx(1.0, abs=1e-5)

    def test_window_starting_at_zero(self):
        # D y + c y = 0 from s = 0: y = exp(-c t^alpha/alpha) in the u variable
        c, alpha = 0.8, 0.5
        op = LinearOperator(order=1, alpha=Alpha(alpha),
                            coefficients=(fam.constant(c),))
        for t in (0.5, 1.0, 2.0):
            want = math.exp(-c * t ** alpha / alpha)
            assert cauchy_function(op, 0.0, t) == pytest.approx(want, abs=1e-7)

    def test_bad_method_rejected(self):
        with pytest.raises(ValueError):
            cauchy_function(op_free(1, 0.5), 0.0, 1.0, method="euler")

    def test_steps_minimum(self):
        with pytest.raises(ValueError):
            cauchy_function(LinearOperator(order=1, alpha=Alpha(1.0),
                                           coefficients=(fam.constant(1.0),)),
                            0.0, 1.0, steps=4)


class TestSolveVoc:
    def test_zero_forcing(self):
        spec = IvpSpec(op_free(2, 0.5), None, 1.0, (0.0, 0.0))
        assert solve_voc(spec, 3.0) == 0.0

    def test_second_order_unit_forcing(self):
        # D^2 y = 1 with zero data at s: y(t) = ((t^a - s^a)/a)^2 / 2
        for alpha in (0.25, 0.5, 1.0):
            spec = IvpSpec(op_free(2, alpha), fam.constant(1.0), 1.0, (0.0, 0.0))
            for t in (2.0, 4.0):
                want = ((t ** alpha - 1.0) / alpha) ** 2 / 2.0
                assert solve_voc(spec, t) == pytest.approx(want, abs=1e-8)

    def test_classical_sine_forcing(self):
        # y'' = sin t, zero data at 0: y = t - sin t
        spec = IvpSpec(op_free(2, 1.0), ConformableFn.from_expr("sin(t)"),
                       0.0, (0.0, 0.0))
        for t in (1.0, 2.0, 3.0):
            assert solve_voc(spec, t) == pytest.approx(t - math.sin(t), abs=1e-6)

    def test_rejects_nonzero_initial_values(self):
        spec = IvpSpec(op_free(1, 0.5), fam.constant(1.0), 0.0, (1.0,))
        with pytest.raises(ValueError):
            solve_voc(spec, 1.0)


class TestSolveFull:
    def test_homogeneous_reproduces_taylor_sum(self):
        # initial data taken from g: the free solution is g's expansion
        g = fam.exp_frac(1.0)
        alpha, s, n = 0.5, 1.0, 3
        from confrac.calculus import frac_deriv_n
        init = tuple(frac_deriv_n(g, alpha, k, s) for k in range(n + 1))
        spec = IvpSpec(op_free(n + 1, alpha), None, s, init)
        for t in (0.5, 2.0, 3.0):
            want = taylor_poly(g, alpha, n, s, t)
            assert solve_full(spec, t) == pytest.approx(want, rel=1e-12)

    def test_zero_data_matches_voc(self):
        spec = IvpSpec(op_free(2, 0.5), ConformableFn.from_expr("exp(-t)"),
                       1.0, (0.0, 0.0))
        assert solve_full(spec, 2.5) == pytest.approx(solve_voc(spec, 2.5), rel=1e-12)

    def test_classical_exponential_decay(self):
        op = LinearOperator(order=1, alpha=Alpha(1.0),
                            coefficients=(fam.constant(1.0),))
        spec = IvpSpec(op, None, 0.0, (1.0,))
        for t in (0.5, 1.0, 2.0):
            assert solve_full(spec, t) == pytest.approx(math.exp(-t), abs=1e-6)

    def test_equation_residual_on_grid(self):
        # substitute the solution back into the equation via u-variable
        # finite differences
        alpha = 0.5
        op = LinearOperator(
            order=2, alpha=Alpha(alpha),
            coefficients=(ConformableFn.from_expr("0.4"),
                          ConformableFn.from_expr("0.2*t")))
        forcing = ConformableFn.from_expr("exp(-t)")
        spec = IvpSpec(op, forcing, 1.0, (0.5, -0.2))
        h = 1e-3

        def y_at_u(u):
            t = (alpha * u) ** (1.0 / alpha)
            return solve_full(spec, t, steps=256)

        for t in (1.5, 2.0, 2.5):
            u = t ** alpha / alpha
            y0 = y_at_u(u)
            d1 = (y_at_u(u + h) - y_at_u(u - h)) / (2 * h)
            d2 = (y_at_u(u + h) - 2 * y0 + y_at_u(u - h)) / h ** 2
            residual = (d2 + op.coefficients[0].value(t, alpha) * d1
                        + op.coefficients[1].value(t, alpha) * y0
                        - forcing.value(t, alpha))
            assert abs(residual) < 1e-4
