"""Operator replacement, the RK4 stepper, and the demo solve."""

import math

import numpy as np
import pytest

from hadamard_frac.coefficients import a_coeff, b_coeff
from hadamard_frac.errors import (
    DomainError,
    NonFiniteStateError,
    ParameterError,
)
from hadamard_frac.fde_solver import (
    AugmentedState,
    FdeProblem,
    integrate,
    replace_operator,
    solve_fde,
)
from hadamard_frac.special_functions import gamma


class TestFdeProblem:
    def test_validation(self):
        with pytest.raises(ParameterError, match="N must be at least n\\+1"):
            FdeProblem(trunc=1)
        with pytest.raises(ParameterError):
            FdeProblem(alpha=1.5)
        with pytest.raises(ParameterError):
            FdeProblem(t_end=0.5)
        with pytest.raises(DomainError):
            FdeProblem(a=-1.0)
        with pytest.raises(ParameterError):
            FdeProblem(c=float("inf"))


class TestReplaceOperator:
    def test_zero_state_slope(self):
        # x = 0, v = 0: xdot = g(t) / (A_1 L^(1-alpha) t) with g = ln t
        problem = FdeProblem(trunc=4)
        rhs = replace_operator(problem)
        a1 = a_coeff("derivative", "left", 0.5, 1, 1, 4)
        for t in (1.5, 2.0, 2.8):
            y = np.zeros(4)
            got = rhs(t, y)
            ell = math.log(t)
            assert got[0] == pytest.approx(
                math.log(t) / (a1 * ell ** 0.5 * t), rel=1e-14
            )

    def test_moment_slopes(self):
        # vdot_p = (p-1) L^(p-2) x / t; at p = 2 this is x/t
        problem = FdeProblem(trunc=3)
        rhs = replace_operator(problem)
        t, x = 2.0, 0.7
        got = rhs(t, np.array([x, 0.0, 0.0]))
        ell = math.log(t)
        assert got[1] == pytest.approx(x / t, rel=1e-15)
        assert got[2] == pytest.approx(2.0 * ell * x / t, rel=1e-15)

    def test_moment_slopes_vanish_at_zero_state(self):
        rhs = replace_operator(FdeProblem(trunc=5))
        assert np.array_equal(rhs(2.0, np.zeros(5))[1:], np.zeros(4))

    def test_below_interval_rejected(self):
        rhs = replace_operator(FdeProblem())
        with pytest.raises(DomainError):
            rhs(1.0, np.zeros(2))

    def test_exact_solution_residual(self):
        # plug x = ln t with its exact moments V_p = (p-1) L^p / p into the
        # reduced system: the returned slope must be d/dt ln t = 1/t, which
        # checks the whole reduction algebra without any integration
        problem = FdeProblem(trunc=6)
        rhs = replace_operator(problem)
        ps = np.arange(2, 7)
        for t in (1.3, 1.9, 2.6, 3.0):
            ell = math.log(t)
            v = (ps - 1) * ell ** ps / ps
            y = np.concatenate(([ell], v))
            assert rhs(t, y)[0] == pytest.approx(1.0 / t, abs=1e-9)


class TestIntegrate:
    def _state(self, x, n_moments=0, t=0.0):
        return AugmentedState(t=t, x=x, v=np.zeros(n_moments))

    def test_constant_slope_zero(self):
        ts, ys = integrate(lambda t, y: np.zeros_like(y),
                           self._state(3.5), 1.0, 10)
        assert np.all(ys[:, 0] == 3.5)
        assert ts[0] == 0.0
        assert ts[-1] == 1.0

    def test_exponential(self):
        ts, ys = integrate(lambda t, y: y, self._state(1.0), 1.0, 100)
        assert ys[-1, 0] == pytest.approx(math.e, rel=1e-8)

    def test_polynomial_slope_exact(self):
        # RK4 integrates cubic-in-t slopes exactly
        ts, ys = integrate(lambda t, y: np.array([2.0 * t]),
                           self._state(0.0), 2.0, 17)
        assert ys[-1, 0] == pytest.approx(4.0, rel=1e-12)

    def test_fourth_order_convergence(self):
        errs = []
        for steps in (16, 32, 64, 128, 256):
            _, ys = integrate(lambda t, y: y, self._state(1.0), 1.0, steps)
            errs.append(abs(ys[-1, 0] - math.e))
        orders = [math.log2(a / b) for a, b in zip(errs, errs[1:])]
        assert min(orders) > 3.9

    def test_non_finite_detected(self):
        with pytest.raises(NonFiniteStateError):
            integrate(lambda t, y: y ** 2, self._state(1.0), 2.0, 100)

    def test_step_validation(self):
        with pytest.raises(ParameterError):
            integrate(lambda t, y: y, self._state(1.0), 1.0, 0)
        with pytest.raises(ParameterError, match="t_end must exceed"):
            integrate(lambda t, y: y, self._state(1.0, t=1.0), 0.5, 10)


class TestSolveFde:
    def test_demo_matches_log_solution(self):
        sol = solve_fde(FdeProblem())
        exact = np.log(sol.t)
        err = np.abs(sol.x - exact)
        dist = math.sqrt(np.trapezoid(err ** 2, sol.t))
        assert dist == pytest.approx(5.285021266724589e-05, rel=1e-9)
        assert np.max(err[sol.t >= 1.5]) < 1e-4

    def test_moment_states_start_at_zero(self):
        sol = solve_fde(FdeProblem(trunc=4), steps=50)
        assert np.array_equal(sol.moments[0], np.zeros(3))
        assert sol.t[0] == 1.0001

    def test_more_moments_do_not_degrade(self):
        base = solve_fde(FdeProblem(trunc=2))
        rich = solve_fde(FdeProblem(trunc=5))
        d = lambda s: math.sqrt(np.trapezoid((s.x - np.log(s.t)) ** 2, s.t))
        assert d(rich) <= 1.1 * d(base)

    def test_start_offset_validation(self):
        with pytest.raises(ParameterError, match="t_end must exceed"):
            solve_fde(FdeProblem(t_end=1.00005), steps=10)
