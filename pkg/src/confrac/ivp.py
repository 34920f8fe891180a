"""Linear conformable initial value problems.

The operator is L y = D^n y + sum_i p_i D^{n-i} y with continuous
coefficients.  Under the substitution u = t^alpha/alpha the conformable
derivative becomes d/du exactly, so the two-parameter kernel (the solution
of L y = 0 whose derivatives vanish at the source point except the top one)
reduces to a classical linear system integrated with a fixed-step RK4
scheme; the coefficient-free case has the closed-form kernel
((t^a - s^a)/a)^(n-1)/(n-1)!.  Forced problems with zero initial data are
solved by integrating the kernel against the forcing under the t^(alpha-1)
weight; general initial data adds the homogeneous combination of the
canonical fundamental solutions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .calculus import (Alpha, ConformableFn, QuadratureConfig, frac_integral)
from .errors import SolverError
from .taylor import cauchy_kernel

__all__ = ["LinearOperator", "IvpSpec", "cauchy_function", "solve_voc", "solve_full"]

STEPS_PER_UNIT = 512
MIN_STEPS = 16


@dataclass(frozen=True)
class LinearOperator:
    """L = D^order + p_1 D^(order-1) + ... + p_order; empty coefficients mean L = D^order."""

    order: int
    alpha: Alpha
    coefficients: tuple[ConformableFn, ...] = ()

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"operator order must be >= 1, got {self.order}")
        if self.coefficients and len(self.coefficients) != self.order:
            raise ValueError(
                f"expected {self.order} coefficient functions, got {len(self.coefficients)}")


@dataclass(frozen=True)
class IvpSpec:
    """Forced problem L y = f with initial data D^i y(base_point), i < order."""

    operator: LinearOperator
    forcing: Optional[ConformableFn]
    base_point: float
    initial_values: tuple[float, ...]

    def __post_init__(self):
        if self.base_point < 0.0:
            raise ValueError(f"base point must be >= 0, got {self.base_point}")
        if len(self.initial_values) != self.operator.order:
            raise ValueError(
                f"expected {self.operator.order} initial values, got {len(self.initial_values)}")


def _step_count(us: float, ut: float, steps: Optional[int]) -> int:
    if steps is not None:
        if steps < MIN_STEPS:
            raise ValueError(f"steps must be >= {MIN_STEPS}, got {steps}")
        return steps
    return max(64, math.ceil(STEPS_PER_UNIT * abs(ut - us)))


def _rk4_solve(op: LinearOperator, s: float, t: float, state: list[float],
               steps: Optional[int]) -> list[float]:
    """Integrate L y = 0 in the u variable from u(s) to u(t); returns the state."""
    a = op.alpha.value
    n = op.order
    us = math.pow(s, a) / a
    ut = math.pow(t, a) / a
    m = _step_count(us, ut, steps)
    h = (ut - us) / m
    inv = 1.0 / a

    def rhs(u: float, z: list[float]) -> list[float]:
        dz = list(z[1:])
        top = 0.0
        if op.coefficients:
            tv = math.pow(a * u, inv) if a != 1.0 else u
            for i, p in enumerate(op.coefficients, start=1):
                top -= p.value(tv, a) * z[n - i]
        dz.append(top)
        return dz

    z = list(state)
    u = us
    for _ in range(m):
        k1 = rhs(u, z)
        k2 = rhs(u + 0.5 * h, [z[j] + 0.5 * h * k1[j] for j in range(n)])
        k3 = rhs(u + 0.5 * h, [z[j] + 0.5 * h * k2[j] for j in range(n)])
        k4 = rhs(u + h, [z[j] + h * k3[j] for j in range(n)])
        z = [z[j] + h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j])
             for j in range(n)]
        u += h
        if not all(math.isfinite(v) for v in z):
            raise SolverError(f"non-finite state at u={u!r} while stepping")
    return z


def cauchy_function(op: LinearOperator, s: float, t: float,
                    steps: Optional[int] = None, method: str = "auto") -> float:
    """Two-parameter kernel y(t, s) for L y = 0.

    For fixed s it solves L y = 0 with D^i y(s) = 0 for i <= n-2 and
    D^(n-1) y(s) = 1.  Coefficient-free operators use the closed form;
    otherwise (or with method="rk4") the defining problem is integrated
    numerically in the u variable.
    """
    if method not in ("auto", "closed", "rk4"):
        raise ValueError(f"unknown method {method!r}")
    if min(s, t) < 0.0:
        raise ValueError("s and t must be >= 0")
    if method == "closed" or (method == "auto" and not op.coefficients):
        if method == "closed" and op.coefficients:
            raise ValueError("closed form only exists for coefficient-free operators")
        return cauchy_kernel(op.order, op.alpha, t, s)
    state = [0.0] * op.order
    state[op.order - 1] = 1.0
    return _rk4_solve(op, s, t, state, steps)[0]


def solve_voc(spec: IvpSpec, t: float, steps: Optional[int] = None,
              cfg: Optional[QuadratureConfig] = None) -> float:
    """Variation-of-constants solution for zero initial data.

    y(t) = int_s^t y(t, tau) f(tau) tau^(alpha-1) dtau, with y(t, tau) the
    kernel of the operator.  Requires all initial values to be zero (use
    solve_full otherwise).
    """
    if any(v != 0.0 for v in spec.initial_values):
        raise ValueError("solve_voc requires zero initial values; use solve_full")
    if spec.forcing is None:
        return 0.0
    op = spec.operator
    a = op.alpha.value
    s = spec.base_point

    def integrand(tau: float, _alpha: float = a) -> float:
        return cauchy_function(op, tau, t, steps) * spec.forcing.value(tau, a)

    return frac_integral(ConformableFn(integrand), op.alpha, (s, t), cfg)


def solve_full(spec: IvpSpec, t: float, steps: Optional[int] = None,
               cfg: Optional[QuadratureConfig] = None) -> float:
    """Homogeneous solution matching the initial data plus the forced part.

    Coefficient-free operators take the exact fractional Taylor sum as the
    homogeneous part; general operators combine the canonical fundamental
    solutions (unit initial data in each slot), so no fundamental-system
    solve is needed.
    """
    op = spec.operator
    a = op.alpha.value
    s = spec.base_point
    n = op.order

    if not op.coefficients:
        z = (math.pow(t, a) - math.pow(s, a)) / a
        hom = 0.0
        zk = 1.0
        for k, v in enumerate(spec.initial_values):
            if k > 0:
                zk *= z / k
            hom += v * zk
    else:
        hom = 0.0
        for k, v in enumerate(spec.initial_values):
            if v == 0.0:
                continue
            state = [0.0] * n
            state[k] = 1.0
            hom += v * _rk4_solve(op, s, t, state, steps)[0]

    if spec.forcing is None:
        return hom
    zero_spec = IvpSpec(op, spec.forcing, s, (0.0,) * n)
    return hom + solve_voc(zero_spec, t, steps, cfg)
