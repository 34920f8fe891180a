"""Fractional Taylor expansions, integral remainders, and remainder identities.

With z = (t^alpha - s^alpha)/alpha, the degree-n expansion of f around s is
sum_{k<=n} z^k D^k f(s) / k!, and the remainder after it has the exact
integral form  (1/n!) int_s^t ((t^a - tau^a)/a)^n D^{n+1} f(tau) d_a tau.
The remainder's two faces (value minus partial sum, and the weighted
integral) are both available here, together with the split and endpoint
identities that the inequality checkers build on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .calculus import (Alpha, ConformableFn, Interval, QuadratureConfig,
                       _alpha_value, frac_deriv_fn, frac_deriv_n, frac_integral)

__all__ = [
    "TaylorExpansion", "EndpointIdentity", "cauchy_kernel", "expand",
    "taylor_poly", "taylor_remainder", "remainder_split_residual",
    "remainder_endpoint_integral", "binomial_identity_residual",
]

AlphaLike = Union[Alpha, float]


def cauchy_kernel(n: int, alpha: AlphaLike, t: float, s: float) -> float:
    """Closed-form kernel ((t^a - s^a)/a)^(n-1) / (n-1)! for D_alpha^n = 0."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if t < 0.0 or s < 0.0:
        raise ValueError("t and s must be >= 0")
    a = _alpha_value(alpha)
    z = (math.pow(t, a) - math.pow(s, a)) / a
    return z ** (n - 1) / math.factorial(n - 1)


@dataclass(frozen=True)
class TaylorExpansion:
    """Degree-n expansion data around a center point.

    coefficients[k] is D^k f evaluated at the center, so evaluating at the
    center returns coefficients[0] exactly (the k = 0 term uses 0^0 = 1).
    """

    center: float
    degree: int
    alpha: Alpha
    coefficients: tuple[float, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError(f"degree must be >= 0, got {self.degree}")
        if len(self.coefficients) != self.degree + 1:
            raise ValueError("expected degree + 1 coefficients")

    def evaluate(self, t: float) -> float:
        a = self.alpha.value
        z = (math.pow(t, a) - math.pow(self.center, a)) / a
        total = 0.0
        zk = 1.0
        for k, c in enumerate(self.coefficients):
            if k > 0:
                zk *= z / k
            total += c * zk
        return total


def expand(f: ConformableFn, alpha: AlphaLike, n: int, s: float) -> TaylorExpansion:
    """Expansion of f to degree n around s: coefficients D^k f(s), k = 0..n."""
    a = Alpha(_alpha_value(alpha))
    coeffs = tuple(frac_deriv_n(f, a, k, s) for k in range(n + 1))
    return TaylorExpansion(center=s, degree=n, alpha=a, coefficients=coeffs)


def taylor_poly(f: ConformableFn, alpha: AlphaLike, n: int, s: float, t: float) -> float:
    """Value at t of the degree-n expansion of f around s."""
    return expand(f, alpha, n, s).evaluate(t)


def taylor_remainder(f: ConformableFn, alpha: AlphaLike, n: int,
                     center: float, at: float,
                     cfg: Optional[QuadratureConfig] = None) -> float:
    """Remainder R_{n,f}(center, at) via its weighted-integral form.

    Argument order matters: the first point is the expansion center, the
    second the evaluation point.  n = -1 returns f(at) by definition.
    """
    if n < -1:
        raise ValueError(f"n must be >= -1, got {n}")
    a = _alpha_value(alpha)
    if n == -1:
        return f.value(at, a)
    dfn1 = frac_deriv_fn(f, n + 1)
    at_pow = math.pow(at, a)
    fact = float(math.factorial(n))

    def integrand(tau: float, _alpha: float = a) -> float:
        z = (at_pow - math.pow(tau, a)) / a
        return z ** n * dfn1.value(tau, a) / fact

    return frac_integral(ConformableFn(integrand), a, (center, at), cfg)


def _remainder_sum_form(f: ConformableFn, a: float, n: int, center: float):
    """R_{n,f}(center, .) as value minus partial sum; coefficients precomputed."""
    coeffs = [frac_deriv_n(f, a, k, center) / math.factorial(k) for k in range(n + 1)]
    c_pow = math.pow(center, a)

    def rem(s: float) -> float:
        z = (math.pow(s, a) - c_pow) / a
        acc = f.value(s, a)
        zk = 1.0
        for k, c in enumerate(coeffs):
            if k > 0:
                zk *= z
            acc -= c * zk
        return acc

    return rem


def remainder_split_residual(f: ConformableFn, alpha: AlphaLike, n: int,
                             window: Interval, t: float,
                             cfg: Optional[QuadratureConfig] = None) -> float:
    """Residual of the split identity; approximately zero for valid inputs.

    Left side: int_a^b D^{n+1} f(s)/(n+1)! ((t^a - s^a)/a)^{n+1} d_a s.
    Right side: int_a^t R_{n,f}(a, s) d_a s + int_t^b R_{n,f}(b, s) d_a s.
    """
    if n < -1:
        raise ValueError(f"n must be >= -1, got {n}")
    if not window.contains(t):
        raise ValueError(f"t={t} outside window [{window.a}, {window.b}]")
    a_val = _alpha_value(alpha)
    aa, bb = window.a, window.b

    dfn1 = frac_deriv_fn(f, n + 1)
    t_pow = math.pow(t, a_val)
    fact = float(math.factorial(n + 1))

    def lhs_integrand(s: float, _alpha: float = a_val) -> float:
        z = (t_pow - math.pow(s, a_val)) / a_val
        return dfn1.value(s, a_val) * z ** (n + 1) / fact

    lhs = frac_integral(ConformableFn(lhs_integrand), a_val, (aa, bb), cfg)

    rem_a = _remainder_sum_form(f, a_val, n, aa)
    rem_b = _remainder_sum_form(f, a_val, n, bb)
    rhs = (frac_integral(ConformableFn(lambda s, _=0.0: rem_a(s)), a_val, (aa, t), cfg)
           + frac_integral(ConformableFn(lambda s, _=0.0: rem_b(s)), a_val, (t, bb), cfg))
    return lhs - rhs


@dataclass(frozen=True)
class EndpointIdentity:
    """Both sides of an endpoint remainder identity."""

    lhs: float
    rhs: float

    @property
    def residual(self) -> float:
        return self.lhs - self.rhs

    @property
    def value(self) -> float:
        return 0.5 * (self.lhs + self.rhs)


def remainder_endpoint_integral(f: ConformableFn, alpha: AlphaLike, n: int,
                                window: Interval, which: str,
                                cfg: Optional[QuadratureConfig] = None) -> EndpointIdentity:
    """Endpoint identity with the kernel anchored at a ("at-a") or b ("at-b").

    "at-a":  int_a^b D^{n+1} f(s)/(n+1)! ((a^a - s^a)/a)^{n+1} d_a s
             equals int_a^b R_{n,f}(b, s) d_a s;
    "at-b":  the (b^a - s^a) kernel against int_a^b R_{n,f}(a, s) d_a s.
    """
    if n < -1:
        raise ValueError(f"n must be >= -1, got {n}")
    if which not in ("at-a", "at-b"):
        raise ValueError(f"which must be 'at-a' or 'at-b', got {which!r}")
    a_val = _alpha_value(alpha)
    aa, bb = window.a, window.b
    anchor = aa if which == "at-a" else bb
    center = bb if which == "at-a" else aa

    dfn1 = frac_deriv_fn(f, n + 1)
    anchor_pow = math.pow(anchor, a_val)
    fact = float(math.factorial(n + 1))

    def lhs_integrand(s: float, _alpha: float = a_val) -> float:
        z = (anchor_pow - math.pow(s, a_val)) / a_val
        return dfn1.value(s, a_val) * z ** (n + 1) / fact

    lhs = frac_integral(ConformableFn(lhs_integrand), a_val, (aa, bb), cfg)
    rem = _remainder_sum_form(f, a_val, n, center)
    rhs = frac_integral(ConformableFn(lambda s, _=0.0: rem(s)), a_val, (aa, bb), cfg)
    return EndpointIdentity(lhs=lhs, rhs=rhs)


def binomial_identity_residual(n: int, alpha: AlphaLike, t: float, s: float,
                               r: float) -> float:
    """Residual of the fractional binomial convolution identity.

    (1/n!) ((t^a - r^a)/a)^n  minus
    sum_k ((t^a - s^a)/a)^k ((s^a - r^a)/a)^(n-k) / (k! (n-k)!).

    Both sides are evaluated from the shared differences x = (t^a - s^a)/a
    and y = (s^a - r^a)/a (the left side as (x + y)^n/n!), with an exactly
    rounded summation, so the residual stays at rounding level.
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if min(t, s, r) < 0.0:
        raise ValueError("t, s, r must be >= 0")
    a = _alpha_value(alpha)
    x = (math.pow(t, a) - math.pow(s, a)) / a
    y = (math.pow(s, a) - math.pow(r, a)) / a
    lhs = (x + y) ** n / math.factorial(n)
    terms = [x ** k * y ** (n - k) / (math.factorial(k) * math.factorial(n - k))
             for k in range(n + 1)]
    return lhs - math.fsum(terms)
