"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import math
import random

import scipy.integrate

from confrac import expr as ex

# ---------------------------------------------------------------------------
# independent quadrature oracle (scipy, never the package's own integrator)


def quad_oracle(fn, a, b):
    """Plain adaptive quadrature of fn over [a, b] via scipy."""
    val, _ = scipy.integrate.quad(fn, a, b, epsabs=1e-12, epsrel=1e-12, limit=400)
    return val


def frac_quad_oracle(fn, alpha, a, b):
    """Weighted integral of fn(t) t^(alpha-1) over [a, b] via scipy.

    Must stay independent of the package's quadrature: integrates the
    weighted integrand directly, telling scipy about the endpoint power
    singularity when a == 0.
    """
    if alpha == 1.0:
        return quad_oracle(fn, a, b)
    weighted = lambda t: fn(t) * t ** (alpha - 1.0)
    if a == 0.0:
        val, _ = scipy.integrate.quad(weighted, a, b, epsabs=1e-12, epsrel=1e-12,
                                      limit=400, points=[0.0],
                                      weight="alg", wvar=(alpha - 1.0, 0.0))
        return val
    val, _ = scipy.integrate.quad(weighted, a, b, epsabs=1e-12, epsrel=1e-12,
                                  limit=400)
    return val


# ---------------------------------------------------------------------------
# random expression trees (canonical shapes only: literals are non-negative)


def random_tree(rng: random.Random, depth: int = 4) -> ex.Expr:
    """Arbitrary well-formed AST for round-trip testing."""
    if depth == 0 or rng.random() < 0.25:
        return rng.choice([
            ex.T, ex.ALPHA,
            ex.Num(round(rng.uniform(0.0, 9.0), 3)),
            ex.Num(float(rng.randint(0, 12))),
        ])
    kind = rng.randrange(8)
    if kind == 0:
        return ex.Neg(random_tree(rng, depth - 1))
    if kind == 1:
        return ex.Add(random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    if kind == 2:
        return ex.Sub(random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    if kind == 3:
        return ex.Mul(random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    if kind == 4:
        return ex.Div(random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    if kind == 5:
        return ex.Pow(random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    return ex.Call(rng.choice(ex.FUNCTIONS), random_tree(rng, depth - 1))


def random_safe_tree(rng: random.Random, depth: int = 3) -> ex.Expr:
    """AST from a family that is smooth and domain-safe on t in [0.5, 3]."""
    if depth == 0 or rng.random() < 0.3:
        return rng.choice([
            ex.T, ex.T, ex.ALPHA,
            ex.Num(round(rng.uniform(0.25, 2.5), 3)),
        ])
    # affine call arguments and atomic power bases bound the higher
    # derivatives, keeping finite differences trustworthy at h = 1e-5
    kind = rng.randrange(7)
    child = lambda: random_safe_tree(rng, depth - 1)
    affine = lambda: ex.Add(ex.Num(round(rng.uniform(0.0, 2.0), 3)),
                            ex.Mul(ex.Num(round(rng.uniform(0.2, 1.0), 3)), ex.T))
    if kind == 0:
        return ex.Add(child(), child())
    if kind == 1:
        return ex.Sub(child(), child())
    if kind == 2:
        return ex.Mul(child(), random_safe_tree(rng, min(depth - 1, 1)))
    if kind == 3:
        return ex.Pow(rng.choice([ex.T, ex.ALPHA]), ex.Num(float(rng.randint(2, 3))))
    if kind == 4:
        return ex.Call(rng.choice(("sin", "cos")), affine())
    if kind == 5:
        return ex.Call("exp", ex.Mul(ex.Num(0.3), ex.Call("cos", affine())))
    return ex.Div(child(), ex.Add(ex.Num(2.0), ex.Pow(ex.T, ex.Num(2.0))))


def central_fd(fn, t, h):
    return (fn(t + h) - fn(t - h)) / (2.0 * h)


def random_window(rng: random.Random, lo_min=0.1, hi_max=5.0):
    a = rng.uniform(lo_min, 3.0)
    b = a + rng.uniform(0.3, min(2.0, hi_max - a))
    return a, b


ALPHAS = (0.25, 0.5, 0.75, 1.0)
