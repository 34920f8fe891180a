"""Ready-made test functions.

E(k) is the fractional analogue of t^k/k!: E_k(t) = (t^alpha/alpha)^k / k!,
which steps down one level per conformable derivative (D E_k = E_{k-1}).
exp_frac(c) builds exp(c t^alpha/alpha), an eigenfunction of the conformable
derivative with eigenvalue c.
"""

from __future__ import annotations

import math

from .calculus import ConformableFn

__all__ = ["E", "exp_frac", "constant", "from_text", "standard_family"]


def E(k: int) -> ConformableFn:
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k == 0:
        return ConformableFn.from_expr("1", name="E0")
    return ConformableFn.from_expr(
        f"(t^alpha/alpha)^{k}/{float(math.factorial(k))!r}", name=f"E{k}")


def exp_frac(coefficient: float = 1.0) -> ConformableFn:
    c = float(coefficient)
    return ConformableFn.from_expr(f"exp({c!r}*t^alpha/alpha)",
                                   name=f"exp({c:g}*t^a/a)")


def constant(c: float) -> ConformableFn:
    return ConformableFn.from_expr(f"{float(c)!r}", name=f"{c:g}")


def from_text(text: str) -> ConformableFn:
    return ConformableFn.from_expr(text)


def standard_family() -> list[tuple[str, ConformableFn]]:
    """The function family used by the verification suites."""
    return [
        ("E1", E(1)),
        ("E2", E(2)),
        ("E3", E(3)),
        ("exp(t^a/a)", exp_frac(1.0)),
        ("exp(-t^a/a)", exp_frac(-1.0)),
        ("sin", from_text("sin(t)")),
        ("exp", from_text("exp(t)")),
        ("poly", from_text("t^2+t+1")),
    ]
