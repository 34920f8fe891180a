"""Fractional integral inequality checkers.

Every checker evaluates the two (or one) comparison sides of its inequality
by weighted quadrature and exact endpoint formulas, grid-verifies the
stated hypotheses, and returns an InequalityReport with the raw slacks.
Hypothesis verification is sampled evidence on a uniform grid, never a
proof; a report therefore distinguishes "the comparison held numerically"
(holds) from "and the hypotheses were verified" (hypotheses_ok).

Remainder integrals int_a^b R_{n,f}(a, t) d_a t are computed through the
endpoint identity as a single weighted integral of D^{n+1} f against the
kernel ((b^a - t^a)/a)^{n+1}/(n+1)!; the identity itself is exercised
independently by the taylor module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .calculus import (Alpha, ConformableFn, Interval, QuadratureConfig,
                       _alpha_value, frac_deriv_fn, frac_integral)
from .errors import HypothesisError

__all__ = [
    "BoundsPair", "HypothesisCheck", "MontgomeryKernel", "SteffensenEll",
    "InequalityReport",
    "verify_hypothesis", "steffensen_ell", "check_sandwich_lemma", "steffensen",
    "remainder_steffensen", "hermite_hadamard_1", "remainder_mm_bounds",
    "cebysev", "remainder_cebysev", "hermite_hadamard_2", "montgomery_residual",
    "montgomery_check", "ostrowski", "jensen", "gruss", "gruss_montgomery",
    "hermite_hadamard_3",
]

AlphaLike = Union[Alpha, float]

DEFAULT_GRID = 256
HOLDS_TOL = 1e-9  # scaled by 1 + max|side| when setting the holds flag


@dataclass(frozen=True)
class BoundsPair:
    """Bounds m <= M on a function or one of its derivatives."""

    m: float
    M: float

    def __post_init__(self):
        if not (math.isfinite(self.m) and math.isfinite(self.M)):
            raise ValueError("bounds must be finite")
        if self.m > self.M:
            raise ValueError(f"bounds require m <= M, got m={self.m}, M={self.M}")

    @property
    def spread(self) -> float:
        return self.M - self.m


@dataclass(frozen=True)
class HypothesisCheck:
    """Grid evidence for one hypothesis; witness is the first violating point."""

    name: str
    verified: bool
    witness: Optional[float] = None
    grid: int = DEFAULT_GRID


@dataclass(frozen=True)
class SteffensenEll:
    """The comparison-window length ell = a(b-a)/(b^a - a^a) int g d_a t."""

    ell: float
    alpha: Alpha
    window: Interval


@dataclass(frozen=True)
class MontgomeryKernel:
    """Piecewise kernel p(t, s): (s^a - a^a)/a below t, (s^a - b^a)/a above.

    The jump at s = t has size (a^a - b^a)/alpha.
    """

    t: float
    alpha: Alpha
    window: Interval

    def __post_init__(self):
        if not self.window.contains(self.t):
            raise ValueError(
                f"t={self.t} outside window [{self.window.a}, {self.window.b}]")

    def __call__(self, s: float) -> float:
        a = self.alpha.value
        anchor = self.window.a if s < self.t else self.window.b
        return (math.pow(s, a) - math.pow(anchor, a)) / a

    @property
    def jump(self) -> float:
        a = self.alpha.value
        return (math.pow(self.window.a, a) - math.pow(self.window.b, a)) / a


@dataclass(frozen=True)
class InequalityReport:
    theorem: str
    alpha: float
    window: Interval
    hypotheses: tuple[HypothesisCheck, ...]
    lower: Optional[float]
    actual: float
    upper: Optional[float]
    slack_low: Optional[float]
    slack_high: Optional[float]
    holds: bool

    @property
    def hypotheses_ok(self) -> bool:
        return all(h.verified for h in self.hypotheses)


def _make_report(theorem: str, alpha: float, window: Interval,
                 hypotheses: list[HypothesisCheck], lower: Optional[float],
                 actual: float, upper: Optional[float]) -> InequalityReport:
    sides = [abs(v) for v in (lower, actual, upper) if v is not None]
    tau = HOLDS_TOL * (1.0 + max(sides))
    holds = True
    slack_low = slack_high = None
    if lower is not None:
        slack_low = actual - lower
        holds = holds and (lower <= actual + tau)
    if upper is not None:
        slack_high = upper - actual
        holds = holds and (actual <= upper + tau)
    return InequalityReport(theorem=theorem, alpha=alpha, window=window,
                            hypotheses=tuple(hypotheses), lower=lower,
                            actual=actual, upper=upper, slack_low=slack_low,
                            slack_high=slack_high, holds=holds)


# ---------------------------------------------------------------------------
# hypothesis verification

_PROPERTIES = ("nonnegative", "range01", "increasing", "decreasing", "convex",
               "bounded")


def verify_hypothesis(f: ConformableFn, alpha: AlphaLike, window,
                      prop: str, grid_n: int = DEFAULT_GRID,
                      bounds: Optional[BoundsPair] = None
                      ) -> tuple[bool, Optional[float]]:
    """Sample f on a uniform grid and test the property.

    window may be an Interval or a raw (lo, hi) pair (the latter admits
    negative endpoints, as needed when testing convexity of an outer
    function over the range of an inner one).  Returns (verified, witness)
    where witness is the first violating grid point.  This is evidence on
    grid_n + 1 points, not a proof.
    """
    if grid_n < 8:
        raise ValueError(f"grid_n must be >= 8, got {grid_n}")
    if prop == "convex-outer":
        prop = "convex"
    if prop not in _PROPERTIES:
        raise ValueError(f"unknown property {prop!r}")
    if prop == "bounded" and bounds is None:
        raise ValueError("property 'bounded' needs a BoundsPair")
    a = _alpha_value(alpha)
    if isinstance(window, Interval):
        lo, hi = window.a, window.b
    else:
        lo, hi = float(window[0]), float(window[1])
        if lo > hi:
            lo, hi = hi, lo
    if lo == hi:
        ts = [lo]
    else:
        step = (hi - lo) / grid_n
        ts = [lo + i * step for i in range(grid_n + 1)]
    vals = [f.value(t, a) for t in ts]
    tol = 1e-12 * (1.0 + max(abs(v) for v in vals))

    if prop == "nonnegative":
        for t, v in zip(ts, vals):
            if v < -tol:
                return False, t
        return True, None
    if prop == "range01":
        for t, v in zip(ts, vals):
            if v < -tol or v > 1.0 + tol:
                return False, t
        return True, None
    if prop == "increasing":
        for i in range(len(vals) - 1):
            if vals[i + 1] < vals[i] - tol:
                return False, ts[i + 1]
        return True, None
    if prop == "decreasing":
        for i in range(len(vals) - 1):
            if vals[i + 1] > vals[i] + tol:
                return False, ts[i + 1]
        return True, None
    if prop == "convex":
        for i in range(len(vals) - 2):
            if vals[i + 1] > 0.5 * (vals[i] + vals[i + 2]) + tol:
                return False, ts[i + 1]
        return True, None
    # bounded
    for t, v in zip(ts, vals):
        if v < bounds.m - tol or v > bounds.M + tol:
            return False, t
    return True, None


def _hyp(name: str, f: ConformableFn, alpha: float, window, prop: str,
         grid_n: int, bounds: Optional[BoundsPair] = None) -> HypothesisCheck:
    ok, witness = verify_hypothesis(f, alpha, window, prop, grid_n, bounds)
    return HypothesisCheck(name=name, verified=ok, witness=witness, grid=grid_n)


# ---------------------------------------------------------------------------
# shared pieces

_ONE = ConformableFn.from_expr("1", name="1")


def _product(f: ConformableFn, g: ConformableFn) -> ConformableFn:
    return ConformableFn(lambda t, alpha=1.0: f.value(t, alpha) * g.value(t, alpha))


def _avg_factor(a: float, window: Interval) -> float:
    return a / (math.pow(window.b, a) - math.pow(window.a, a))


def _mean_value(f: ConformableFn, a: float, window: Interval,
                cfg: Optional[QuadratureConfig]) -> float:
    return _avg_factor(a, window) * frac_integral(f, a, window, cfg)


def _ell_raw(g: ConformableFn, a: float, window: Interval,
             cfg: Optional[QuadratureConfig]) -> float:
    # the normalizer (b^a - a^a)/alpha equals the weighted integral of 1;
    # computing it with the same rule makes the ratio exact for constant g
    mass = frac_integral(g, a, window, cfg)
    unit = frac_integral(_ONE, a, window, cfg)
    ell = window.width * mass / unit
    return min(max(ell, 0.0), window.width)


def _remainder_integral(f: ConformableFn, a: float, n: int, window: Interval,
                        cfg: Optional[QuadratureConfig]) -> float:
    """int_a^b R_{n,f}(a, t) d_a t via the endpoint identity (single integral)."""
    dfn1 = frac_deriv_fn(f, n + 1)
    b_pow = math.pow(window.b, a)
    fact = float(math.factorial(n + 1))

    def integrand(s: float, _alpha: float = a) -> float:
        z = (b_pow - math.pow(s, a)) / a
        return dfn1.value(s, a) * z ** (n + 1) / fact

    return frac_integral(ConformableFn(integrand), a, window, cfg)


def _as_window(window) -> Interval:
    if isinstance(window, Interval):
        return window
    return Interval(float(window[0]), float(window[1]))


# ---------------------------------------------------------------------------
# Steffensen comparison

def steffensen_ell(g: ConformableFn, alpha: AlphaLike, window,
                   cfg: Optional[QuadratureConfig] = None,
                   grid_n: int = DEFAULT_GRID) -> SteffensenEll:
    """Window length ell for g mapping into [0, 1]; hypothesis is enforced."""
    a = _alpha_value(alpha)
    window = _as_window(window)
    ok, witness = verify_hypothesis(g, a, window, "range01", grid_n)
    if not ok:
        raise HypothesisError(f"g is outside [0, 1] at t={witness!r}")
    return SteffensenEll(ell=_ell_raw(g, a, window, cfg), alpha=Alpha(a), window=window)


def check_sandwich_lemma(g: ConformableFn, alpha: AlphaLike, window,
                         cfg: Optional[QuadratureConfig] = None,
                         grid_n: int = DEFAULT_GRID) -> InequalityReport:
    """int over [b-ell, b] of 1 <= int g <= int over [a, a+ell] of 1."""
    a = _alpha_value(alpha)
    window = _as_window(window)
    hyps = [_hyp("g in [0,1]", g, a, window, "range01", grid_n)]
    ell = _ell_raw(g, a, window, cfg)
    lower = frac_integral(_ONE, a, (window.b - ell, window.b), cfg)
    actual = frac_integral(g, a, window, cfg)
    upper = frac_integral(_ONE, a, (window.a, window.a + ell), cfg)
    return _make_report("sandwich", a, window, hyps, lower, actual, upper)


def steffensen(f: ConformableFn, g: ConformableFn, alpha: AlphaLike, window,
               cfg: Optional[QuadratureConfig] = None,
               grid_n: int = DEFAULT_GRID) -> InequalityReport:
    """int_{b-ell}^b f <= int f g <= int_a^{a+ell} f for nonnegative decreasing f.

    Hypothesis failures are reported, not raised; the comparison values are
    still computed for diagnostics (the classic counterexample with f < 0
    shows the left inequality breaking).
    """
    a = _alpha_value(alpha)
    window = _as_window(window)
    hyps = [
        _hyp("f nonnegative", f, a, window, "nonnegative", grid_n),
        _hyp("f decreasing", f, a, window, "decreasing", grid_n),
        _hyp("g in [0,1]", g, a, window, "range01", grid_n),
    ]
    ell = _ell_raw(g, a, window, cfg)
    lower = frac_integral(f, a, (window.b - ell, window.b), cfg)
    actual = frac_integral(_product(f, g), a, window, cfg)
    upper = frac_integral(f, a, (window.a, window.a + ell), cfg)
    return _make_report("steffensen", a, window, hyps, lower, actual, upper)


# ---------------------------------------------------------------------------
# remainder bounds from the Steffensen comparison

def remainder_steffensen(f: ConformableFn, alpha: AlphaLike, n: int, window,
                         cfg: Optional[QuadratureConfig] = None,
                         grid_n: int = DEFAULT_GRID) -> InequalityReport:
    """Two-sided bound on the scaled remainder integral with ell = (b-a)/(n+2)."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    a = _alpha_value(alpha)
    window = _as_window(window)
    dn = frac_deriv_fn(f, n)
    dn1 = frac_deriv_fn(f, n + 1)
    hyps = [
        _hyp(f"D^{n + 1} f increasing", dn1, a, window, "increasing", grid_n),
        _hyp(f"D^{n} f decreasing", dn, a, window, "decreasing", grid_n),
    ]
    ell = window.width / (n + 2)
    lower = dn.value(window.a + ell, a) - dn.value(window.a, a)
    upper = dn.value(window.b, a) - dn.value(window.b - ell, a)
    scale = math.factorial(n + 1) * _avg_factor(a, window) ** (n + 1)
    actual = scale * _remainder_integral(f, a, n, window, cfg)
    return _make_report("rem-steffensen", a, window, hyps, lower, actual, upper)


def hermite_hadamard_1(f: ConformableFn, alpha: AlphaLike, window,
                       cfg: Optional[QuadratureConfig] = None,
                       grid_n: int = DEFAULT_GRID) -> InequalityReport:
    """f((a+b)/2) <= weighted mean of f <= f(b) + f(a) - f((a+b)/2)."""
    a = _alpha_value(alpha)
    window = _as_window(window)
    d1 = frac_deriv_fn(f, 1)
    hyps = [
        _hyp("D f increasing", d1, a, window, "increasing", grid_n),
        _hyp("f decreasing", f, a, window, "decreasing", grid_n),
    ]
    mid = 0.5 * (window.a + window.b)
    f_mid = f.value(mid, a)
    lower = f_mid
    actual = _mean_value(f, a, window, cfg)
    upper = f.value(window.b, a) + f.value(window.a, a) - f_mid
    return _make_report("hh1", a, window, hyps, lower, actual, upper)


def remainder_mm_bounds(f: ConformableFn, alpha: AlphaLike, n: int,
                        bounds: BoundsPair, window,
                        cfg: Optional[QuadratureConfig] = None,
                        grid_n: int = DEFAULT_GRID) -> InequalityReport:
    """Bounds on int R_{n,f}(a, t) d_a t from m <= D^{n+1} f <= M (m < M)."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if not (bounds.m < bounds.M):
        raise ValueError(f"this bound needs m < M, got m={bounds.m}, M={bounds.M}")
    a = _alpha_value(alpha)
    window = _as_window(window)
    m, M = bounds.m, bounds.M
    dn = frac_deriv_fn(f, n)
    dn1 = frac_deriv_fn(f, n + 1)
    hyps = [_hyp(f"m <= D^{n + 1} f <= M", dn1, a, window, "bounded", grid_n, bounds)]

    span = math.pow(window.b, a) - math.pow(window.a, a)
    q = span / a
    ell = (a * window.width / (span * (M - m))
           * (dn.value(window.b, a) - dn.value(window.a, a) - m * q))
    ell = min(max(ell, 0.0), window.width)
    qb = (math.pow(window.b, a) - math.pow(window.b - ell, a)) / a
    qa = (math.pow(window.b, a) - math.pow(window.a + ell, a)) / a
    fact = math.factorial(n + 2)
    lower = m / fact * q ** (n + 2) + (M - m) / fact * qb ** (n + 2)
    upper = M / fact * q ** (n + 2) + (m - M) / fact * qa ** (n + 2)
    actual = _remainder_integral(f, a, n, window, cfg)
    return _make_report("mm-bounds", a, window, hyps, lower, actual, upper)


# ---------------------------------------------------------------------------
# Cebysev ordering

def _classify_monotone(f: ConformableFn, a: float, window: Interval,
                       grid_n: int) -> tuple[bool, bool, Optional[float]]:
    inc, w_inc = verify_hypothesis(f, a, window, "increasing", grid_n)
    dec, _ = verify_hypothesis(f, a, window, "decreasing", grid_n)
    return inc, dec, w_inc


def cebysev(f: ConformableFn, g: ConformableFn, alpha: AlphaLike, window,
            cfg: Optional[QuadratureConfig] = None,
            grid_n: int = DEFAULT_GRID) -> InequalityReport:
    """int f g >= mean-product bound when f, g are monotone the same way.

    Opposite monotonicity reverses the comparison; non-monotone inputs are
    rejected rather than guessed.
    """
    a = _alpha_value(alpha)
    window = _as_window(window)
    f_inc, f_dec, fw = _classify_monotone(f, a, window, grid_n)
    g_inc, g_dec, gw = _classify_monotone(g, a, window, grid_n)
    if not (f_inc or f_dec):
        raise HypothesisError(f"f is not monotone on the window (witness t={fw!r})")
    if not (g_inc or g_dec):
        raise HypothesisError(f"g is not monotone on the window (witness t={gw!r})")
    hyps = [
        HypothesisCheck("f monotone", True, None, grid_n),
        HypothesisCheck("g monotone", True, None, grid_n),
    ]
    same = (f_inc and g_inc) or (f_dec and g_dec)
    actual = frac_integral(_product(f, g), a, window, cfg)
    bound = (_avg_factor(a, window) * frac_integral(f, a, window, cfg)
             * frac_integral(g, a, window, cfg))
    if same:
        return _make_report("cebysev", a, window, hyps, bound, actual, None)
    return _make_report("cebysev", a, window, hyps, None, actual, bound)


def remainder_cebysev(f: ConformableFn, alpha: AlphaLike, n: int, window,
                      cfg: Optional[QuadratureConfig] = None,
                      grid_n: int = DEFAULT_GRID) -> InequalityReport:
    """Chain bound on the centered remainder integral for monotone D^{n+1} f.

    For increasing D^{n+1} f:  edge <= middle <= 0, where middle subtracts
    the mean-growth term from the remainder integral; decreasing reverses
    the chain.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    a = _alpha_value(alpha)
    window = _as_window(window)
    dn = frac_deriv_fn(f, n)
    dn1 = frac_deriv_fn(f, n + 1)
    inc, dec, w = _classify_monotone(dn1, a, window, grid_n)
    if not (inc or dec):
        raise HypothesisError(
            f"D^{n + 1} f is not monotone on the window (witness t={w!r})")
    hyps = [HypothesisCheck(f"D^{n + 1} f monotone", True, None, grid_n)]

    q = (math.pow(window.b, a) - math.pow(window.a, a)) / a
    fact = math.factorial(n + 2)
    middle = (_remainder_integral(f, a, n, window, cfg)
              - (dn.value(window.b, a) - dn.value(window.a, a)) / fact * q ** (n + 1))
    edge = (dn1.value(window.a, a) - dn1.value(window.b, a)) / fact * q ** (n + 2)
    if inc:
        return _make_report("rem-cebysev", a, window, hyps, edge, middle, 0.0)
    return _make_report("rem-cebysev", a, window, hyps, 0.0, middle, edge)


def hermite_hadamard_2(f: ConformableFn, alpha: AlphaLike, window,
                       cfg: Optional[QuadratureConfig] = None,
                       grid_n: int = DEFAULT_GRID) -> InequalityReport:
    """Weighted mean of f against (f(a) + f(b))/2; direction from D f."""
    a = _alpha_value(alpha)
    window = _as_window(window)
    d1 = frac_deriv_fn(f, 1)
    inc, dec, w = _classify_monotone(d1, a, window, grid_n)
    if not (inc or dec):
        raise HypothesisError(f"D f is not monotone on the window (witness t={w!r})")
    hyps = [HypothesisCheck("D f monotone", True, None, grid_n)]
    actual = _mean_value(f, a, window, cfg)
    bound = 0.5 * (f.value(window.a, a) + f.value(window.b, a))
    if inc:
        return _make_report("hh2", a, window, hyps, None, actual, bound)
    return _make_report("hh2", a, window, hyps, bound, actual, None)


# ---------------------------------------------------------------------------
# Montgomery representation / Ostrowski deviation

def montgomery_residual(f: ConformableFn, alpha: AlphaLike, window, t: float,
                        cfg: Optional[QuadratureConfig] = None) -> float:
    """f(t) minus its Montgomery representation; ~0 up to quadrature error.

    The kernel integral is split at the jump s = t so neither quadrature
    straddles the discontinuity.
    """
    a = _alpha_value(alpha)
    window = _as_window(window)
    kernel = MontgomeryKernel(t=t, alpha=Alpha(a), window=window)
    d1 = frac_deriv_fn(f, 1)
    weighted = ConformableFn(lambda s, _=a: kernel(s) * d1.value(s, a))
    kernel_int = (frac_integral(weighted, a, (window.a, t), cfg)
                  + frac_integral(weighted, a, (t, window.b), cfg))
    factor = _avg_factor(a, window)
    return f.value(t, a) - factor * frac_integral(f, a, window, cfg) - factor * kernel_int


def montgomery_check(f: ConformableFn, alpha: AlphaLike, window, t: float,
                     cfg: Optional[QuadratureConfig] = None) -> InequalityReport:
    """Report form of the identity residual: |residual| below 10x quadrature tolerance."""
    a = _alpha_value(alpha)
    window = _as_window(window)
    used = cfg if cfg is not None else QuadratureConfig()
    residual = montgomery_residual(f, a, window, t, cfg)
    tol = 10.0 * (used.abs_tol + used.rel_tol * (1.0 + abs(f.value(t, a))))
    return _make_report("montgomery", a, window, [], -tol, residual, tol)


def ostrowski(f: ConformableFn, alpha: AlphaLike, window, t: float,
              cfg: Optional[QuadratureConfig] = None,
              M: Optional[float] = None,
              grid_n: int = DEFAULT_GRID) -> InequalityReport:
    """|f(t) - weighted mean| against the kernel bound with M = sup |D f|.

    A supplied M is trusted as the stated supremum; when omitted it is
    estimated as the grid maximum of |D f| over 1024 points inflated by 1%
    and flagged as an estimate in the hypotheses.
    """
    a = _alpha_value(alpha)
    window = _as_window(window)
    if not window.contains(t):
        raise ValueError(f"t={t} outside window [{window.a}, {window.b}]")
    d1 = frac_deriv_fn(f, 1)
    hyps = []
    if M is None:
        grid = 1024
        step = window.width / grid
        samples = [abs(d1.value(window.a + i * step, a)) for i in range(grid + 1)]
        peak = max(samples)
        M = 1.01 * peak
        hyps.append(HypothesisCheck("M estimated from grid (1% inflation)", True,
                                    None, grid))
        if peak > 0.0 and peak - min(samples) < 1e-9 * (1.0 + peak):
            # a flat sample grid cannot localize the supremum
            hyps.append(HypothesisCheck("flat derivative grid: estimate may be "
                                        "unreliable", True, None, grid))
    else:
        M = float(M)
        hyps.append(HypothesisCheck("M supplied as sup |D f|", True, None, grid_n))
    actual = abs(f.value(t, a) - _mean_value(f, a, window, cfg))
    t_pow, a_pow, b_pow = math.pow(t, a), math.pow(window.a, a), math.pow(window.b, a)
    upper = (M / (2.0 * a * (b_pow - a_pow))
             * ((t_pow - a_pow) ** 2 + (b_pow - t_pow) ** 2))
    return _make_report("ostrowski", a, window, hyps, None, actual, upper)


# ---------------------------------------------------------------------------
# Jensen / Gruss

def jensen(w: ConformableFn, g: ConformableFn, F: ConformableFn,
           alpha: AlphaLike, window,
           cfg: Optional[QuadratureConfig] = None,
           grid_n: int = DEFAULT_GRID) -> InequalityReport:
    """F(weighted mean of g) <= weighted mean of F(g) for convex outer F.

    F is applied to the values of g (its expression variable t stands for
    the argument); convexity is midpoint-tested on the sampled range of g.
    """
    a = _alpha_value(alpha)
    window = _as_window(window)
    hyps = [_hyp("w nonnegative", w, a, window, "nonnegative", grid_n)]
    w_mass = frac_integral(w, a, window, cfg)
    if w_mass <= 0.0:
        raise HypothesisError(f"weight has non-positive mass {w_mass!r}")

    step = window.width / grid_n
    g_vals = [g.value(window.a + i * step, a) for i in range(grid_n + 1)]
    g_lo, g_hi = min(g_vals), max(g_vals)
    if g_lo < g_hi:
        ok, witness = verify_hypothesis(F, a, (g_lo, g_hi), "convex", grid_n)
        if not ok:
            raise HypothesisError(
                f"outer function fails the midpoint convexity test at x={witness!r}")
    hyps.append(HypothesisCheck("F convex on range of g", True, None, grid_n))

    mean_g = frac_integral(_product(w, g), a, window, cfg) / w_mass
    outer = ConformableFn(
        lambda t, _=a: w.value(t, a) * F.value(g.value(t, a), a))
    actual = frac_integral(outer, a, window, cfg) / w_mass
    lower = F.value(mean_g, a)
    return _make_report("jensen", a, window, hyps, lower, actual, None)


def gruss(f: ConformableFn, g: ConformableFn, alpha: AlphaLike, window,
          bounds1: BoundsPair, bounds2: BoundsPair,
          cfg: Optional[QuadratureConfig] = None,
          grid_n: int = DEFAULT_GRID) -> InequalityReport:
    """|mean(fg) - mean(f) mean(g)| <= (M1 - m1)(M2 - m2)/4."""
    a = _alpha_value(alpha)
    window = _as_window(window)
    hyps = [
        _hyp("m1 <= f <= M1", f, a, window, "bounded", grid_n, bounds1),
        _hyp("m2 <= g <= M2", g, a, window, "bounded", grid_n, bounds2),
    ]
    factor = _avg_factor(a, window)
    actual = abs(factor * frac_integral(_product(f, g), a, window, cfg)
                 - factor ** 2 * frac_integral(f, a, window, cfg)
                 * frac_integral(g, a, window, cfg))
    upper = 0.25 * bounds1.spread * bounds2.spread
    return _make_report("gruss", a, window, hyps, None, actual, upper)


def gruss_montgomery(f: ConformableFn, alpha: AlphaLike, window, t: float,
                     bounds: BoundsPair,
                     cfg: Optional[QuadratureConfig] = None,
                     grid_n: int = DEFAULT_GRID) -> InequalityReport:
    """Trapezoid-corrected Montgomery deviation bounded by (b^a - a^a)(M - m)/(4a)."""
    a = _alpha_value(alpha)
    window = _as_window(window)
    if not window.contains(t):
        raise ValueError(f"t={t} outside window [{window.a}, {window.b}]")
    d1 = frac_deriv_fn(f, 1)
    hyps = [_hyp("m <= D f <= M", d1, a, window, "bounded", grid_n, bounds)]
    a_pow, b_pow, t_pow = (math.pow(window.a, a), math.pow(window.b, a),
                           math.pow(t, a))
    correction = ((2.0 * t_pow - a_pow - b_pow) / (2.0 * (b_pow - a_pow))
                  * (f.value(window.b, a) - f.value(window.a, a)))
    actual = abs(f.value(t, a) - _mean_value(f, a, window, cfg) - correction)
    upper = 0.25 * (b_pow - a_pow) / a * bounds.spread
    return _make_report("gruss-montgomery", a, window, hyps, None, actual, upper)


def hermite_hadamard_3(f: ConformableFn, alpha: AlphaLike, window,
                       bounds: BoundsPair,
                       cfg: Optional[QuadratureConfig] = None,
                       grid_n: int = DEFAULT_GRID) -> InequalityReport:
    """|(f(a) + f(b))/2 - weighted mean| <= (b^a - a^a)(M - m)/(4a)."""
    a = _alpha_value(alpha)
    window = _as_window(window)
    d1 = frac_deriv_fn(f, 1)
    hyps = [_hyp("m <= D f <= M", d1, a, window, "bounded", grid_n, bounds)]
    trapezoid = 0.5 * (f.value(window.a, a) + f.value(window.b, a))
    actual = abs(trapezoid - _mean_value(f, a, window, cfg))
    upper = (0.25 * (math.pow(window.b, a) - math.pow(window.a, a)) / a
             * bounds.spread)
    return _make_report("hh3", a, window, hyps, None, actual, upper)
