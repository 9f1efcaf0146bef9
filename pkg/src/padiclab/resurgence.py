"""The Euler flow equation t**2 y' = t - y and its divergent series solution.

The formal solution y = sum of (-1)**m m! t**(m+1) diverges for every
nonzero t.  Three evaluation routes are provided and cross-checked:

* exact-coefficient partial sums, with the first omitted term as the error
  estimate and optimal (smallest-term) truncation;
* Borel-Laplace summation, y_B(t) = integral over s >= 0 of
  exp(-s/t)/(1+s): after s = t*u the weight is exactly exp(-u), and a
  double-exponential substitution u = exp(w - exp(-w)) turns the Laplace
  integral into a trapezoid sum whose node count doubles until two
  successive estimates agree;
* an independent continued-fraction oracle for the same value via
  y_B(t) = exp(x) E1(x) at x = 1/t, evaluated by the modified Lentz scheme
  on the classical fraction 1/(x+1- 1/(x+3- 4/(x+5- ...))) in which the
  exponentials cancel, so nothing overflows.

The quadrature and the oracle are deliberately separate code paths; the
test suite requires them to agree.  The defect of a truncated series in the
equation, (t - y) - t**2 y', collapses symbolically to the single monomial
(-1)**(N+1) (N+1)! t**(N+2) — the omitted-term tail — and that cancellation
is recomputed here with exact polynomial arithmetic rather than assumed.

All floating work happens in mpmath at >= 30 significant digits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .errors import AccuracyError, DomainError, RangeError
from .padic_core import RationalPolynomial

#: Minimum working precision (significant decimal digits).
DEFAULT_DPS = 30
DEFAULT_TOL = "1e-10"
#: e**(1/t) is refused as a summand below this t.
GROWTH_GUARD_T = Fraction(1, 10**6)


def _to_mp(t):
    if isinstance(t, Fraction):
        return mpf(t.numerator) / t.denominator
    return mpf(t)


def _require_positive(t) -> mpf:
    t = _to_mp(t)
    if not t > 0:
        raise DomainError("t must be positive")
    return t


@dataclass(frozen=True)
class EulerSeries:
    """Coefficients c_m = (-1)**m * m! of t**(m+1), materialized exactly."""

    order: int
    coefficients: tuple[int, ...]

    @classmethod
    def up_to(cls, order: int) -> "EulerSeries":
        if order < 0:
            raise DomainError("order must be >= 0")
        cs = [1]
        for m in range(1, order + 1):
            cs.append(-cs[-1] * m)
        return cls(order, tuple(cs))

    def as_polynomial(self) -> RationalPolynomial:
        """The partial sum S_N(t) as an exact polynomial in t."""
        return RationalPolynomial.of(0, *self.coefficients)


@dataclass(frozen=True)
class SummationResult:
    """A value for y(t) together with how it was produced."""

    value: mpf
    method: str
    error_estimate: mpf


def euler_series_partial(t, order: int, dps: int = DEFAULT_DPS) -> SummationResult:
    """S_N(t) with exact coefficients; error estimate = first omitted term."""
    series = EulerSeries.up_to(order)
    with mp.workdps(max(dps, DEFAULT_DPS) + 5):
        tv = _require_positive(t)
        acc = mpf(0)
        for c in reversed(series.coefficients):
            acc = acc * tv + c
        value = acc * tv
        omitted = mp.factorial(order + 1) * tv ** (order + 2)
        return SummationResult(value, f"partial_sum(N={order})", omitted)


def optimal_truncation_index(t) -> int:
    """The first index minimizing the term magnitude m! * t**(m+1).

    Terms shrink while (m+1)*t < 1, so the minimum sits near 1/t; on exact
    ties (t = 1/k) the smaller index is returned.
    """
    with mp.workdps(40):
        tv = _require_positive(t)
        m = max(0, int(mp.ceil(1 / tv - 1)))

        def term(i):
            return mp.factorial(i) * tv ** (i + 1)

        # settle boundary rounding by comparing neighbours directly
        while m > 0 and term(m - 1) <= term(m):
            m -= 1
        while term(m + 1) < term(m):
            m += 1
        return m


def borel_sum(
    t,
    tol=DEFAULT_TOL,
    dps: int = DEFAULT_DPS,
    max_doublings: int = 14,
) -> SummationResult:
    """Borel-Laplace value of the series by double-exponential quadrature.

    Integrates exp(-u) * t/(1 + t*u) over u >= 0 with the substitution
    u = exp(w - exp(-w)), trapezoid on w in [-5, 5], doubling the node
    count until two successive estimates agree to ``tol`` (relative).
    """
    with mp.workdps(max(dps, DEFAULT_DPS) + 10):
        tv = _require_positive(t)
        tolv = _to_mp(tol)
        width = mpf(5)

        def g(w):
            ew = mp.exp(-w)
            u = mp.exp(w - ew)
            return mp.exp(-u) * tv / (1 + tv * u) * u * (1 + ew)

        prev = None
        n = 16
        for _ in range(max_doublings):
            h = 2 * width / n
            est = h * (
                (g(-width) + g(width)) / 2
                + mp.fsum(g(-width + i * h) for i in range(1, n))
            )
            if prev is not None:
                # never certify below what the working precision resolves
                certifiable = max(abs(est - prev), mp.eps * abs(est))
                if certifiable <= tolv * abs(est):
                    return SummationResult(est, f"borel(nodes={n})", certifiable)
                if abs(est - prev) <= 4 * mp.eps * abs(est):
                    # estimates already agree to working precision; more
                    # nodes cannot close the remaining gap to tol
                    raise AccuracyError(
                        f"tol={tol} is below the working precision at "
                        f"dps={max(dps, DEFAULT_DPS)}",
                        achieved=certifiable,
                    )
            prev = est
            n *= 2
        raise AccuracyError(
            f"quadrature did not reach tol={tol} within {n} nodes",
            achieved=abs(est - prev),
        )


def exp_e1_oracle(t, dps: int = 40) -> mpf:
    """exp(x)*E1(x) at x = 1/t by the classical continued fraction.

    Modified Lentz evaluation of x+1 - 1/(x+3 - 4/(x+5 - 9/(...))); the
    reciprocal is exp(x)E1(x).  This shares no code with the quadrature and
    serves as its independent oracle.
    """
    with mp.workdps(max(dps, DEFAULT_DPS)):
        tv = _require_positive(t)
        x = 1 / tv
        tiny = mpf(10) ** (-2 * mp.dps)
        eps = mpf(10) ** (-mp.dps + 2)
        f = c = x + 1
        d = mpf(0)
        for k in range(1, 100000):
            a = mpf(-(k * k))
            b = x + 2 * k + 1
            d = b + a * d
            if d == 0:
                d = tiny
            c = b + a / c
            if c == 0:
                c = tiny
            d = 1 / d
            delta = c * d
            f *= delta
            if abs(delta - 1) < eps:
                return 1 / f
        raise AccuracyError("continued fraction did not converge")


def general_solution(t, a, tol=DEFAULT_TOL, dps: int = DEFAULT_DPS) -> SummationResult:
    """borel_sum(t) + a * exp(1/t): the two-parameter family of solutions.

    The homogeneous term satisfies t**2 y' = -y identically.  For very
    small t with a != 0 the exponential dwarfs every other scale, so the
    evaluation is refused rather than returned as noise.
    """
    with mp.workdps(max(dps, DEFAULT_DPS) + 10):
        tv = _require_positive(t)
        av = _to_mp(a)
        if av != 0 and tv < _to_mp(GROWTH_GUARD_T):
            raise RangeError(
                f"exp(1/t) at t={t} exceeds any usable scale; "
                "pass a=0 or t >= 1e-6"
            )
        base = borel_sum(tv, tol=tol, dps=dps)
        value = base.value + av * mp.exp(1 / tv)
        return SummationResult(value, f"general(a={av})", base.error_estimate)


def ode_residual(y, t, h="1e-4", dps: int = DEFAULT_DPS) -> mpf:
    """|t**2 * (central difference of y) - (t - y(t))| at step h.

    ``y`` is a callable on [t-h, t+h] or a sampled triple
    (y(t-h), y(t), y(t+h)).
    """
    with mp.workdps(max(dps, DEFAULT_DPS) + 5):
        tv = _require_positive(t)
        hv = _to_mp(h)
        if not 0 < hv < tv:
            raise DomainError("need 0 < h < t")
        if callable(y):
            lo, mid, hi = y(tv - hv), y(tv), y(tv + hv)
        else:
            lo, mid, hi = (_to_mp(v) for v in y)
        slope = (hi - lo) / (2 * hv)
        return abs(tv**2 * slope - (tv - mid))


def truncated_series_defect(order: int) -> RationalPolynomial:
    """(t - S_N) - t**2 S_N' computed with exact polynomial arithmetic.

    Everything telescopes away except the omitted-term monomial
    (-1)**(N+1) (N+1)! t**(N+2).
    """
    s = EulerSeries.up_to(order).as_polynomial()
    t = RationalPolynomial.of(0, 1)
    t_squared = RationalPolynomial.of(0, 0, 1)
    return (t - s) - t_squared * s.derivative()
