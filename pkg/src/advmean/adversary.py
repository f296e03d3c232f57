"""Construction of the indistinguishable adversarial partner.

Given a distribution ``p`` and a sample budget ``(n, delta)``, this module
builds a second distribution ``q`` whose mean is separated from ``p``'s by a
constant fraction of the instance error bound ``epsilon(p, n, delta)`` while
remaining statistically indistinguishable from ``p`` on ``n`` samples and
keeping every per-atom density ratio ``dq/dp`` at most 2.

Two cases, split on which term of the error bound dominates:

- Large mean gap (``|mu_p - mu_star| > sigma_star * sqrt(4.5 L / n)`` with
  ``L = log(1/delta)``): ``q`` mixes ``p`` with its trimmed core at weight
  3/4, pulling the mean a quarter of the way toward the core's.
- Small mean gap (otherwise): ``q`` reweights ``p`` by the skew factor
  ``1 + clamp(±a (x - mu_p), -1, 1)``.  The slope ``a`` is chosen by
  bisection so the first-moment shift of the skewed measure equals
  ``sigma_star * sqrt(L / n) / 8``; the shifted measure with mass >= 1 is
  selected and rescaled to unit mass by a factor ``b in [1/2, 1]``.

Quantitative guarantees are only asserted downstream inside the
small-parameter regime ``delta <= REGIME_DELTA_MAX`` and
``log(1/delta)/n <= REGIME_RATIO_MAX``; outside it, results carry regime
flags and nothing is promised.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .distribution import (
    AtomicDistribution,
    WeightedMeasure,
    mean,
    mixture,
    normalize,
    reweight,
    shift,
    standard_trim,
    std,
    trim_fraction,
)
from .divergence import hellinger_sq
from .errors import DegenerateError, DomainError

REGIME_DELTA_MAX = 0.1
REGIME_RATIO_MAX = 0.01

# Bisection control for the skew slope.
MEAN_SHIFT_TARGET_COEFF = 1.0 / 8.0
BISECT_MAX_ITER = 200
BISECT_RTOL = 1e-10

_CENTER_TOL = 1e-10


class Case(Enum):
    """Which branch built the partner distribution."""

    LARGE_MEAN_SHIFT = "large_mean_shift"
    SMALL_MEAN_SHIFT = "small_mean_shift"


class Sign(Enum):
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class RegimeFlags:
    delta_ok: bool
    ratio_ok: bool

    @property
    def ok(self) -> bool:
        return self.delta_ok and self.ratio_ok

    def to_dict(self) -> dict:
        return {"delta_ok": self.delta_ok, "ratio_ok": self.ratio_ok}


def regime_flags(n: float, delta: float) -> RegimeFlags:
    if not 0.0 < delta < 1.0:
        raise DomainError(f"failure probability must lie in (0, 1), got {delta!r}")
    if not n > 0:
        raise DomainError(f"sample count must be positive, got {n!r}")
    return RegimeFlags(
        delta_ok=delta <= REGIME_DELTA_MAX,
        ratio_ok=math.log(1.0 / delta) / n <= REGIME_RATIO_MAX,
    )


@dataclass(frozen=True)
class RatioReport:
    """Per-atom density ratios of ``q`` against ``p``.

    ``ratios`` is aligned with the atoms of ``p``.  When ``q`` carries mass
    at a position ``p`` lacks, ``sup_ratio`` is ``+inf`` and ``offending``
    names the first such position.
    """

    ratios: np.ndarray
    sup_ratio: float
    offending: float | None = None


@dataclass(frozen=True)
class AdversaryResult:
    """The partner distribution plus construction parameters.

    Case-specific fields are ``None`` on the other branch.  ``diagnostics``
    records measured values (error bound, means, mean shift, sup ratio,
    squared Hellinger distance); ``saturated`` marks a skew solve that hit
    the bracket's upper endpoint without reaching the target, which can only
    happen outside the asserted regime.
    """

    q: AtomicDistribution
    case: Case
    lam: float | None
    a: float | None
    sign: Sign | None
    b: float | None
    diagnostics: dict
    regime: RegimeFlags
    saturated: bool = False

    def meta_dict(self) -> dict:
        return {
            "case": self.case.value,
            "lambda": self.lam,
            "a": self.a,
            "sign": self.sign.value if self.sign is not None else None,
            "b": self.b,
            "saturated": self.saturated,
            "regime": self.regime.to_dict(),
            "diagnostics": dict(self.diagnostics),
        }


def _clamped_shift(xs: np.ndarray, ws: np.ndarray, a: float) -> float:
    clamped = np.clip(a * xs, -1.0, 1.0)
    return math.fsum((ws * xs * clamped).tolist())


def mean_shift(p_centered: AtomicDistribution, a: float) -> float:
    """First-moment shift produced by the skew weight ``1 + clamp(a x)`` on a
    mean-zero distribution: ``sum_i w_i x_i clamp(a x_i, -1, 1)``.

    Nondecreasing and continuous in ``a``, strictly increasing while any atom
    is unclamped; 0 in the limit ``a -> 0``.
    """
    if not a > 0.0:
        raise DomainError(f"skew slope must be positive, got {a!r}")
    span = max(1.0, float(np.abs(p_centered.xs).max()))
    mu = mean(p_centered)
    if abs(mu) > _CENTER_TOL * span:
        raise DomainError(f"distribution is not centered (mean {mu!r})")
    return _clamped_shift(p_centered.xs, p_centered.ws, a)


def _bisect_skew(
    centered: AtomicDistribution, target: float, a_hi: float
) -> tuple[float, bool]:
    """Solve ``shift(a) == target`` for ``a in (0, a_hi]`` by bisection.

    The shift is bounded above by ``a * E[x^2]``, so ``target / E[x^2]`` is a
    valid lower bracket; when no atom is clamped the bound is an equality and
    the solve finishes immediately.  Returns ``(a_hi, True)`` if even the
    upper endpoint falls short, which cannot happen in-regime.
    """
    xs, ws = centered.xs, centered.ws
    second = math.fsum((ws * xs * xs).tolist())
    tol = BISECT_RTOL * target

    if _clamped_shift(xs, ws, a_hi) < target - tol:
        return a_hi, True

    lo = min(max(target / second, 5e-324), a_hi)
    value = _clamped_shift(xs, ws, lo)
    if abs(value - target) <= tol:
        return lo, False
    hi = a_hi
    for _ in range(BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        value = _clamped_shift(xs, ws, mid)
        if abs(value - target) <= tol:
            return mid, False
        if value < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), False


def solve_skew(p: AtomicDistribution, n: float, delta: float) -> float:
    """Skew slope ``a`` for the small-mean-gap branch.

    Requires that branch's condition to hold and the trimmed core to have
    positive deviation.  Emits a warning (and returns the bracket's upper
    endpoint) if the target is unreachable, which only occurs outside the
    asserted regime.
    """
    core = standard_trim(p, n, delta).trimmed
    sigma_star = std(core)
    log_term = math.log(1.0 / delta)
    gap = abs(mean(p) - mean(core))
    if gap > sigma_star * math.sqrt(4.5 * log_term / n):
        raise DomainError(
            "skew solve applies only when the mean gap does not dominate"
        )
    if sigma_star <= 0.0:
        raise DegenerateError(
            "trimmed core is a point mass; the skew target is zero"
        )
    centered = shift(p, -mean(p))
    target = MEAN_SHIFT_TARGET_COEFF * sigma_star * math.sqrt(log_term / n)
    a_hi = math.sqrt(log_term / n) / sigma_star
    a, saturated = _bisect_skew(centered, target, a_hi)
    if saturated:
        warnings.warn(
            "skew target unreachable at the bracket endpoint; returning the "
            "endpoint (outside the asserted regime)",
            stacklevel=2,
        )
    return a


def density_ratio(q: AtomicDistribution, p: AtomicDistribution) -> RatioReport:
    """Per-atom mass ratios ``q(x)/p(x)`` at the atoms of ``p``."""
    q_masses = dict(zip(map(float, q.xs), map(float, q.ws)))
    ratios = np.array(
        [q_masses.pop(float(x), 0.0) / float(w) for x, w in zip(p.xs, p.ws)]
    )
    if q_masses:
        # q carries mass somewhere p has none
        offending = min(q_masses)
        return RatioReport(ratios, float("inf"), offending)
    return RatioReport(ratios, float(ratios.max()))


def construct_q(p: AtomicDistribution, n: float, delta: float) -> AdversaryResult:
    """Build the adversarial partner of ``p`` for the budget ``(n, delta)``.

    A single-atom ``p``, or one whose trimmed core is a point mass sitting
    exactly at the mean, admits no partner (the error bound is zero) and
    raises :class:`DegenerateError`.
    """
    flags = regime_flags(n, delta)
    if trim_fraction(n, delta) >= 1.0:
        raise DomainError("trimmed mass would reach 1; shrink log(1/delta)/n")
    if p.num_atoms == 1:
        raise DegenerateError("a point mass has no distinct indistinguishable partner")

    core = standard_trim(p, n, delta).trimmed
    mu_p = mean(p)
    mu_star = mean(core)
    sigma_star = std(core)
    log_term = math.log(1.0 / delta)
    gap = abs(mu_p - mu_star)
    threshold = sigma_star * math.sqrt(4.5 * log_term / n)
    eps_p = gap + threshold

    saturated = False
    if gap > threshold:
        case = Case.LARGE_MEAN_SHIFT
        lam: float | None = 0.75
        a = sign = b = None
        q = mixture(p, core, lam)
    else:
        case = Case.SMALL_MEAN_SHIFT
        lam = None
        if sigma_star <= 0.0:
            raise DegenerateError(
                "trimmed core is a point mass at the mean; no skew target"
            )
        target = MEAN_SHIFT_TARGET_COEFF * sigma_star * math.sqrt(log_term / n)
        a_hi = math.sqrt(log_term / n) / sigma_star
        centered = shift(p, -mu_p)
        a, saturated = _bisect_skew(centered, target, a_hi)
        # Reweight the original atoms with the centered argument; this keeps
        # positions bitwise identical to p's, which the support-sensitive
        # ratio and Hellinger checks rely on.
        plus = reweight(p, lambda x: 1.0 + min(1.0, max(-1.0, a * (x - mu_p))))
        minus = reweight(p, lambda x: 1.0 + min(1.0, max(-1.0, -a * (x - mu_p))))
        if plus.total_mass >= minus.total_mass:
            sign, chosen = Sign.PLUS, plus
        else:
            sign, chosen = Sign.MINUS, minus
        q, b = normalize(chosen)

    ratio = density_ratio(q, p)
    diagnostics = {
        "epsilon_p": eps_p,
        "mu_p": mu_p,
        "mu_q": mean(q),
        "mean_shift": abs(mean(q) - mu_p),
        "sup_ratio": ratio.sup_ratio,
        "hellinger_sq": hellinger_sq(p, q),
    }
    return AdversaryResult(
        q=q,
        case=case,
        lam=lam,
        a=a,
        sign=sign,
        b=b,
        diagnostics=diagnostics,
        regime=flags,
        saturated=saturated,
    )


def skew_measures(
    p: AtomicDistribution, a: float
) -> tuple[WeightedMeasure, WeightedMeasure]:
    """The raw skewed measures (positive and negative slope) around ``p``'s
    mean, before selection and rescaling.  Exposed for diagnostics and
    property checks; their total masses sum to 2."""
    mu = mean(p)
    plus = reweight(p, lambda x: 1.0 + min(1.0, max(-1.0, a * (x - mu))))
    minus = reweight(p, lambda x: 1.0 + min(1.0, max(-1.0, -a * (x - mu))))
    return plus, minus
