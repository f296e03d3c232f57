"""Experiment harness: seeded sampling, brute-force oracles, claim
verifiers, and Monte-Carlo benchmarks.

Randomness contract
-------------------
Every trial draws from its own counter-based stream, a Philox generator
keyed by ``SeedSequence([seed, trial_index])``.  Trials therefore never share
state, results are independent of worker count and scheduling, and identical
configs reproduce bitwise-identical reports.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .adversary import RegimeFlags, construct_q, density_ratio, regime_flags
from .distribution import (
    AtomicDistribution,
    TrimResult,
    epsilon,
    mean,
    standard_trim,
    variance,
)
from .divergence import hellinger_sq
from .errors import DegenerateError, DomainError, InsufficientSamplesError, RegimeError
from .estimators import SampleBatch, group_count, median_of_means

# Assertion slacks, folded into the reported bounds.
MEAN_SHIFT_TOL = 1e-9
HELLINGER_TOL = 1e-12
RATIO_TOL = 1e-12
VARIANCE_TOL = 1e-9
ERROR_TRANSFER_TOL = 1e-9
SHIFT_UPPER_TOL = 1e-9

ERROR_TRANSFER_FACTOR = 100.0
SAMPLE_SHRINK = 3.0  # error transfer is checked at n / SAMPLE_SHRINK


@dataclass(frozen=True)
class TrialConfig:
    """Seeded Monte-Carlo configuration."""

    n: int
    delta: float
    trials: int
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n!r}")
        if not 0.0 < self.delta < 1.0:
            raise DomainError(f"delta must lie in (0, 1), got {self.delta!r}")
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials!r}")
        if self.seed < 0:
            raise DomainError(f"seed must be a nonnegative integer, got {self.seed!r}")


@dataclass(frozen=True)
class Condition:
    name: str
    measured: float
    bound: float
    direction: str  # "ge" or "le"

    @property
    def passed(self) -> bool:
        if self.direction == "ge":
            return self.measured >= self.bound
        return self.measured <= self.bound

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "measured": self.measured,
            "bound": self.bound,
            "direction": self.direction,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class VerificationReport:
    """Pass/fail record for one verified claim.

    ``passed`` is the conjunction of the condition checks (vacuously true on
    a degenerate input, which carries its own flag so callers can refuse it).
    """

    claim: str
    conditions: tuple[Condition, ...]
    regime: RegimeFlags
    degenerate: bool = False
    meta: dict | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "conditions": [c.to_dict() for c in self.conditions],
            "pass": self.passed,
            "degenerate": self.degenerate,
            "regime": self.regime.to_dict(),
            "meta": self.meta or {},
        }


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def trial_stream(seed: int, trial: int) -> np.random.Generator:
    """Independent counter-based stream for one trial."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))


def sample(
    d: AtomicDistribution, count: int, stream: np.random.Generator
) -> SampleBatch:
    """Inverse-CDF draws: a uniform in [0, 1) selects the atom whose
    cumulative-mass interval contains it."""
    if count < 1:
        raise DomainError(f"sample count must be >= 1, got {count!r}")
    cum = np.cumsum(d.ws)
    cum[-1] = 1.0  # close the last interval against cumulative rounding
    u = stream.random(count)
    idx = np.searchsorted(cum, u, side="right")
    return SampleBatch(d.xs[idx])


# ---------------------------------------------------------------------------
# Brute-force trimming oracle
# ---------------------------------------------------------------------------


def brute_force_trim(d: AtomicDistribution, t: float) -> TrimResult:
    """Reference trimming by exhaustive radius scan; small instances only.

    Enumerates every distinct atom distance from the mean, takes the first
    whose kept mass reaches ``1 - t`` by linear scan, and applies the same
    common-fraction boundary rule as the production path.
    """
    if d.num_atoms > 64:
        raise DomainError("oracle accepts at most 64 atoms")
    if not 0.0 <= t < 1.0:
        raise DomainError(f"trim fraction must lie in [0, 1), got {t!r}")
    atoms = d.atoms
    mu = math.fsum(w * x for x, w in atoms)
    dists = [abs(x - mu) for x, _ in atoms]
    if t == 0.0:
        return TrimResult(d, max(dists), np.ones(len(atoms)), 0.0)
    target = 1.0 - t
    radius = None
    for cand in sorted(set(dists)):
        kept = math.fsum(w for (x, w), dd in zip(atoms, dists) if dd <= cand)
        if kept >= target:
            radius = cand
            break
    if radius is None:
        radius = max(dists)
    inside_mass = math.fsum(w for (x, w), dd in zip(atoms, dists) if dd < radius)
    boundary_mass = math.fsum(w for (x, w), dd in zip(atoms, dists) if dd == radius)
    frac = min(max((target - inside_mass) / boundary_mass, 0.0), 1.0)
    fractions = [1.0 if dd < radius else frac if dd == radius else 0.0 for dd in dists]
    kept_atoms = [
        (x, w * f / target) for (x, w), f in zip(atoms, fractions) if w * f > 0.0
    ]
    trimmed = AtomicDistribution([x for x, _ in kept_atoms], [w for _, w in kept_atoms])
    return TrimResult(trimmed, radius, np.array(fractions), float(t))


# ---------------------------------------------------------------------------
# Claim verifiers
# ---------------------------------------------------------------------------


def _require_regime(n: float, delta: float, override_regime: bool) -> RegimeFlags:
    flags = regime_flags(n, delta)
    if not flags.ok and not override_regime:
        raise RegimeError(
            f"(n={n!r}, delta={delta!r}) is outside the asserted regime "
            f"(delta <= 0.1 and log(1/delta)/n <= 0.01); pass "
            f"override_regime=True to proceed without assertions",
            delta_ok=flags.delta_ok,
            ratio_ok=flags.ratio_ok,
        )
    return flags


def _hellinger_condition(
    p: AtomicDistribution, q: AtomicDistribution, n: int, delta: float
) -> Condition:
    # Computed inline rather than through the predicate so that exploratory
    # out-of-regime runs (delta >= 1/4, where the predicate refuses) still
    # yield a report; in-regime the numbers are identical.
    one_minus = 1.0 - hellinger_sq(p, q)
    lhs = math.log(one_minus) if one_minus > 0.0 else float("-inf")
    rhs = math.log(4.0 * delta) / (2.0 * n)
    return Condition("hellinger_closeness", lhs, rhs - HELLINGER_TOL, "ge")


def pair_conditions(
    p: AtomicDistribution, q: AtomicDistribution, n: int, delta: float
) -> tuple[Condition, ...]:
    """The separation/indistinguishability conditions for an explicit pair."""
    eps_p = epsilon(p, n, delta)
    shift_measured = abs(mean(q) - mean(p))
    ratio = density_ratio(q, p)
    var_p = variance(p)
    var_q = variance(q)
    return (
        Condition(
            "mean_separation",
            shift_measured,
            eps_p / 32.0 - MEAN_SHIFT_TOL,
            "ge",
        ),
        _hellinger_condition(p, q, n, delta),
        Condition("density_ratio", ratio.sup_ratio, 2.0 + RATIO_TOL, "le"),
        Condition(
            "variance_doubling",
            var_q,
            2.0 * var_p + VARIANCE_TOL * (1.0 + var_p),
            "le",
        ),
        Condition(
            "estimator_separation",
            shift_measured,
            2.0 * (eps_p / 64.0) - MEAN_SHIFT_TOL,
            "ge",
        ),
    )


def _degenerate_report(claim: str, flags: RegimeFlags, exc: Exception) -> VerificationReport:
    return VerificationReport(
        claim=claim,
        conditions=(),
        regime=flags,
        degenerate=True,
        meta={"reason": str(exc)},
    )


def verify_theorem(
    p: AtomicDistribution,
    n: int,
    delta: float,
    *,
    override_regime: bool = False,
) -> VerificationReport:
    """Construct the partner of ``p`` and check the separation, Hellinger,
    density-ratio, and variance guarantees at their stated tolerances."""
    flags = _require_regime(n, delta, override_regime)
    try:
        res = construct_q(p, n, delta)
    except DegenerateError as exc:
        return _degenerate_report("indistinguishable_pair", flags, exc)
    conditions = pair_conditions(p, res.q, n, delta)
    return VerificationReport(
        claim="indistinguishable_pair",
        conditions=conditions,
        regime=flags,
        meta=res.meta_dict(),
    )


def neighborhood_conditions(
    p: AtomicDistribution, q: AtomicDistribution, n: int, delta: float
) -> tuple[Condition, ...]:
    eps_p = epsilon(p, n, delta)
    eps_q_shrunk = epsilon(q, n / SAMPLE_SHRINK, delta)
    ratio = density_ratio(q, p)
    return (
        Condition(
            "error_transfer",
            eps_q_shrunk,
            ERROR_TRANSFER_FACTOR * eps_p + ERROR_TRANSFER_TOL,
            "le",
        ),
        _hellinger_condition(p, q, n, delta),
        Condition(
            "mean_shift_within",
            abs(mean(q) - mean(p)),
            eps_p + SHIFT_UPPER_TOL,
            "le",
        ),
        Condition("density_ratio", ratio.sup_ratio, 2.0 + RATIO_TOL, "le"),
    )


def verify_neighborhood(
    p: AtomicDistribution,
    n: int,
    delta: float,
    *,
    override_regime: bool = False,
) -> VerificationReport:
    """Check that the constructed partner lies in the neighborhood of ``p``:
    bounded error transfer at a third of the sample budget, Hellinger
    closeness, mean shift within the error bound, and density ratio at most 2.
    The composite bound ``min(eps(n/3), eps(n))`` is recorded for both
    endpoints."""
    flags = _require_regime(n, delta, override_regime)
    try:
        res = construct_q(p, n, delta)
    except DegenerateError as exc:
        return _degenerate_report("neighborhood_membership", flags, exc)
    conditions = neighborhood_conditions(p, res.q, n, delta)
    meta = res.meta_dict()
    meta["composite_bound_p"] = min(
        epsilon(p, n / SAMPLE_SHRINK, delta), epsilon(p, n, delta)
    )
    meta["composite_bound_q"] = min(
        epsilon(res.q, n / SAMPLE_SHRINK, delta), epsilon(res.q, n, delta)
    )
    return VerificationReport(
        claim="neighborhood_membership",
        conditions=conditions,
        regime=flags,
        meta=meta,
    )


# ---------------------------------------------------------------------------
# Monte-Carlo benchmarks
# ---------------------------------------------------------------------------


def _run_trials(total: int, fn, out: np.ndarray, workers: int) -> None:
    """Fill ``out[t] = fn(t)``; chunked across threads, reduced by index."""
    if workers <= 1:
        for t in range(total):
            out[t] = fn(t)
        return

    def run_chunk(bounds):
        lo, hi = bounds
        for t in range(lo, hi):
            out[t] = fn(t)

    step = -(-total // workers)
    chunks = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(run_chunk, chunks))


def bench_mom(p: AtomicDistribution, cfg: TrialConfig, workers: int = 1) -> dict:
    """Measure how often the median-of-means misses its error budget
    ``|mu - mu*| + 3 sigma* sqrt(4.5 log(1/delta) / n)``; passes when the
    failure rate stays within ``delta`` plus a 3-sigma binomial half-width."""
    k = group_count(cfg.delta)
    if cfg.n < k:
        raise InsufficientSamplesError(k, cfg.n)
    core = standard_trim(p, cfg.n, cfg.delta).trimmed
    mu_p = mean(p)
    bound = abs(mu_p - mean(core)) + 3.0 * math.sqrt(
        variance(core)
    ) * math.sqrt(4.5 * math.log(1.0 / cfg.delta) / cfg.n)

    fails = np.zeros(cfg.trials, dtype=bool)

    def one_trial(t: int) -> bool:
        stream = trial_stream(cfg.seed, t)
        batch = sample(p, cfg.n, stream)
        est = median_of_means(batch, cfg.delta)
        return abs(est - mu_p) > bound

    _run_trials(cfg.trials, one_trial, fails, workers)
    failure_rate = int(fails.sum()) / cfg.trials
    ci_halfwidth = 3.0 * math.sqrt(cfg.delta * (1.0 - cfg.delta) / cfg.trials)
    return {
        "kind": "bench_mom",
        "n": cfg.n,
        "delta": cfg.delta,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "mu_p": mu_p,
        "bound": bound,
        "failure_rate": failure_rate,
        "ci_halfwidth": ci_halfwidth,
        "pass": failure_rate <= cfg.delta + ci_halfwidth,
    }


def _log_ratio_tables(
    p: AtomicDistribution, q: AtomicDistribution
) -> tuple[np.ndarray, np.ndarray]:
    """Per-atom log-likelihood ratios log(q/p), aligned with each source's
    atoms.  Missing mass yields -inf (drawn only under p) or +inf (only
    under q)."""
    p_masses = dict(zip(map(float, p.xs), map(float, p.ws)))
    q_masses = dict(zip(map(float, q.xs), map(float, q.ws)))

    def ratio(wq: float, wp: float) -> float:
        if wq == 0.0:
            return float("-inf")
        if wp == 0.0:
            return float("inf")
        return math.log(wq / wp)

    table_p = np.array([ratio(q_masses.get(float(x), 0.0), float(w)) for x, w in zip(p.xs, p.ws)])
    table_q = np.array([ratio(float(w), p_masses.get(float(x), 0.0)) for x, w in zip(q.xs, q.ws)])
    return table_p, table_q


def lr_test_error(
    p: AtomicDistribution,
    q: AtomicDistribution,
    cfg: TrialConfig,
    workers: int = 1,
) -> dict:
    """Equal-prior error of the likelihood-ratio test between ``p`` and ``q``.

    The first half of the trials draws from ``p``, the second from ``q``;
    each trial decides ``q`` when the summed log ratio is positive, breaking
    exact ties with an unbiased coin from the trial's stream.  Passes when
    the empirical error is at least ``delta`` minus a 3-sigma half-width, the
    direction guaranteed for indistinguishable pairs.
    """
    if cfg.trials % 2 != 0:
        raise DomainError("trial count must be even (half per source)")
    table_p, table_q = _log_ratio_tables(p, q)
    half = cfg.trials // 2

    def lam_of(values: np.ndarray) -> float:
        if np.all(np.isfinite(values)):
            return math.fsum(values.tolist())
        return float(np.sum(values))

    cum_p = np.cumsum(p.ws)
    cum_p[-1] = 1.0
    cum_q = np.cumsum(q.ws)
    cum_q[-1] = 1.0

    wrong = np.zeros(cfg.trials, dtype=bool)

    def one_trial(t: int) -> bool:
        from_p = t < half
        cum, table = (cum_p, table_p) if from_p else (cum_q, table_q)
        stream = trial_stream(cfg.seed, t)
        idx = np.searchsorted(cum, stream.random(cfg.n), side="right")
        lam = lam_of(table[idx])
        if lam == 0.0:
            decide_q = stream.random() < 0.5
        else:
            decide_q = lam > 0.0
        return decide_q if from_p else not decide_q

    _run_trials(cfg.trials, one_trial, wrong, workers)
    type_i = int(wrong[:half].sum()) / half
    type_ii = int(wrong[half:].sum()) / half
    empirical_error = 0.5 * (type_i + type_ii)
    ci_halfwidth = 3.0 * math.sqrt(0.25 / cfg.trials)
    return {
        "kind": "lr_test_error",
        "n": cfg.n,
        "delta": cfg.delta,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "type_i": type_i,
        "type_ii": type_ii,
        "empirical_error": empirical_error,
        "ci_halfwidth": ci_halfwidth,
        "delta_floor": cfg.delta - ci_halfwidth,
        "pass": empirical_error >= cfg.delta - ci_halfwidth,
    }


def asymptotic_scan(
    p: AtomicDistribution, delta: float, n_list: list[int]
) -> list[dict]:
    """Tabulate the error bound and its normalized form
    ``epsilon * sqrt(n / log(1/delta))`` across sample counts."""
    log_term = math.log(1.0 / delta)
    rows = []
    for n in n_list:
        eps = epsilon(p, n, delta)
        rows.append(
            {
                "n": n,
                "delta": delta,
                "epsilon": eps,
                "normalized": eps * math.sqrt(n / log_term),
            }
        )
    return rows
