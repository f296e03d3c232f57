"""Finite atomic distributions on the real line.

Everything downstream works with probability measures supported on finitely
many points, so every integral is a finite sum and every density ratio is a
per-atom mass ratio.  This module provides the two value types
(:class:`AtomicDistribution` for unit mass, :class:`WeightedMeasure` for
arbitrary positive mass), moments, the radial trimming operation, the
trimming-based instance error bound, mixing, pointwise reweighting, affine
maps, and the JSON file format used by the CLI.

Numerical conventions
---------------------
- Sums of atom contributions (means, variances, kept mass) use ``math.fsum``,
  which rounds the exact sum once.  A symmetric distribution therefore has
  mean exactly ``0.0`` and trims symmetrically.
- Positions equal under ``==`` are merged at construction; no fuzzy matching
  is ever applied.
- Mass bookkeeping tolerance is 1e-12 absolute; the file loader accepts a
  1e-9 drift and renormalizes.

All values are immutable after construction and all operations are pure
functions, so everything here is safe to share across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .errors import DegenerateError, DomainError

MASS_TOL = 1e-12
LOAD_MASS_TOL = 1e-9

# The trimmed mass is TRIM_COEFF * log(1/delta) / n and the deviation term of
# the error bound is sigma * sqrt(ERROR_COEFF * log(1/delta) / n).
TRIM_COEFF = 0.45
ERROR_COEFF = 4.5


def _fsum(values: Iterable[float]) -> float:
    return math.fsum(values)


def _prepare_atoms(xs, ws) -> tuple[np.ndarray, np.ndarray]:
    """Sort positions, merge equal ones (masses add), validate positivity."""
    xs = np.asarray(xs, dtype=np.float64)
    ws = np.asarray(ws, dtype=np.float64)
    if xs.ndim != 1 or ws.ndim != 1 or xs.shape != ws.shape:
        raise DomainError("positions and masses must be 1-d arrays of equal length")
    if not np.all(np.isfinite(xs)) or not np.all(np.isfinite(ws)):
        raise DomainError("positions and masses must be finite")
    if np.any(ws <= 0.0):
        raise DomainError("masses must be strictly positive")
    order = np.argsort(xs, kind="stable")
    xs = xs[order]
    ws = ws[order]
    if xs.size > 1:
        keep = np.empty(xs.size, dtype=bool)
        keep[0] = True
        np.not_equal(xs[1:], xs[:-1], out=keep[1:])
        if not keep.all():
            idx = np.cumsum(keep) - 1
            merged = np.zeros(int(idx[-1]) + 1)
            np.add.at(merged, idx, ws)
            xs = xs[keep]
            ws = merged
    xs.flags.writeable = False
    ws.flags.writeable = False
    return xs, ws


@dataclass(frozen=True, eq=False)
class AtomicDistribution:
    """A probability measure on finitely many points.

    ``xs`` are strictly increasing positions, ``ws`` the matching masses;
    masses are strictly positive and sum to 1 within 1e-12.
    """

    xs: np.ndarray
    ws: np.ndarray

    def __init__(self, xs, ws):
        xs, ws = _prepare_atoms(xs, ws)
        if xs.size == 0:
            raise DomainError("a distribution needs at least one atom")
        total = _fsum(ws.tolist())
        if abs(total - 1.0) > MASS_TOL:
            raise DomainError(f"masses sum to {total!r}, expected 1 within {MASS_TOL}")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ws", ws)

    @property
    def num_atoms(self) -> int:
        return int(self.xs.size)

    @property
    def atoms(self) -> list[tuple[float, float]]:
        return [(float(x), float(w)) for x, w in zip(self.xs, self.ws)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, AtomicDistribution):
            return NotImplemented
        return np.array_equal(self.xs, other.xs) and np.array_equal(self.ws, other.ws)

    def __repr__(self) -> str:
        return f"AtomicDistribution({self.atoms!r})"


@dataclass(frozen=True, eq=False)
class WeightedMeasure:
    """Like :class:`AtomicDistribution` but with arbitrary total mass.

    May be empty (``total_mass == 0``), in which case it is degenerate and
    cannot be normalized.
    """

    xs: np.ndarray
    ws: np.ndarray
    total_mass: float

    def __init__(self, xs, ws):
        xs, ws = _prepare_atoms(xs, ws)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ws", ws)
        object.__setattr__(self, "total_mass", _fsum(ws.tolist()))

    @property
    def num_atoms(self) -> int:
        return int(self.xs.size)

    @property
    def is_degenerate(self) -> bool:
        return self.num_atoms == 0 or self.total_mass <= 0.0

    def scaled(self, factor: float) -> "WeightedMeasure":
        if factor <= 0.0:
            raise DomainError("scaling factor must be positive")
        return WeightedMeasure(self.xs, self.ws * factor)

    def __repr__(self) -> str:
        return f"WeightedMeasure(atoms={self.xs.size}, total_mass={self.total_mass!r})"


@dataclass(frozen=True)
class TrimResult:
    """Outcome of radial trimming.

    ``kept_fractions`` is aligned with the source atoms: 1 strictly inside
    the radius, 0 strictly outside, and a common fraction in [0, 1] on the
    (at most two) boundary atoms so the kept mass is exactly ``1 - t``.
    """

    trimmed: AtomicDistribution
    radius: float
    kept_fractions: np.ndarray
    trimmed_mass: float


def mean(d: AtomicDistribution | WeightedMeasure) -> float:
    """First moment, exactly rounded."""
    return _fsum((d.ws * d.xs).tolist())


def variance(d: AtomicDistribution) -> float:
    """Centered second moment via two passes (mean first, then deviations)."""
    mu = mean(d)
    dev = d.xs - mu
    return _fsum((d.ws * dev * dev).tolist())


def std(d: AtomicDistribution) -> float:
    return math.sqrt(max(variance(d), 0.0))


def trim(d: AtomicDistribution, t: float) -> TrimResult:
    """Condition ``d`` on the smallest symmetric interval around its mean
    holding at least ``1 - t`` mass.

    The radius is the smallest atom distance whose cumulative mass reaches
    ``1 - t``; atoms at exactly that distance are kept with one common
    fraction chosen so the kept mass equals ``1 - t``, and the result is
    renormalized to unit mass.  ``t == 0`` returns the input unchanged.
    """
    if not 0.0 <= t < 1.0:
        raise DomainError(f"trim fraction must lie in [0, 1), got {t!r}")
    mu = mean(d)
    dist = np.abs(d.xs - mu)
    if t == 0.0:
        return TrimResult(
            trimmed=d,
            radius=float(dist.max()),
            kept_fractions=np.ones(d.num_atoms),
            trimmed_mass=0.0,
        )
    target = 1.0 - t
    order = np.argsort(dist, kind="stable")
    cum = np.cumsum(d.ws[order])
    k = int(np.searchsorted(cum, target, side="left"))
    k = min(k, d.num_atoms - 1)  # guard against cum[-1] rounding below 1
    radius = float(dist[order[k]])

    inside = dist < radius
    boundary = dist == radius
    mass_inside = _fsum(d.ws[inside].tolist())
    mass_boundary = _fsum(d.ws[boundary].tolist())
    frac = (target - mass_inside) / mass_boundary
    frac = min(max(frac, 0.0), 1.0)

    kept_fractions = np.where(inside, 1.0, np.where(boundary, frac, 0.0))
    kept = d.ws * kept_fractions
    mask = kept > 0.0
    trimmed = AtomicDistribution(d.xs[mask], kept[mask] / target)
    return TrimResult(trimmed, radius, kept_fractions, float(t))


def trim_fraction(n: float, delta: float) -> float:
    """The standard trimmed mass ``TRIM_COEFF * log(1/delta) / n``.

    ``n`` may be any positive real; fractional values arise when the error
    bound is evaluated at a scaled-down sample count.
    """
    if not n > 0:
        raise DomainError(f"sample count must be positive, got {n!r}")
    if not 0.0 < delta < 1.0:
        raise DomainError(f"failure probability must lie in (0, 1), got {delta!r}")
    return TRIM_COEFF * math.log(1.0 / delta) / n


def standard_trim(d: AtomicDistribution, n: float, delta: float) -> TrimResult:
    """Trim the standard fraction of mass for the given sample budget."""
    t = trim_fraction(n, delta)
    if t >= 1.0:
        raise DomainError(
            f"trimmed mass {t!r} >= 1 (n={n!r}, delta={delta!r} is too aggressive)"
        )
    return trim(d, t)


def epsilon(d: AtomicDistribution, n: float, delta: float) -> float:
    """Instance error bound: mean gap to the trimmed core plus its scaled
    deviation term, ``|mu - mu*| + sigma* * sqrt(ERROR_COEFF * log(1/delta) / n)``.
    """
    core = standard_trim(d, n, delta).trimmed
    gap = abs(mean(d) - mean(core))
    rate = math.sqrt(ERROR_COEFF * math.log(1.0 / delta) / n)
    return gap + std(core) * rate


def mixture(
    d1: AtomicDistribution, d2: AtomicDistribution, lam: float
) -> AtomicDistribution:
    """Convex combination ``lam * d1 + (1 - lam) * d2`` on the union support.

    Endpoints short-circuit to the inputs, and shared positions interpolate
    as ``w2 + lam * (w1 - w2)`` so mixing a distribution with itself returns
    it bitwise.
    """
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"mixture weight must lie in [0, 1], got {lam!r}")
    if lam == 0.0:
        return d2
    if lam == 1.0:
        return d1
    masses: dict[float, float] = {float(x): 0.0 for x in d1.xs}
    for x in d2.xs:
        masses.setdefault(float(x), 0.0)
    w1 = dict(zip(map(float, d1.xs), map(float, d1.ws)))
    w2 = dict(zip(map(float, d2.xs), map(float, d2.ws)))
    for x in masses:
        a = w1.get(x, 0.0)
        b = w2.get(x, 0.0)
        masses[x] = b + lam * (a - b)
    xs = sorted(masses)
    return AtomicDistribution(xs, [masses[x] for x in xs])


def reweight(
    d: AtomicDistribution, f: Callable[[float], float]
) -> WeightedMeasure:
    """Multiply each atom's mass by ``f(position)``; ``f`` must be
    nonnegative and finite on the support.  Zero-mass atoms are dropped, so
    the result may be empty (degenerate)."""
    factors = np.array([float(f(float(x))) for x in d.xs])
    if not np.all(np.isfinite(factors)):
        raise DomainError("weight function produced a non-finite value")
    if np.any(factors < 0.0):
        bad = float(d.xs[factors < 0.0][0])
        raise DomainError(f"weight function is negative at x={bad!r}")
    ws = d.ws * factors
    mask = ws > 0.0
    return WeightedMeasure(d.xs[mask], ws[mask])


def normalize(m: WeightedMeasure) -> tuple[AtomicDistribution, float]:
    """Rescale to unit mass; returns the distribution and the factor
    ``b = 1 / total_mass`` applied."""
    if m.is_degenerate:
        raise DegenerateError("cannot normalize a zero-mass measure")
    b = 1.0 / m.total_mass
    return AtomicDistribution(m.xs, m.ws / m.total_mass), b


def shift(d: AtomicDistribution, c: float) -> AtomicDistribution:
    """Translate every position by ``c``."""
    if not math.isfinite(c):
        raise DomainError("shift must be finite")
    return AtomicDistribution(d.xs + c, d.ws)


def scale(d: AtomicDistribution, s: float) -> AtomicDistribution:
    """Multiply every position by ``s != 0`` (re-sorted for negative ``s``)."""
    if s == 0.0 or not math.isfinite(s):
        raise DomainError("scale factor must be finite and nonzero")
    return AtomicDistribution(d.xs * s, d.ws)


# ---------------------------------------------------------------------------
# File format: {"atoms": [{"x": number, "w": number}, ...]}.  Atoms need not
# be sorted on disk; the loader sorts, merges exact duplicates, accepts a
# 1e-9 drift in the mass sum, and renormalizes.
# ---------------------------------------------------------------------------


def distribution_from_dict(payload: dict) -> AtomicDistribution:
    try:
        entries = payload["atoms"]
        xs = [float(entry["x"]) for entry in entries]
        ws = [float(entry["w"]) for entry in entries]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed distribution payload: {exc}") from exc
    if not xs:
        raise DomainError("distribution file holds no atoms")
    xs_arr, ws_arr = _prepare_atoms(xs, ws)
    total = _fsum(ws_arr.tolist())
    if abs(total - 1.0) > LOAD_MASS_TOL:
        raise DomainError(
            f"masses sum to {total!r}, more than {LOAD_MASS_TOL} away from 1"
        )
    return AtomicDistribution(xs_arr, ws_arr / total)


def distribution_to_dict(d: AtomicDistribution) -> dict:
    return {"atoms": [{"x": float(x), "w": float(w)} for x, w in zip(d.xs, d.ws)]}


def load_distribution(path) -> AtomicDistribution:
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    return distribution_from_dict(payload)


def save_distribution(d: AtomicDistribution, path, extra: dict | None = None) -> None:
    payload = distribution_to_dict(d)
    if extra:
        payload.update(extra)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
