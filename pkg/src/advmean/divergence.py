"""Squared Hellinger distance, Bhattacharyya coefficient, and the
sample-complexity indistinguishability predicate.

Positions are matched exactly: two measures share support only where their
atom positions are equal under ``==``.  Distributions meant to share support
must therefore be built on a common grid.  Both functions accept unit
distributions and non-unit measures; for non-unit measures the squared
Hellinger value may exceed 1 (extended definition).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .distribution import AtomicDistribution, WeightedMeasure
from .errors import DomainError

Measure = AtomicDistribution | WeightedMeasure


@dataclass(frozen=True)
class HellingerReport:
    """Outcome of the n-sample indistinguishability test.

    ``indistinguishable`` holds when ``log(1 - h_sq) >= rhs`` with
    ``rhs = log(4 * delta) / (2 * n)``.  ``log_one_minus`` is ``-inf`` when
    the squared distance reaches 1.
    """

    h_sq: float
    log_one_minus: float
    rhs: float
    indistinguishable: bool

    def to_dict(self) -> dict:
        return {
            "h_sq": self.h_sq,
            "log_one_minus": self.log_one_minus,
            "rhs": self.rhs,
            "indistinguishable": self.indistinguishable,
        }


def _merged_masses(p: Measure, q: Measure):
    """Yield (p-mass, q-mass) across the union of the two supports."""
    xs_p, ws_p = p.xs, p.ws
    xs_q, ws_q = q.xs, q.ws
    i = j = 0
    while i < xs_p.size and j < xs_q.size:
        if xs_p[i] == xs_q[j]:
            yield float(ws_p[i]), float(ws_q[j])
            i += 1
            j += 1
        elif xs_p[i] < xs_q[j]:
            yield float(ws_p[i]), 0.0
            i += 1
        else:
            yield 0.0, float(ws_q[j])
            j += 1
    for k in range(i, xs_p.size):
        yield float(ws_p[k]), 0.0
    for k in range(j, xs_q.size):
        yield 0.0, float(ws_q[k])


def hellinger_sq(p: Measure, q: Measure) -> float:
    """``0.5 * sum((sqrt(p_i) - sqrt(q_i))^2)`` over the union support."""
    terms = [
        (math.sqrt(wp) - math.sqrt(wq)) ** 2 for wp, wq in _merged_masses(p, q)
    ]
    return 0.5 * math.fsum(terms)


def bhattacharyya(p: Measure, q: Measure) -> float:
    """``sum(sqrt(p_i * q_i))`` over the shared positions; equals
    ``1 - hellinger_sq`` for unit inputs."""
    terms = [math.sqrt(wp * wq) for wp, wq in _merged_masses(p, q) if wp and wq]
    return math.fsum(terms)


def indistinguishable(
    p: Measure, q: Measure, n: int, delta: float
) -> HellingerReport:
    """Decide whether no n-sample test can separate ``p`` from ``q`` with
    failure probability ``delta``.

    Requires ``delta < 1/4`` so the right-hand side ``log(4*delta)/(2n)`` is
    negative and the predicate is meaningful.
    """
    if not 0.0 < delta < 0.25:
        raise DomainError(
            f"predicate needs delta in (0, 1/4), got {delta!r}"
        )
    if not n >= 1:
        raise DomainError(f"sample count must be >= 1, got {n!r}")
    h_sq = hellinger_sq(p, q)
    one_minus = 1.0 - h_sq
    log_one_minus = math.log(one_minus) if one_minus > 0.0 else float("-inf")
    rhs = math.log(4.0 * delta) / (2.0 * n)
    return HellingerReport(
        h_sq=h_sq,
        log_one_minus=log_one_minus,
        rhs=rhs,
        indistinguishable=log_one_minus >= rhs,
    )
