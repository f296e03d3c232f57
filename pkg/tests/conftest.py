"""Shared strategies and fixtures.

Generated distributions use grid positions (quarter-integers) and rational
masses so that near-tie pathologies of adversarial floats stay out of the
property tests; the invariants under test are about measure arithmetic, not
about resolving sub-ulp distance ties.
"""

import hypothesis.strategies as st
import pytest

from advmean import AtomicDistribution


@st.composite
def atomic_distributions(draw, min_atoms=1, max_atoms=10, span=50):
    n = draw(st.integers(min_value=min_atoms, max_value=max_atoms))
    grid = st.integers(min_value=-4 * span, max_value=4 * span)
    positions = draw(
        st.lists(grid, min_size=n, max_size=n, unique=True).map(sorted)
    )
    masses = draw(
        st.lists(st.integers(min_value=1, max_value=1000), min_size=n, max_size=n)
    )
    total = sum(masses)
    return AtomicDistribution(
        [0.25 * x for x in positions], [m / total for m in masses]
    )


@st.composite
def symmetric_distributions(draw, max_half_atoms=5, span=50):
    k = draw(st.integers(min_value=1, max_value=max_half_atoms))
    offsets = draw(
        st.lists(
            st.integers(min_value=1, max_value=4 * span),
            min_size=k,
            max_size=k,
            unique=True,
        ).map(sorted)
    )
    masses = draw(
        st.lists(st.integers(min_value=1, max_value=1000), min_size=k, max_size=k)
    )
    center_mass = draw(st.integers(min_value=0, max_value=1000))
    total = 2 * sum(masses) + center_mass
    xs = [-0.25 * o for o in reversed(offsets)]
    ws = [m / total for m in reversed(masses)]
    if center_mass:
        xs.append(0.0)
        ws.append(center_mass / total)
    xs.extend(0.25 * o for o in offsets)
    ws.extend(m / total for m in masses)
    return AtomicDistribution(xs, ws)


@pytest.fixture
def two_point():
    return AtomicDistribution([-1.0, 1.0], [0.5, 0.5])


@pytest.fixture
def asym_two_point():
    return AtomicDistribution([0.0, 1000.0], [0.999, 0.001])
