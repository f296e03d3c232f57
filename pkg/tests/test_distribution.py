import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from advmean import (
    AtomicDistribution,
    DegenerateError,
    DomainError,
    epsilon,
    mean,
    mixture,
    normalize,
    reweight,
    scale,
    shift,
    standard_trim,
    std,
    trim,
    variance,
)
from advmean.distribution import (
    distribution_from_dict,
    distribution_to_dict,
    load_distribution,
    save_distribution,
)

from conftest import atomic_distributions, symmetric_distributions


class TestConstruction:
    def test_sorts_and_merges_duplicates(self):
        d = AtomicDistribution([1.0, -1.0, 1.0], [0.25, 0.5, 0.25])
        assert d.atoms == [(-1.0, 0.5), (1.0, 0.5)]

    def test_rejects_bad_mass_sum(self):
        with pytest.raises(DomainError):
            AtomicDistribution([0.0, 1.0], [0.5, 0.6])

    def test_rejects_nonpositive_mass(self):
        with pytest.raises(DomainError):
            AtomicDistribution([0.0, 1.0], [1.0, 0.0])

    def test_rejects_empty(self):
        with pytest.raises(DomainError):
            AtomicDistribution([], [])

    def test_immutable_arrays(self, two_point):
        with pytest.raises(ValueError):
            two_point.ws[0] = 0.9


class TestMoments:
    def test_mean_point_mass(self):
        assert mean(AtomicDistribution([0.0], [1.0])) == 0.0

    def test_mean_symmetric(self, two_point):
        assert mean(two_point) == 0.0

    def test_mean_weighted(self):
        d = AtomicDistribution([0.0, 10.0], [0.9, 0.1])
        assert mean(d) == pytest.approx(1.0, abs=1e-15)

    def test_variance_degenerate(self):
        assert variance(AtomicDistribution([3.5], [1.0])) == 0.0

    def test_variance_unit_two_point(self, two_point):
        assert variance(two_point) == pytest.approx(1.0, abs=1e-15)

    def test_variance_weighted(self):
        # 0.9 * 1 + 0.1 * 81 around the mean 1
        d = AtomicDistribution([0.0, 10.0], [0.9, 0.1])
        assert variance(d) == pytest.approx(9.0, rel=1e-14)

    @given(atomic_distributions(), st.integers(min_value=-40, max_value=40))
    def test_variance_translation_invariant(self, d, c_scaled):
        c = 0.25 * c_scaled
        assert variance(shift(d, c)) == pytest.approx(
            variance(d), rel=1e-10, abs=1e-12
        )


class TestTrim:
    def test_symmetric_boundary_split(self, two_point):
        res = trim(two_point, 0.1)
        assert res.radius == 1.0
        assert res.trimmed == two_point  # proportional split renormalizes back
        assert res.kept_fractions == pytest.approx([0.9, 0.9], abs=1e-15)
        assert res.trimmed_mass == 0.1

    def test_zero_is_identity(self, asym_two_point):
        res = trim(asym_two_point, 0.0)
        assert res.trimmed == asym_two_point
        assert np.all(res.kept_fractions == 1.0)
        assert res.trimmed_mass == 0.0

    def test_far_atom_fully_trimmed(self, asym_two_point):
        res = trim(asym_two_point, 0.00135)
        assert res.radius == 1.0  # mean is 1, near atom at distance 1
        assert res.trimmed.atoms == [(0.0, 1.0)]
        assert res.kept_fractions[0] == pytest.approx(0.99865 / 0.999, rel=1e-14)
        assert res.kept_fractions[1] == 0.0

    def test_domain(self, two_point):
        with pytest.raises(DomainError):
            trim(two_point, 1.0)
        with pytest.raises(DomainError):
            trim(two_point, -0.01)

    @given(atomic_distributions(min_atoms=2), st.floats(min_value=0.001, max_value=0.9))
    @settings(max_examples=200)
    def test_kept_mass_and_support(self, d, t):
        res = trim(d, t)
        mu = mean(d)
        # every kept atom lies within the radius
        assert np.all(np.abs(res.trimmed.xs - mu) <= res.radius)
        kept = math.fsum((d.ws * res.kept_fractions).tolist())
        assert kept == pytest.approx(1.0 - t, abs=1e-12)
        # fraction pattern: 1 strictly inside, 0 strictly outside
        dist = np.abs(d.xs - mu)
        assert np.all(res.kept_fractions[dist < res.radius] == 1.0)
        assert np.all(res.kept_fractions[dist > res.radius] == 0.0)


class TestStandardTrim:
    def test_two_point(self, two_point):
        res = standard_trim(two_point, 1000, 0.05)
        assert res.trimmed_mass == pytest.approx(
            0.45 * math.log(20.0) / 1000, rel=1e-15
        )
        assert mean(res.trimmed) == 0.0
        assert std(res.trimmed) == 1.0

    def test_point_mass(self):
        d = AtomicDistribution([2.0], [1.0])
        assert standard_trim(d, 50, 0.1).trimmed == d

    def test_asymmetric_collapses(self, asym_two_point):
        res = standard_trim(asym_two_point, 1000, 0.05)
        assert res.trimmed.atoms == [(0.0, 1.0)]
        assert res.radius == 1.0

    def test_too_aggressive(self, two_point):
        with pytest.raises(DomainError):
            standard_trim(two_point, 1, 1e-6)

    @given(symmetric_distributions())
    @settings(max_examples=150)
    def test_symmetry_preserved(self, d):
        res = standard_trim(d, 1000, 0.05)
        assert abs(mean(d) - mean(res.trimmed)) <= 1e-12
        xs, ws = res.trimmed.xs, res.trimmed.ws
        assert np.array_equal(xs, -xs[::-1])
        assert np.array_equal(ws, ws[::-1])


class TestEpsilon:
    def test_two_point_closed_form(self, two_point):
        expected = math.sqrt(4.5 * math.log(20.0) / 1000)
        assert epsilon(two_point, 1000, 0.05) == pytest.approx(expected, rel=1e-15)

    def test_point_mass_is_zero(self):
        assert epsilon(AtomicDistribution([7.0], [1.0]), 1000, 0.05) == 0.0

    def test_asymmetric_is_mean_gap(self, asym_two_point):
        assert epsilon(asym_two_point, 1000, 0.05) == pytest.approx(1.0, abs=1e-12)

    @given(
        atomic_distributions(min_atoms=2),
        st.sampled_from([-2.0, -0.5, 0.5, 2.25, 3.0]),
        st.sampled_from([-7.5, 0.0, 3.25]),
    )
    @settings(max_examples=150)
    def test_shift_scale_equivariance(self, d, s, c):
        base = epsilon(d, 1000, 0.05)
        moved = epsilon(shift(scale(d, s), c), 1000, 0.05)
        assert moved == pytest.approx(abs(s) * base, rel=1e-10, abs=1e-12)


class TestMixture:
    def test_endpoints(self, two_point, asym_two_point):
        assert mixture(two_point, asym_two_point, 1.0) is two_point
        assert mixture(two_point, asym_two_point, 0.0) is asym_two_point

    def test_worked_example(self, asym_two_point):
        core = AtomicDistribution([0.0], [1.0])
        q = mixture(asym_two_point, core, 0.75)
        assert q.atoms[0] == (0.0, pytest.approx(0.99925, abs=1e-15))
        assert q.atoms[1] == (1000.0, pytest.approx(0.00075, abs=1e-18))

    def test_domain(self, two_point):
        with pytest.raises(DomainError):
            mixture(two_point, two_point, 1.5)

    @given(atomic_distributions(), st.floats(min_value=0.0, max_value=1.0))
    def test_self_mixture_identity(self, d, lam):
        assert mixture(d, d, lam) == d


class TestReweight:
    def test_identity_weight(self, two_point):
        m = reweight(two_point, lambda x: 1.0)
        assert m.total_mass == 1.0
        assert np.array_equal(m.xs, two_point.xs)

    def test_clamp_inactive(self, two_point):
        a = 0.5
        m = reweight(two_point, lambda x: 1.0 + min(1.0, max(-1.0, a * x)))
        assert m.ws.tolist() == [0.25, 0.75]
        assert m.total_mass == 1.0

    def test_annihilating_weight(self, two_point):
        m = reweight(two_point, lambda x: 0.0)
        assert m.is_degenerate
        assert m.total_mass == 0.0
        with pytest.raises(DegenerateError):
            normalize(m)

    def test_negative_weight_rejected(self, two_point):
        with pytest.raises(DomainError):
            reweight(two_point, lambda x: x)  # negative at -1


class TestNormalize:
    def test_unit_measure(self, two_point):
        m = reweight(two_point, lambda x: 1.0)
        d, b = normalize(m)
        assert b == 1.0
        assert d == two_point

    def test_halving(self, two_point):
        m = reweight(two_point, lambda x: 2.0)
        d, b = normalize(m)
        assert b == 0.5
        assert d == two_point

    def test_skewed_two_point_balances(self, two_point):
        a = 0.5
        m = reweight(two_point, lambda x: 1.0 + min(1.0, max(-1.0, a * x)))
        d, b = normalize(m)
        assert b == 1.0
        assert d.ws.tolist() == [0.25, 0.75]


class TestAffine:
    def test_shift_point(self):
        assert shift(AtomicDistribution([0.0], [1.0]), 5.0).atoms == [(5.0, 1.0)]

    def test_negative_scale_resorts(self, two_point):
        d = scale(two_point, -2.0)
        assert d.atoms == [(-2.0, 0.5), (2.0, 0.5)]

    def test_zero_scale_rejected(self, two_point):
        with pytest.raises(DomainError):
            scale(two_point, 0.0)

    @given(atomic_distributions())
    def test_group_action_roundtrip(self, d):
        # powers of two and integers keep the arithmetic exact
        assert shift(scale(scale(shift(d, 3.0), 4.0), 0.25), -3.0) == d


class TestFileFormat:
    def test_round_trip(self, tmp_path, asym_two_point):
        path = tmp_path / "d.json"
        save_distribution(asym_two_point, path)
        assert load_distribution(path) == asym_two_point

    def test_loader_sorts_and_renormalizes(self, tmp_path):
        path = tmp_path / "d.json"
        drift = 1e-10
        payload = {
            "atoms": [
                {"x": 1.0, "w": 0.5 + drift},
                {"x": -1.0, "w": 0.25},
                {"x": -1.0, "w": 0.25},
            ]
        }
        path.write_text(json.dumps(payload))
        d = load_distribution(path)
        assert d.num_atoms == 2
        assert math.fsum(d.ws.tolist()) == pytest.approx(1.0, abs=1e-12)

    def test_loader_rejects_large_drift(self):
        with pytest.raises(DomainError):
            distribution_from_dict({"atoms": [{"x": 0.0, "w": 0.9}]})

    def test_loader_rejects_missing_keys(self):
        with pytest.raises(DomainError):
            distribution_from_dict({"atoms": [{"x": 0.0}]})

    def test_dict_round_trip(self, two_point):
        assert distribution_from_dict(distribution_to_dict(two_point)) == two_point
