import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from freejacobi.exceptions import DomainException, IntegrationException
from freejacobi.moments import hierarchy
from freejacobi.measures.spectral_measure import SpectralMeasure
from freejacobi.moments.catalan import arcsine_moments
from freejacobi.stationary.params import JacobiParams
from freejacobi.moments.hierarchy import (
	fixed_point_moments, generic_hierarchy_rhs, hierarchy_rhs, initial_moments, integrate_moments, m1_exact,
	relaxation_rate
)


def test_stationary_moments_are_a_fixed_point(half):
	m = initial_moments(half, 12)
	assert np.max(np.abs(hierarchy_rhs(m, half.theta, half.alpha))) < 1e-10


def test_generic_rhs_matches_vectorized(half):
	m = initial_moments(0.4, 10)
	generic = generic_hierarchy_rhs(list(m), half.theta, half.alpha)
	assert np.max(np.abs(np.array(generic) - hierarchy_rhs(m, half.theta, half.alpha))) < 1e-14


def test_fixed_point_is_exact_at_arcsine():
	assert fixed_point_moments(Fraction(1, 2), Fraction(1, 2), 8) == arcsine_moments(8)


def test_fixed_point_matches_ladder(half):
	exact = fixed_point_moments(Fraction(1, 2), Fraction(1, 4), 10)
	assert np.max(np.abs(np.array([float(v) for v in exact]) - initial_moments(half, 10))) < 1e-10


def test_initial_moments():
	assert list(initial_moments(0.25, 3)) == [1, 0.25, 0.0625, 0.015625]
	for c in (0, 1, 1.5):
		with pytest.raises(DomainException):
			initial_moments(c, 3)
	with pytest.raises(DomainException):
		initial_moments(0.25, 0)
	with pytest.raises(DomainException):
		initial_moments(SpectralMeasure.point_mass(True), 4)


def test_m1_follows_closed_form(half):
	trajectory = integrate_moments(half, initial_moments(0.25, 8), T=1.0, h=1e-3, N=8, record_every=100)
	assert len(trajectory) == 11
	for s in trajectory:
		assert s.m[1] == pytest.approx(m1_exact(half, 0.25, s.t), abs=1e-10)


def test_stationary_start_stays_flat(half):
	m0 = initial_moments(half, 16)
	trajectory = integrate_moments(half, m0, T=1.0, h=1e-2, N=16, record_every=25)
	for s in trajectory:
		assert np.max(np.abs(s.m - m0)) < 1e-10


def test_relaxation_rate(half):
	trajectory = integrate_moments(half, initial_moments(0.25, 4), T=5.0, h=1e-2, N=4, record_every=10)
	assert relaxation_rate(trajectory) == pytest.approx(-1, abs=1e-6)
	flat = integrate_moments(half, initial_moments(half, 4), T=1.0, h=1e-2, N=4, record_every=10)
	with pytest.raises(DomainException):
		relaxation_rate(flat)


def test_extended_precision_agrees_with_double(half):
	double = integrate_moments(half, initial_moments(0.25, 6), T=0.5, h=1e-2, N=6)
	extended = integrate_moments(half, list(initial_moments(0.25, 6)), T=0.5, h=1e-2, N=6, dps=30)
	assert isinstance(extended[-1].m[3], mpmath.mpf)
	assert len(double) == len(extended)
	assert max(abs(float(a) - b) for a, b in zip(extended[-1].m, double[-1].m)) < 1e-12


def test_spectral_radius_bound_is_attached(half):
	trajectory = integrate_moments(half, initial_moments(0.25, 8), T=0.1, h=1e-2, N=8, rho=0.5)
	assert all(s.tail_bound == pytest.approx(2 ** -8) for s in trajectory)


@pytest.mark.parametrize('kwargs', [
	dict(T=1.0, h=0.0),
	dict(T=-1.0, h=1e-2),
	dict(T=1.0, h=0.3),
	dict(T=1.0, h=1e-2, record_every=0),
	dict(T=1.0, h=1e-2, rho=1.0),
	dict(T=1.0, h=1e-2, N=12),
])
def test_invalid_integration_arguments(half, kwargs):
	kwargs.setdefault('N', 8)
	with pytest.raises(DomainException):
		integrate_moments(half, initial_moments(0.25, 8), **kwargs)


def test_invalid_initial_vectors(half):
	with pytest.raises(DomainException):
		integrate_moments(half, [1, 0.5, 0.6], T=1.0, h=1e-2, N=2)
	with pytest.raises(DomainException):
		integrate_moments(half, [0.9, 0.5, 0.2], T=1.0, h=1e-2, N=2)
	with pytest.raises(DomainException):
		integrate_moments(half, [1, 0.5, 0.45, 0.44, 0.1], T=1.0, h=1e-2, N=4)


def test_m1_exact_domain(half):
	assert m1_exact(half, 0.5, 3.0) == pytest.approx(0.5)
	assert m1_exact(half, 0.0, math.log(2)) == pytest.approx(0.25)
	with pytest.raises(DomainException):
		m1_exact(half, 1.5, 1.0)


def semicircle_measure(lo: float, hi: float) -> SpectralMeasure:
	width = hi - lo
	return SpectralMeasure.from_density(lambda x: 8 / (math.pi * width ** 2) * np.sqrt(np.clip((x - lo) * (hi - x), 0, None)), lo, hi)


@pytest.mark.parametrize('lo, hi', [(0.05, 0.5), (0.3, 0.95), (0.15, 0.6), (0.1, 0.9), (0.4, 0.45)])
def test_measure_start(half, lo, hi):
	m0 = initial_moments(semicircle_measure(lo, hi), 8)
	assert m0[0] == pytest.approx(1, abs=1e-12)
	trajectory = integrate_moments(half, m0, T=1.0, h=1e-3, N=8, record_every=100)
	assert trajectory[0].m[0] == 1
	for s in trajectory:
		assert s.m[1] == pytest.approx(m1_exact(half, m0[1], s.t), abs=1e-10)


def test_atomic_stationary_start():
	p = JacobiParams(2, 0.25)
	m0 = initial_moments(p, 8)
	trajectory = integrate_moments(p, m0, T=0.5, h=1e-2, N=8, record_every=10)
	for s in trajectory:
		assert np.max(np.abs(s.m - m0)) < 1e-6
	extended = integrate_moments(p, list(m0), T=0.1, h=1e-2, N=8, dps=25)
	assert extended[0].m[0] == 1


def test_hankel_positivity_is_checked_along_the_trajectory(half, monkeypatch):
	calls = []

	def failing_after_start(m, tol=1e-9):
		calls.append(len(m))
		return len(calls) == 1

	monkeypatch.setattr(hierarchy, 'hankel_check', failing_after_start)
	with pytest.raises(IntegrationException) as e:
		integrate_moments(half, initial_moments(0.25, 8), T=0.1, h=1e-2, N=8, record_every=5)
	assert e.value.t == pytest.approx(0.05)
