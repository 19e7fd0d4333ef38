import numpy as np
import pytest

from freejacobi import constant
from freejacobi.cauchy.contour import contour, laurent_g, sample_contour
from freejacobi.cauchy.pde import HolomorphicFilter, exterior_map, pde_rhs, solve_pde
from freejacobi.exceptions import DomainException, StencilException
from freejacobi.moments.hierarchy import initial_moments, integrate_moments
from freejacobi.stationary.law import stationary_cauchy


@pytest.fixture
def points() -> np.ndarray:
	return contour(-4, 6, 1, 0.01)


def test_stationary_transform_solves_the_pde(half, points):
	sample = sample_contour(lambda z: stationary_cauchy(half, z), points)
	inner = slice(constant.TRUST_MARGIN, len(points) - constant.TRUST_MARGIN)
	assert np.max(np.abs(pde_rhs(sample, half)[inner])) < 1e-6


def test_exterior_map_leaves_the_unit_disc():
	zeta = exterior_map(np.array([2.0, -1.0, 0.5 + 0.1j, 3 + 4j]))
	assert np.all(np.abs(zeta) > 1)
	assert exterior_map(np.array([0.5 + 0j]))[0] == pytest.approx(1j)


def test_filter_keeps_holomorphic_data(half, points):
	cauchy_filter = HolomorphicFilter(points)
	values = stationary_cauchy(half, points)
	projected, defect = cauchy_filter.project(values)
	assert np.max(defect) < 1e-9
	assert np.max(np.abs(projected - values)) < 1e-9


def test_filter_needs_a_contour_off_the_support():
	with pytest.raises(DomainException):
		HolomorphicFilter(np.array([-1.0, 0.0, 1.0, 2.0], dtype=complex))


def test_stationary_solution_stays_put(half, points):
	initial = sample_contour(lambda z: stationary_cauchy(half, z), points)
	solution = solve_pde(initial, half, T=0.1, h=1e-3, record_every=50)
	assert len(solution.samples) == 3
	assert np.any(solution.trust_region)
	drift = np.abs(solution.samples[-1].values - initial.values)[solution.trust_region]
	assert np.max(drift) < 1e-6
	assert solution.herglotz_violations == 0


def test_evolution_matches_the_moment_hierarchy(arcsine, points):
	initial = sample_contour(lambda z: 1 / (z - 0.25), points)
	solution = solve_pde(initial, arcsine, T=0.5, h=1e-3, record_every=250)
	oracle = integrate_moments(arcsine, initial_moments(0.25, 60), T=0.5, h=1e-3, N=60, record_every=250)
	index = int(np.argmin(np.abs(points - (2 + 1j))))
	assert solution.trust_region[index]
	for sample, state in zip(solution.samples, oracle):
		assert sample.t == pytest.approx(state.t)
		assert abs(sample.values[index] - laurent_g(state.m, points[index])) < 5e-5


def test_invalid_arguments(half, points):
	initial = sample_contour(lambda z: stationary_cauchy(half, z), points)
	with pytest.raises(DomainException):
		solve_pde(initial, half, T=1.0, h=0)
	with pytest.raises(DomainException):
		solve_pde(initial, half, T=1.0, h=0.3)
	short = sample_contour(lambda z: stationary_cauchy(half, z), points[:4])
	with pytest.raises(StencilException):
		solve_pde(short, half, T=0.1, h=1e-2)
