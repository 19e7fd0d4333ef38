import numpy as np
import pytest

from freejacobi.cauchy.contour import (
	contour, contour_derivative, g_from_h, h_from_g, herglotz_violations, laurent_coefficients, laurent_dg,
	laurent_g, sample_contour
)
from freejacobi.exceptions import DomainException, StencilException
from freejacobi.measures.functionals import point_mass_moments
from freejacobi.stationary.ladder import stationary_moments
from freejacobi.stationary.law import stationary_cauchy


def test_contour_layout():
	points = contour(-4, 6, 1, 0.01)
	assert len(points) == 1001
	assert points[0] == -4 + 1j
	assert points[-1] == pytest.approx(6 + 1j, abs=1e-12)
	with pytest.raises(DomainException):
		contour(-4, 6, 0, 0.01)
	with pytest.raises(DomainException):
		contour(6, -4, 1, 0.01)


def test_derivative_is_exact_on_quartics():
	points = contour(-1, 1, 0.5, 0.1)
	values = points ** 4 - 2 * points
	derivative = contour_derivative(values, 0.1)
	assert np.max(np.abs(derivative - (4 * points ** 3 - 2))) < 1e-10


def test_derivative_needs_a_full_stencil():
	with pytest.raises(StencilException):
		contour_derivative(np.ones(4, dtype=complex), 0.1)


def test_laurent_series_of_a_point_mass():
	m = point_mass_moments(0.25, 60)
	z = 2 + 1j
	assert abs(laurent_g(m, z) - 1 / (z - 0.25)) < 1e-14
	assert abs(laurent_dg(m, z) + 1 / (z - 0.25) ** 2) < 1e-14


def test_laurent_coefficients_are_moments(half):
	coefficients = laurent_coefficients(lambda z: stationary_cauchy(half, z), 4.0, 10)
	assert np.max(np.abs(coefficients - stationary_moments(half, 9).values)) < 1e-8


def test_h_and_g(half):
	def g(z):
		return stationary_cauchy(half, z)

	def h(u):
		return h_from_g(g, u)

	assert h(0) == 1
	z = 0.3 + 2j
	assert abs(g_from_h(h, z) - g(z)) < 1e-14
	with pytest.raises(DomainException):
		g_from_h(h, 0)


def test_herglotz_violations(half):
	points = contour(-4, 6, 1, 0.01)
	sample = sample_contour(lambda z: stationary_cauchy(half, z), points)
	assert herglotz_violations(sample) == 0
	assert herglotz_violations(sample.with_values(np.conj(sample.values), 0.0)) == len(points)
	scalar = sample_contour(lambda z: 1 / (z - 0.5), points[:10], vectorized=False)
	assert herglotz_violations(scalar) == 0
