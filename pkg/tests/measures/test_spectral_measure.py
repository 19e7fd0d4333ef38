import math

import numpy as np
import pytest

from freejacobi.exceptions import DomainException, EvaluationException
from freejacobi.measures.functionals import (
	cauchy_of_measure, cumulative_distribution, hankel_check, inversion_trust_region, moments_of_measure, point_mass_moments
)
from freejacobi.measures.inversion import stieltjes_inversion
from freejacobi.measures.quadrature import quadrature
from freejacobi.measures.spectral_measure import SpectralMeasure, load_measure, save_measure
from freejacobi.moments.catalan import arcsine_moment
from freejacobi.stationary.law import stationary_cauchy, stationary_density, stationary_measure
from freejacobi.stationary.params import JacobiParams


def arcsine_density(x):
	return 1 / (math.pi * np.sqrt(x * (1 - x)))


@pytest.fixture
def arcsine_measure() -> SpectralMeasure:
	return SpectralMeasure.from_density(arcsine_density, 0.0, 1.0)


def test_arcsine_mass_is_exact(arcsine_measure):
	assert arcsine_measure.total_mass == pytest.approx(1, abs=1e-12)


def test_arcsine_moments(arcsine_measure):
	moments = moments_of_measure(arcsine_measure, 10)
	for n in range(11):
		assert moments[n] == pytest.approx(float(arcsine_moment(n)), abs=1e-12)


def test_point_masses():
	at_one = moments_of_measure(SpectralMeasure.point_mass(True), 5)
	at_zero = moments_of_measure(SpectralMeasure.point_mass(False), 5)
	assert list(at_one) == [1.0] * 6
	assert list(at_zero) == [1.0, 0, 0, 0, 0, 0]


def test_mass_is_validated():
	with pytest.raises(DomainException):
		SpectralMeasure.from_density(lambda x: 2 * np.ones_like(x), 0.0, 1.0)
	with pytest.raises(DomainException):
		SpectralMeasure.from_density(arcsine_density, 0.0, 1.0, atom0=0.5)


def test_save_and_load(arcsine_measure, tmp_path):
	csv_path, json_path = str(tmp_path / 'measure.csv'), str(tmp_path / 'measure.json')
	save_measure(arcsine_measure, csv_path, json_path)
	with open(csv_path, encoding='utf8') as f:
		assert f.readline().strip() == 'x,density'
	loaded = load_measure(csv_path, json_path)
	assert loaded.sidecar == arcsine_measure.sidecar
	assert np.array_equal(loaded.grid, arcsine_measure.grid)
	assert np.max(np.abs(moments_of_measure(loaded, 8) - moments_of_measure(arcsine_measure, 8))) < 1e-12


def test_cumulative_distribution(arcsine_measure):
	cdf = cumulative_distribution(arcsine_measure, np.array([-0.1, 0.5, 1.0, 1.5]))
	assert cdf[0] == 0
	assert cdf[1] == pytest.approx(0.5, abs=1e-3)
	assert cdf[2] == pytest.approx(1, abs=1e-12)
	assert cdf[3] == pytest.approx(1, abs=1e-12)


def test_hankel_check():
	assert hankel_check(point_mass_moments(0.3, 4))
	assert not hankel_check([1, 0.5, 0.6, 0.1, 0.05])
	with pytest.raises(DomainException):
		hankel_check([1, 0.5, 0.3])


def test_cauchy_of_measure_matches_closed_form(arcsine_measure, arcsine):
	for z in (0.5 + 0.5j, -1 + 0.2j, 0.3 + 0.01j):
		assert abs(cauchy_of_measure(arcsine_measure, z) - stationary_cauchy(arcsine, z)) < 1e-6


def test_cauchy_of_measure_inside_support(arcsine_measure):
	with pytest.raises(DomainException):
		cauchy_of_measure(arcsine_measure, 0.5)


def test_stieltjes_inversion_on_trust_region(half):
	lo, hi = half.edges
	x = np.linspace(lo, hi, 41)
	x = x[inversion_trust_region(lo, hi, x)]
	result = stieltjes_inversion(lambda z: stationary_cauchy(half, z), x)
	expected = stationary_density(half, x)
	assert np.all(np.abs(result.density - expected) <= 1e-4 * np.maximum(1, expected))


def test_stieltjes_inversion_rejects_negative_density():
	with pytest.raises(EvaluationException):
		stieltjes_inversion(lambda z: -1 / (z - 0.5), [0.5])
	with pytest.raises(DomainException):
		stieltjes_inversion(lambda z: 1 / z, [0.5], [1e-3, 1e-2])


def test_quadrature():
	assert quadrature(lambda x: math.sqrt(x * (1 - x)), 0, 1) == pytest.approx(math.pi / 8, abs=1e-12)
	with pytest.raises(DomainException):
		quadrature(lambda x: x, 1, 1)
	with pytest.raises(EvaluationException):
		quadrature(lambda x: math.nan, 0, 1)


def test_inversion_recovers_the_measure(half):
	mu = stationary_measure(half, 1024)
	x = np.linspace(mu.lo, mu.hi, 13)
	x = x[inversion_trust_region(mu.lo, mu.hi, x)]
	result = stieltjes_inversion(lambda z: cauchy_of_measure(mu, z), x)
	expected = stationary_density(half, x)
	assert np.all(np.abs(result.density - expected) <= 1e-4 * np.maximum(1, expected))


def test_cauchy_of_measure_is_herglotz(arcsine_measure):
	rng = np.random.default_rng(11)
	atomic = stationary_measure(JacobiParams(2, 0.25), 512)
	points = rng.uniform(-1, 2, 100) + 1j * 10 ** rng.uniform(-3, 1, 100)
	for mu in (arcsine_measure, atomic):
		assert all(cauchy_of_measure(mu, z).imag < 0 for z in points)


def test_constructed_measures_pass_the_hankel_check(arcsine_measure, half):
	measures = [
		arcsine_measure,
		stationary_measure(half, 512),
		stationary_measure(JacobiParams(2, 0.25), 512),
		SpectralMeasure.point_mass(True),
		SpectralMeasure.point_mass(False),
	]
	for mu in measures:
		assert hankel_check(moments_of_measure(mu, 4))
