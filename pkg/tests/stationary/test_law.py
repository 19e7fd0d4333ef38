import math

import numpy as np
import pytest

from freejacobi.exceptions import DomainException, EvaluationException
from freejacobi.stationary.law import (
	normalizing_constant, regime_report, resolved_grid_size, stationary_atoms, stationary_cauchy, stationary_density,
	stationary_measure
)
from freejacobi.stationary.params import JacobiParams, dual_params
from freejacobi.stationary.transforms import free_cumulants, k_transform, projection_r_transform


@pytest.mark.parametrize('lam, theta', [(0, 0.5), (-1, 0.5), (1, 0), (1, 1), (3, 0.5)])
def test_invalid_params(lam, theta):
	with pytest.raises(DomainException):
		JacobiParams(lam, theta)


def test_edges(arcsine, half):
	assert arcsine.edges == (0.0, 1.0)
	lo, hi = half.edges
	assert lo == pytest.approx(0.5 - math.sqrt(0.1875), abs=1e-14)
	assert hi == pytest.approx(0.5 + math.sqrt(0.1875), abs=1e-14)


@pytest.mark.parametrize('lam, theta', [(0.5, 0.5), (0.3, 0.4), (1.0, 0.2), (0.9, 0.1)])
def test_edges_solve_the_quadratic(lam, theta):
	p = JacobiParams(lam, theta)
	for x in p.edges:
		assert abs(x * x - p.B / p.A * x + p.C / p.A) < 1e-12


def test_regimes():
	assert JacobiParams(0.5, 0.5).sde_valid
	assert JacobiParams(0.5, 0.5).strict_interior
	assert not JacobiParams(1, 0.9).sde_valid
	assert JacobiParams(1, 0.5).sde_valid
	assert not JacobiParams(1, 0.5).strict_interior


def test_atoms():
	assert stationary_atoms(JacobiParams(2, 0.25)) == (0.5, 0.0)
	assert stationary_atoms(JacobiParams(0.5, 0.5)) == (0.0, 0.0)
	atom0, atom1 = stationary_atoms(JacobiParams(1, 0.9))
	assert atom0 == 0
	assert atom1 == pytest.approx(1 - 0.1 / 0.9)


def test_dual_params(half):
	dual = dual_params(half)
	assert dual.lam == pytest.approx(0.5)
	assert dual.theta == pytest.approx(0.5)


def test_arcsine_density(arcsine):
	x = np.linspace(0.01, 0.99, 99)
	assert np.max(np.abs(stationary_density(arcsine, x) - 1 / (math.pi * np.sqrt(x * (1 - x))))) < 1e-12
	with pytest.raises(DomainException):
		stationary_density(arcsine, 0.0)


def test_density_vanishes_off_support(half):
	lo, hi = half.edges
	assert stationary_density(half, lo / 2) == 0
	assert stationary_density(half, (1 + hi) / 2) == 0
	assert stationary_density(half, 0.5) > 0


@pytest.mark.parametrize('lam, theta', [(0.5, 0.5), (1, 0.5), (0.2, 0.3), (2, 0.25), (1, 0.9)])
def test_measure_mass(lam, theta):
	assert stationary_measure(JacobiParams(lam, theta)).total_mass == pytest.approx(1, abs=1e-8)


def test_degenerate_law_is_atomic():
	mu = stationary_measure(JacobiParams(2, 0.5))
	assert not mu.has_continuous_part
	assert (mu.atom0, mu.atom1) == (0.5, 0.5)


def test_grid_refinement_near_poles(half):
	assert resolved_grid_size(half, 2048) == 2048
	assert resolved_grid_size(JacobiParams(0.999, 0.5), 2048) > 2048


def test_normalizing_constant(half):
	assert normalizing_constant(half) == pytest.approx(2 * math.pi * half.alpha, rel=1e-12)


def test_cauchy_transform(half):
	z = np.array([0.5 + 1j, -2 + 0.1j, 3 + 1e-3j])
	assert np.all(stationary_cauchy(half, z).imag < 0)
	assert stationary_cauchy(half, 1e6) * 1e6 == pytest.approx(1, abs=1e-5)
	with pytest.raises(DomainException):
		stationary_cauchy(half, 0.5)


def test_k_transform_inverts_g(half):
	for z in (0.5 + 2j, 2.5, -1.5 + 0.5j):
		assert abs(k_transform(half, stationary_cauchy(half, z)) - z) < 1e-10


def test_free_cumulants(arcsine, half):
	kappa = free_cumulants(arcsine, 3)
	assert kappa[0] == pytest.approx(0.5, abs=1e-12)
	assert kappa[1] == pytest.approx(0.125, abs=1e-12)
	assert free_cumulants(half, 1)[0] == pytest.approx(0.5, abs=1e-12)


def test_r_transform_branch_cut():
	rho = complex(1 - 2 * 0.3, 2 * math.sqrt(0.3 * 0.7))
	assert projection_r_transform(0.3, 0) == pytest.approx(0.3)
	with pytest.raises(EvaluationException):
		projection_r_transform(0.3, 2 * rho)


def test_regime_report():
	report = regime_report(JacobiParams(2, 0.25))
	assert report['atom0'] == 0.5
	assert not report['sde_valid']
