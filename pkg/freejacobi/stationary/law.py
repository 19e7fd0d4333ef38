import logging
import math
from typing import Optional, Tuple

import numpy as np

from freejacobi import constant
from freejacobi.exceptions import DomainException
from freejacobi.logger import get_logger
from freejacobi.measures.spectral_measure import SpectralMeasure
from freejacobi.stationary.params import JacobiParams, dual_params

# midpoint grid points per unit of the relative distance between a support edge and the pole of g beyond it
EDGE_RESOLUTION = 7.0
MAX_GRID_SIZE = 2 ** 20


def stationary_atoms(p: JacobiParams) -> Tuple[float, float]:
	return max(0.0, 1 - 1 / p.lam), max(0.0, 1 - p.k)


def stationary_density(p: JacobiParams, x):
	"""
	g(x) = sqrt((x - x_minus)(x_plus - x)) / (2 pi lambda theta x (1 - x)) inside the support, 0 elsewhere

	Accepts scalars and arrays. At x = 0 with x_minus = 0 (or x = 1 with x_plus = 1) g blows up, which is
	a domain error; every other edge value is the continuous limit 0
	"""
	array = np.asarray(x, dtype=float)
	lo, hi = p.edges
	if (lo == 0 and np.any(array == 0)) or (hi == 1 and np.any(array == 1)):
		raise DomainException('Stationary density of {} is unbounded at the support edge'.format(p))
	inside = (array > lo) & (array < hi)
	safe = np.where(inside, array, (lo + hi) / 2)
	value = np.sqrt((safe - lo) * (hi - safe)) / (2 * math.pi * p.alpha * safe * (1 - safe))
	value = np.where(inside, value, 0.0)
	if value.ndim == 0:
		return float(value)
	return value


def stationary_cauchy(p: JacobiParams, z):
	"""
	G(z) = ((2 - r) z + (1/lambda - 1) + w) / (2 z (z - 1)) with w^2 = A z^2 - B z + C

	w = r sqrt(z - x_minus) sqrt(z - x_plus) with principal roots: the cut is the support and w ~ r z at
	infinity, so z G(z) -> 1 and Im G < 0 in the upper half plane
	"""
	array = np.asarray(z, dtype=complex)
	on_axis = (array.imag == 0) & (array.real >= 0) & (array.real <= 1)
	if np.any(on_axis):
		raise DomainException('Cauchy transform of {} is not defined on [0, 1], got z={}'.format(p, z))
	lo, hi = p.edges
	w = p.r * np.sqrt(array - lo) * np.sqrt(array - hi)
	value = ((2 - p.r) * array + (p.l - 1) + w) / (2 * array * (array - 1))
	if value.ndim == 0:
		return complex(value)
	return value


def resolved_grid_size(p: JacobiParams, grid_size: int) -> int:
	"""
	Grid size for which the midpoint rule in phi resolves the poles of g at 0 and 1 when they sit just
	outside the support
	"""
	lo, hi = p.edges
	gaps = [gap for gap in (lo, 1 - hi) if gap > 0]
	if len(gaps) == 0:
		return grid_size
	distance = math.sqrt(min(gaps) / (hi - lo))
	return int(min(max(grid_size, math.ceil(EDGE_RESOLUTION / distance)), max(grid_size, MAX_GRID_SIZE)))


def stationary_measure(p: JacobiParams, grid_size: int = constant.DEFAULT_GRID_SIZE, logger: Optional[logging.Logger] = None) -> SpectralMeasure:
	lo, hi = p.edges
	atom0, atom1 = stationary_atoms(p)
	if hi <= lo:
		empty = np.zeros(0)
		return SpectralMeasure(atom0, atom1, 0.0, 1.0, empty, empty, empty)
	size = resolved_grid_size(p, grid_size)
	if size != grid_size:
		get_logger(logger).debug('Refining the stationary grid of {} from {} to {} points'.format(p, grid_size, size))
	return SpectralMeasure.from_density(lambda x: stationary_density(p, x), lo, hi, atom0, atom1, size)


def normalizing_constant(p: JacobiParams) -> float:
	"""
	1 / K with K the prefactor of g, obtained from the edges alone. Equals 2 pi lambda theta
	"""
	lo, hi = p.edges
	atom0, atom1 = stationary_atoms(p)
	if hi <= lo:
		raise DomainException('Stationary law of {} has no continuous part'.format(p))
	value = math.pi * (1 - math.sqrt(lo * hi) - math.sqrt((1 - lo) * (1 - hi)))
	return value / (1 - atom0 - atom1)


def regime_report(p: JacobiParams) -> dict:
	lo, hi = p.edges
	atom0, atom1 = stationary_atoms(p)
	dual = dual_params(p)
	return {
		'lambda': p.lam,
		'theta': p.theta,
		'alpha': p.alpha,
		'sde_valid': p.sde_valid,
		'strict_interior': p.strict_interior,
		'x_minus': lo,
		'x_plus': hi,
		'atom0': atom0,
		'atom1': atom1,
		'dual_lambda': dual.lam,
		'dual_theta': dual.theta,
	}
