from typing import Sequence

import numpy as np

from freejacobi import constant
from freejacobi.exceptions import DomainException
from freejacobi.measures.spectral_measure import SpectralMeasure


def moments_of_measure(mu: SpectralMeasure, N: int) -> np.ndarray:
	if N < 0:
		raise DomainException('Moment order must be nonnegative, got {}'.format(N))
	moments = np.empty(N + 1)
	moments[0] = mu.total_mass
	mass = mu.weights * mu.density
	power = np.ones_like(mu.grid)
	for n in range(1, N + 1):
		power = power * mu.grid
		moments[n] = mu.atom1 + float(np.sum(mass * power))
	return moments


def cauchy_of_measure(mu: SpectralMeasure, z: complex) -> complex:
	"""
	G(z) = atom0 / z + atom1 / (z - 1) + integral of g(x) / (z - x)

	Far from the support the grid rule is exact to machine precision; closer than NEAR_AXIS_DISTANCE
	the integral is done adaptively on the density callable, refined at Re z
	"""
	z = complex(z)
	if z.imag == 0:
		x = z.real
		if mu.has_continuous_part and mu.lo <= x <= mu.hi:
			raise DomainException('z = {} lies inside the support [{}, {}]'.format(x, mu.lo, mu.hi))
		if (x == 0 and mu.atom0 > 0) or (x == 1 and mu.atom1 > 0):
			raise DomainException('z = {} is an atom of the measure'.format(x))
	value = 0j
	if mu.atom0 > 0:
		value += mu.atom0 / z
	if mu.atom1 > 0:
		value += mu.atom1 / (z - 1)
	if mu.has_continuous_part:
		if distance_to_interval(z, mu.lo, mu.hi) >= constant.NEAR_AXIS_DISTANCE or mu.density_function is None:
			value += complex(np.sum(mu.weights * mu.density / (z - mu.grid)))
		else:
			value += mu.integrate_near(lambda x: 1 / (z - x), z.real)
	return value


def cumulative_distribution(mu: SpectralMeasure, x) -> np.ndarray:
	x = np.asarray(x, dtype=float)
	cdf = np.where(x >= 0, mu.atom0, 0.0)
	if mu.has_continuous_part:
		mass = mu.weights * mu.density
		nodes = np.concatenate([[mu.lo], mu.grid, [mu.hi]])
		cumulative = np.concatenate([[0.0], np.cumsum(mass) - mass / 2, [float(np.sum(mass))]])
		cdf = cdf + np.interp(x, nodes, cumulative, left=0.0, right=cumulative[-1])
	return cdf + np.where(x >= 1, mu.atom1, 0.0)


def hankel_check(m: Sequence[float], tol: float = constant.HANKEL_TOLERANCE) -> bool:
	"""
	Hausdorff positivity of the moment sequence through m_4: [m_{i+j}] and [m_{i+j+1} - m_{i+j+2}]
	"""
	m = np.asarray(m, dtype=float)
	if len(m) < 5:
		raise DomainException('Hankel check needs the moments m_0 ... m_4')
	h_full = np.array([[m[i + j] for j in range(3)] for i in range(3)])
	h_shifted = np.array([[m[i + j + 1] - m[i + j + 2] for j in range(2)] for i in range(2)])
	return bool(np.linalg.eigvalsh(h_full)[0] >= -tol and np.linalg.eigvalsh(h_shifted)[0] >= -tol)


def inversion_trust_region(lo: float, hi: float, x_grid, margin: float = constant.INVERSION_EDGE_MARGIN) -> np.ndarray:
	x_grid = np.asarray(x_grid, dtype=float)
	gap = margin * (hi - lo)
	return (x_grid - lo >= gap) & (hi - x_grid >= gap)


def point_mass_moments(c: float, N: int) -> np.ndarray:
	if not 0 <= c <= 1:
		raise DomainException('Point mass location {} is outside [0, 1]'.format(c))
	return np.power(float(c), np.arange(N + 1, dtype=float))


def distance_to_interval(z: complex, lo: float, hi: float) -> float:
	return abs(complex(z) - min(max(complex(z).real, lo), hi))
