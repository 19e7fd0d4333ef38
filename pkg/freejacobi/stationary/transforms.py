import cmath
import math

import numpy as np

from freejacobi.exceptions import DomainException, EvaluationException
from freejacobi.stationary.params import JacobiParams

CUT_TOLERANCE = 1e-14
CUMULANT_NODES = 64


def _projection_roots(theta: float) -> complex:
	# (z - 1)^2 + 4 theta z = (z - rho)(z - conj(rho)) with |rho| = 1
	return complex(1 - 2 * theta, 2 * math.sqrt(theta * (1 - theta)))


def _unit_root(u: complex, z: complex) -> complex:
	if abs(u.imag) <= CUT_TOLERANCE * max(1.0, abs(u)) and u.real <= 0:
		raise EvaluationException('R-transform evaluated on its branch cut', z)
	return cmath.sqrt(u)


def projection_r_transform(theta: float, z: complex) -> complex:
	"""
	R-transform of the Bernoulli law (1 - theta) delta_0 + theta delta_1

	R(z) = (z - 1 + sqrt((z - 1)^2 + 4 theta z)) / (2 z), evaluated in the rationalized form 2 theta / (s + 1 - z)
	with s = sqrt(1 - z/rho) sqrt(1 - z/conj(rho)). The two cuts run radially outward from the unit circle,
	so the branch is holomorphic in the unit disc with s(0) = 1 and R(0) = theta
	"""
	if not 0 < theta < 1:
		raise DomainException('theta must lie in (0, 1), got {}'.format(theta))
	z = complex(z)
	rho = _projection_roots(theta)
	s = _unit_root(1 - z / rho, z) * _unit_root(1 - z / rho.conjugate(), z)
	return 2 * theta / (s + 1 - z)


def compressed_r_transform(p: JacobiParams, z: complex) -> complex:
	"""
	R-transform of the stationary law, R(z) = R_a(lambda theta z)
	"""
	return projection_r_transform(p.theta, p.alpha * complex(z))


def k_transform(p: JacobiParams, z: complex) -> complex:
	z = complex(z)
	if z == 0:
		raise DomainException('K-transform is not defined at z = 0')
	return compressed_r_transform(p, z) + 1 / z


def free_cumulants(p: JacobiParams, n: int) -> np.ndarray:
	"""
	kappa_1 ... kappa_n, the Taylor coefficients of R at 0 read off a circle of radius 1 / (2 lambda theta)
	"""
	if n < 1:
		raise DomainException('Number of free cumulants must be positive, got {}'.format(n))
	nodes = max(CUMULANT_NODES, 4 * n)
	radius = 0.5 / p.alpha
	z = radius * np.exp(2j * math.pi * np.arange(nodes) / nodes)
	values = np.array([compressed_r_transform(p, point) for point in z])
	coefficients = np.fft.fft(values) / nodes
	return np.real(coefficients[:n]) / radius ** np.arange(n)
