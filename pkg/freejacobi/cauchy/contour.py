import math
from typing import Callable, NamedTuple, Sequence

import numpy as np

from freejacobi import constant
from freejacobi.exceptions import DomainException, StencilException

ComplexFunction = Callable[[complex], complex]

# fourth order first derivative stencils, in units of 1 / (12 dx)
CENTRAL_STENCIL = np.array([1.0, -8.0, 0.0, 8.0, -1.0])
FIRST_POINT_STENCIL = np.array([-25.0, 48.0, -36.0, 16.0, -3.0])
SECOND_POINT_STENCIL = np.array([-3.0, -10.0, 18.0, -6.0, 1.0])


class ContourSample(NamedTuple):
	points: np.ndarray  # x_lo + i y0 ... x_hi + i y0 with uniform real spacing
	values: np.ndarray  # G at the points
	t: float

	@property
	def dx(self) -> float:
		return float(self.points[1].real - self.points[0].real)

	def with_values(self, values: np.ndarray, t: float) -> 'ContourSample':
		return ContourSample(self.points, values, t)


def contour(x_lo: float, x_hi: float, y0: float, dx: float) -> np.ndarray:
	if y0 <= 0:
		raise DomainException('Contour must lie in the upper half plane, got y0={}'.format(y0))
	if dx <= 0 or x_hi <= x_lo:
		raise DomainException('Invalid contour [{}, {}] with spacing {}'.format(x_lo, x_hi, dx))
	count = int(round((x_hi - x_lo) / dx)) + 1
	return x_lo + dx * np.arange(count) + 1j * y0


def sample_contour(g: Callable, points: np.ndarray, t: float = 0.0, vectorized: bool = True) -> ContourSample:
	if vectorized:
		values = np.asarray(g(points), dtype=complex)
	else:
		values = np.array([complex(g(z)) for z in points])
	return ContourSample(points, values, t)


def herglotz_violations(sample: ContourSample) -> int:
	return int(np.count_nonzero(sample.values.imag >= 0))


def contour_derivative(values: np.ndarray, dx: float) -> np.ndarray:
	"""
	dG/dz along a horizontal contour, equal to dG/dx by holomorphy. Central differences inside,
	one-sided stencils at the first two and the last two points, all fourth order
	"""
	count = len(values)
	if count < constant.STENCIL_MIN_POINTS:
		raise StencilException('Contour holds {} points, fourth order stencils need {}'.format(count, constant.STENCIL_MIN_POINTS))
	derivative = np.empty(count, dtype=complex)
	derivative[2:-2] = np.correlate(values, CENTRAL_STENCIL, mode='valid') / (12 * dx)
	derivative[0] = FIRST_POINT_STENCIL @ values[:5] / (12 * dx)
	derivative[1] = SECOND_POINT_STENCIL @ values[:5] / (12 * dx)
	derivative[-1] = -(FIRST_POINT_STENCIL @ values[:-6:-1]) / (12 * dx)
	derivative[-2] = -(SECOND_POINT_STENCIL @ values[:-6:-1]) / (12 * dx)
	return derivative


def laurent_g(m: Sequence[float], z):
	"""
	sum_n m_n z^(-n-1), the Cauchy transform generated by a moment vector
	"""
	w = 1 / np.asarray(z, dtype=complex)
	value = np.zeros_like(w)
	for moment in reversed(m):
		value = (value + float(moment)) * w
	return value


def laurent_dg(m: Sequence[float], z):
	w = 1 / np.asarray(z, dtype=complex)
	value = np.zeros_like(w)
	for n in range(len(m) - 1, -1, -1):
		value = value * w + (n + 1) * float(m[n])
	return -value * w * w


def laurent_coefficients(f: ComplexFunction, radius: float, count: int) -> np.ndarray:
	"""
	c_0 ... c_(count-1) of f(z) = sum_n c_n z^(-n-1), by the trapezoidal rule on the circle |z| = radius
	"""
	nodes = max(256, 4 * count)
	z = radius * np.exp(2j * math.pi * np.arange(nodes) / nodes)
	values = np.array([complex(f(point)) for point in z])
	return np.array([np.mean(values * z ** (n + 1)) for n in range(count)])


def h_from_g(g: ComplexFunction, u: complex) -> complex:
	"""
	h(u) = tr (P - uJ)^-1 = G(1/u) / u, with h(0) = m_0 = 1
	"""
	u = complex(u)
	if u == 0:
		return 1.0 + 0j
	return g(1 / u) / u


def g_from_h(h: ComplexFunction, z: complex) -> complex:
	z = complex(z)
	if z == 0:
		raise DomainException('G is not recovered from h at z = 0')
	return h(1 / z) / z
