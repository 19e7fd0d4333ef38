import math
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from freejacobi.exceptions import DomainException, EvaluationException

QUAD_EPSABS = 1e-13
QUAD_EPSREL = 1e-12
QUAD_LIMIT = 500


def edge_substitution(a: float, b: float, phi):
	"""
	The map x = a + (b - a) sin^2(phi) together with its jacobian dx/dphi = (b - a) sin(2 phi)
	"""
	s = np.sin(phi)
	return a + (b - a) * s * s, (b - a) * np.sin(2 * phi)


def quadrature(f: Callable[[float], float], a: float, b: float, breakpoints: Sequence[float] = ()) -> float:
	"""
	Integrate f over [a, b]

	Square root singularities at either endpoint are absorbed by the sin^2 substitution, what remains
	(smooth or logarithmic endpoint behaviour) is left to the adaptive Gauss-Kronrod rule of QUADPACK

	:param breakpoints: abscissae in (a, b) where f is known to vary rapidly
	"""
	if not a < b:
		raise DomainException('Quadrature interval [{}, {}] is empty'.format(a, b))
	width = b - a

	def integrand(phi: float) -> float:
		s = math.sin(phi)
		x = a + width * s * s
		value = f(x)
		if not math.isfinite(value):
			raise EvaluationException('Non-finite integrand sample', x)
		return value * width * math.sin(2 * phi)

	points = [math.asin(math.sqrt((x - a) / width)) for x in breakpoints if a < x < b]
	value, _ = integrate.quad(
		integrand, 0, math.pi / 2, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT,
		points=points if len(points) > 0 else None
	)
	return value
