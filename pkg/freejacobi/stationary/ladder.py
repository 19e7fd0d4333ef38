import logging
import math
from typing import NamedTuple, Optional

import numpy as np

from freejacobi import constant
from freejacobi.exceptions import DomainException
from freejacobi.logger import get_logger
from freejacobi.measures.functionals import moments_of_measure
from freejacobi.states import MomentRoute
from freejacobi.stationary.hypergeometric import edge_integral, hyp2f1_with_magnitude
from freejacobi.stationary.law import stationary_atoms, stationary_cauchy, stationary_measure
from freejacobi.stationary.params import JacobiParams


class MomentLadder(NamedTuple):
	values: np.ndarray
	route: MomentRoute
	fallback: bool  # the hypergeometric ladder lost too many digits


class BranchDiagnostic(NamedTuple):
	selected: float
	opposite: float

	@property
	def consistent(self) -> bool:
		return self.selected < self.opposite


def __quadrature_moments(p: JacobiParams, N: int, fallback: bool) -> MomentLadder:
	return MomentLadder(moments_of_measure(stationary_measure(p), N), MomentRoute.quadrature, fallback)


def __digit_loss(previous: float, current: float, series: float, magnitude: float) -> float:
	# cancellation inside the terminating series plus the subtraction of the rung
	return math.log10(magnitude / series) + math.log10(previous / current)


def stationary_moments(p: JacobiParams, N: int, logger: Optional[logging.Logger] = None) -> MomentLadder:
	"""
	m_0 ... m_N of the stationary law

	Without an atom at 0 the moments descend a ladder from m_1 = 1 - K I(x_minus, x_plus):
	m_n - m_(n+1) = K (pi/8) (x_plus - x_minus)^2 x_plus^(n-1) 2F1(1-n, 3/2; 3; (x_plus - x_minus) / x_plus)
	with K = 1 / (2 pi lambda theta). An atom at 0, a degenerate support or a rung that loses more than
	LADDER_MAX_DIGIT_LOSS digits sends the computation to quadrature against the assembled measure
	"""
	if N < 0:
		raise DomainException('Moment order must be nonnegative, got {}'.format(N))
	atom0, _ = stationary_atoms(p)
	lo, hi = p.edges
	if atom0 > 0 or hi <= lo:
		return __quadrature_moments(p, N, False)
	values = np.empty(N + 1)
	values[0] = 1.0
	if N == 0:
		return MomentLadder(values, MomentRoute.hypergeometric, False)
	prefactor = 1 / (2 * math.pi * p.alpha)
	values[1] = 1 - prefactor * edge_integral(lo, hi)
	delta = hi - lo
	for n in range(1, N):
		series, magnitude = hyp2f1_with_magnitude(1 - n, 1.5, 3, delta / hi)
		rung = prefactor * math.pi / 8 * delta ** 2 * hi ** (n - 1) * series
		values[n + 1] = values[n] - rung
		if values[n + 1] <= 0 or series <= 0 or __digit_loss(values[n], values[n + 1], series, magnitude) > constant.LADDER_MAX_DIGIT_LOSS:
			get_logger(logger).warning('Moment ladder of {} unstable at n={}, falling back to quadrature'.format(p, n + 1))
			return __quadrature_moments(p, N, True)
	return MomentLadder(values, MomentRoute.hypergeometric, False)


def stationary_moment(p: JacobiParams, n: int) -> float:
	return float(stationary_moments(p, n).values[n])


def branch_diagnostic(p: JacobiParams, z0: complex = constant.BRANCH_TEST_POINT) -> BranchDiagnostic:
	"""
	Distance of G(z0) from its Laurent expansion through m_3 on the selected square-root branch and on the opposite one
	"""
	moments = stationary_moments(p, 3).values
	laurent = sum(moments[n] * z0 ** (-n - 1) for n in range(4))
	selected = stationary_cauchy(p, z0)
	# the two roots give values of G summing to ((2 - r) z + 1/lambda - 1) / (z (z - 1))
	rational = ((2 - p.r) * z0 + (p.l - 1)) / (z0 * (z0 - 1))
	opposite = rational - selected
	return BranchDiagnostic(abs(selected - laurent), abs(opposite - laurent))
