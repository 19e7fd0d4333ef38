import logging
import math
from typing import List, NamedTuple, Optional

import numpy as np

from freejacobi import constant
from freejacobi.cauchy.contour import ContourSample, contour_derivative, herglotz_violations
from freejacobi.exceptions import DomainException
from freejacobi.logger import get_logger
from freejacobi.stationary.params import JacobiParams

PSEUDO_INVERSE_RCOND = 1e-14


class PdeSolution(NamedTuple):
	samples: List[ContourSample]
	trust_region: np.ndarray  # mask of contour points whose values are trusted
	max_defect: float  # largest distance of a step from the holomorphic span, inside the trust region
	filter_order: int
	herglotz_violations: int


def pde_rhs_pointwise(z, g, dg, params: JacobiParams):
	"""
	dG/dt = (1 - 2a) G + a (2z - 1) G^2 + ((1 - 2a) z - theta (1 - lambda)) G' + 2a z (z - 1) G G', a = lambda theta
	"""
	a = params.alpha
	return (1 - 2 * a) * g + a * (2 * z - 1) * g * g + ((1 - 2 * a) * z - params.theta * (1 - params.lam)) * dg + 2 * a * z * (z - 1) * g * dg


def pde_rhs(sample: ContourSample, params: JacobiParams) -> np.ndarray:
	return pde_rhs_pointwise(sample.points, sample.values, contour_derivative(sample.values, sample.dx), params)


def exterior_map(z) -> np.ndarray:
	"""
	zeta = 2z - 1 + 2 sqrt(z) sqrt(z - 1), mapping the complement of [0, 1] onto |zeta| > 1
	"""
	z = np.asarray(z, dtype=complex)
	return 2 * z - 1 + 2 * np.sqrt(z) * np.sqrt(z - 1)


class HolomorphicFilter:
	"""
	Least-squares projection of contour values onto functions holomorphic off [0, 1] and vanishing at infinity,
	spanned by zeta(z)^(-n-1), n < order

	A horizontal contour does not carry a well-posed initial value problem for the PDE: modes oscillating
	along the contour grow at a rate proportional to their frequency. Projecting after each step removes them
	"""
	def __init__(self, points: np.ndarray, accuracy: float = constant.FILTER_ACCURACY, max_order: int = constant.FILTER_MAX_ORDER):
		zeta = exterior_map(points)
		closest = float(np.min(np.abs(zeta)))
		if closest <= 1:
			raise DomainException('Contour touches the support [0, 1]')
		order = math.ceil(math.log(accuracy) / math.log(1 / closest)) + 8
		self.order = max(1, min(order, max_order, len(points) // 2))
		basis = zeta[:, None] ** (-np.arange(1, self.order + 1)[None, :])
		self.basis = basis / np.linalg.norm(basis, axis=0)
		self.pseudo_inverse = np.linalg.pinv(self.basis, rcond=PSEUDO_INVERSE_RCOND)

	def project(self, values: np.ndarray):
		"""
		:return: the projected values and the pointwise defect |values - projected|
		"""
		projected = self.basis @ (self.pseudo_inverse @ values)
		return projected, np.abs(values - projected)


def __shrink_trust_region(trust: np.ndarray, defect: np.ndarray, tolerance: float) -> np.ndarray:
	# contamination enters through the one-sided stencils, so the region is cut back from each end
	count = len(trust)
	middle = count // 2
	contaminated = np.nonzero(defect > tolerance)[0]
	left = contaminated[contaminated < middle]
	right = contaminated[contaminated >= middle]
	trust = trust.copy()
	if len(left) > 0:
		trust[:left.max() + 1] = False
	if len(right) > 0:
		trust[right.min():] = False
	return trust


def solve_pde(
		initial: ContourSample, params: JacobiParams, T: float, h: float,
		record_every: int = 1, filtered: bool = True, logger: Optional[logging.Logger] = None
) -> PdeSolution:
	"""
	RK4 in time for the Cauchy transform PDE on a horizontal contour, followed after each step by the
	holomorphic projection. The trust region starts with TRUST_MARGIN points cut at each end and shrinks
	inward wherever a step leaves the holomorphic span by more than CONTAMINATION_TOLERANCE
	"""
	logger = get_logger(logger)
	if h <= 0 or T < 0:
		raise DomainException('Need h > 0 and T >= 0, got h={} T={}'.format(h, T))
	steps = int(round(T / h))
	if abs(steps * h - T) > 1e-9 * max(1.0, T):
		raise DomainException('Horizon {} is not a multiple of the step {}'.format(T, h))
	count = len(initial.points)
	contour_derivative(initial.values, initial.dx)  # stencil length check
	trust = np.zeros(count, dtype=bool)
	trust[constant.TRUST_MARGIN:count - constant.TRUST_MARGIN] = True
	cauchy_filter = HolomorphicFilter(initial.points) if filtered else None
	filter_order = cauchy_filter.order if cauchy_filter is not None else 0
	logger.debug('Solving the Cauchy PDE of {} on {} points to T={} with h={}, filter order {}'.format(params, count, T, h, filter_order))

	def f(values: np.ndarray) -> np.ndarray:
		return pde_rhs(initial.with_values(values, 0.0), params)

	samples = [initial]
	values = initial.values.copy()
	max_defect = 0.0
	for step in range(1, steps + 1):
		k1 = f(values)
		k2 = f(values + h / 2 * k1)
		k3 = f(values + h / 2 * k2)
		k4 = f(values + h * k3)
		values = values + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
		if cauchy_filter is not None:
			values, defect = cauchy_filter.project(values)
			shrunk = __shrink_trust_region(trust, defect, constant.CONTAMINATION_TOLERANCE)
			if np.count_nonzero(shrunk) < np.count_nonzero(trust):
				logger.debug('Boundary contamination at t={:.6g}, trust region down to {} points'.format(step * h, np.count_nonzero(shrunk)))
				trust = shrunk
			if np.any(trust):
				max_defect = max(max_defect, float(np.max(defect[trust])))
		if step % record_every == 0 or step == steps:
			samples.append(initial.with_values(values.copy(), step * h))
	if not np.any(trust):
		logger.warning('Trust region of the Cauchy PDE solution is empty')
	violations = sum(herglotz_violations(sample) for sample in samples)
	return PdeSolution(samples, trust, max_defect, filter_order, violations)
