import math
from typing import List, NamedTuple, Optional, Sequence

import mpmath
import numpy as np

from freejacobi import constant
from freejacobi.exceptions import DomainException, TruncationException
from freejacobi.moments.hierarchy import MomentState
from freejacobi.moments.tails import required_order, tail_model
from freejacobi.stationary.params import JacobiParams


class MartingaleSeries(NamedTuple):
	t: np.ndarray
	ck: np.ndarray
	scaled: np.ndarray  # e^(kt) c_k(t)


def chebyshev_coefficients(k: int) -> List[int]:
	"""
	Power basis coefficients of T_k(2y - 1), lowest degree first, exact integers
	"""
	if k < 0:
		raise DomainException('Chebyshev order must be nonnegative, got {}'.format(k))
	previous, current = [1], [0, 1]
	if k == 0:
		current = previous
	for _ in range(1, k):
		following = [0] + [2 * c for c in current]
		for i, c in enumerate(previous):
			following[i] -= c
		previous, current = current, following
	shifted = [0] * (k + 1)
	for j, t in enumerate(current):
		for i in range(j + 1):
			shifted[i] += t * math.comb(j, i) * 2 ** i * (-1) ** (j - i)
	return shifted


def chebyshev_functional(m: Sequence, k: int) -> float:
	"""
	c_k = sum_j coefficient_j m_j, the trace of T_k(2J - P)
	"""
	if k > len(m) - 1:
		raise TruncationException('Chebyshev order {} exceeds the truncation order {}'.format(k, len(m) - 1), required_order=k)
	coefficients = chebyshev_coefficients(k)
	if isinstance(m[0], mpmath.mpf):
		return sum(c * m[j] for j, c in enumerate(coefficients))
	return math.fsum(c * float(m[j]) for j, c in enumerate(coefficients))


def martingale_series(trajectory: Sequence[MomentState], k: int, dps: int = 40) -> MartingaleSeries:
	t = np.array([s.t for s in trajectory])
	if len(trajectory) > 0 and isinstance(trajectory[0].m[0], mpmath.mpf):
		with mpmath.workdps(dps):
			values = [chebyshev_functional(s.m, k) for s in trajectory]
			scaled = [mpmath.exp(k * mpmath.mpf(s.t)) * v for s, v in zip(trajectory, values)]
			return MartingaleSeries(t, np.array([float(v) for v in values]), np.array([float(v) for v in scaled]))
	ck = np.array([chebyshev_functional(s.m, k) for s in trajectory])
	return MartingaleSeries(t, ck, np.exp(k * t) * ck)


def __certified_tail(rho: float, N: int, tolerance: float, log_series: bool) -> float:
	if not 0 <= rho < 1:
		raise TruncationException('Spectral radius bound {} is not below 1'.format(rho))
	tail = rho ** (N + 1) / (1 - rho)
	if log_series:
		tail /= N + 1
	if tail > tolerance:
		raise TruncationException(
			'Tail bound {:.3g} exceeds the tolerance {:.3g}'.format(tail, tolerance),
			required_order=required_order(1.0, rho, 0.0, tolerance, log_series, N)
		)
	return tail


def __fitted_tail(m: Sequence[float], tolerance: float, log_series: bool) -> float:
	model = tail_model(m)
	if model.uncertainty > tolerance:
		order = len(m) - 1
		raise TruncationException(
			'Fitted tail (ratio {:.6g}) is uncertain to {:.3g}, tolerance {:.3g}'.format(model.ratio, model.uncertainty, tolerance),
			required_order=required_order(model.scale, model.ratio, model.exponent, tolerance, log_series, order) if model.ratio < 1 else None
		)
	return model.log_tail if log_series else model.resolvent_tail


def resolvent_functional(s: MomentState, rho: Optional[float] = None, tolerance: float = constant.DEFAULT_TAIL_TOLERANCE) -> float:
	"""
	tr (P - J)^-1 = sum_(n >= 0) m_n

	With a spectral radius bound rho the partial sum is returned, its tail certified by rho^(N+1) / (1 - rho).
	Without one the tail is estimated from the fitted decay of the last moments and added
	"""
	m = [float(v) for v in s.m]
	partial = math.fsum(m)
	if rho is not None:
		__certified_tail(rho, s.order, tolerance, False)
		return partial
	return partial + __fitted_tail(m, tolerance, False)


def log_functional(s: MomentState, rho: Optional[float] = None, tolerance: float = constant.DEFAULT_TAIL_TOLERANCE) -> float:
	"""
	tr log(P - J) = -sum_(n >= 1) m_n / n, tails handled as in resolvent_functional
	"""
	m = [float(v) for v in s.m]
	partial = -math.fsum(m[n] / n for n in range(1, len(m)))
	if rho is not None:
		__certified_tail(rho, s.order, tolerance, True)
		return partial
	return partial - __fitted_tail(m, tolerance, True)


def log_identity_residual(
		trajectory: Sequence[MomentState], params: JacobiParams,
		rho: Optional[float] = None, tolerance: float = constant.DEFAULT_TAIL_TOLERANCE
) -> np.ndarray:
	"""
	L(t) - L(0) + (1 - lambda theta) t - (1 - theta - lambda theta) * integral_0^t R(s) ds, where L is the log
	functional and R the resolvent functional; the time integral is the trapezoid rule on the trajectory times
	"""
	if len(trajectory) == 0:
		return np.zeros(0)
	t = np.array([s.t for s in trajectory])
	log_values = np.array([log_functional(s, rho, tolerance) for s in trajectory])
	drift = 1 - params.theta - params.alpha
	integral = np.zeros(len(trajectory))
	if abs(drift) > 1e-15:
		resolvent = np.array([resolvent_functional(s, rho, tolerance) for s in trajectory])
		integral[1:] = np.cumsum(np.diff(t) * (resolvent[1:] + resolvent[:-1]) / 2)
	return log_values - log_values[0] + (1 - params.alpha) * t - drift * integral
