import logging
import math
from typing import List, NamedTuple, Optional, Sequence, Union

import mpmath
import numpy as np

from freejacobi import constant
from freejacobi.exceptions import DomainException, IntegrationException
from freejacobi.logger import get_logger
from freejacobi.measures.functionals import hankel_check, moments_of_measure, point_mass_moments
from freejacobi.measures.spectral_measure import SpectralMeasure
from freejacobi.stationary.ladder import stationary_moments
from freejacobi.stationary.params import JacobiParams

InitialState = Union[float, SpectralMeasure, JacobiParams]


class MomentState(NamedTuple):
	t: float
	m: Sequence  # m_0 ... m_N, an ndarray or a list of mpmath numbers
	params: JacobiParams
	tail_bound: Optional[float] = None

	@property
	def order(self) -> int:
		return len(self.m) - 1


def hierarchy_rhs(m: np.ndarray, theta: float, alpha: float) -> np.ndarray:
	"""
	dm_n/dt = -n m_n + n theta m_(n-1) + lambda theta n sum_(k <= n-2) m_(n-1-k) (m_k - m_(k+1))
	"""
	N = len(m) - 1
	n = np.arange(N + 1, dtype=float)
	rhs = np.zeros(N + 1)
	rhs[1:] = n[1:] * (theta * m[:-1] - m[1:])
	if N >= 2:
		convolution = np.convolve(m[1:], m[:-1] - m[1:])
		rhs[2:] += alpha * n[2:] * convolution[:N - 1]
	return rhs


def generic_hierarchy_rhs(m: Sequence, theta, alpha) -> list:
	"""
	The same right-hand side in plain arithmetic, for mpmath or Fraction entries
	"""
	N = len(m) - 1
	rhs = [m[0] * 0]
	for n in range(1, N + 1):
		value = n * (theta * m[n - 1] - m[n])
		if n >= 2:
			value += alpha * n * sum(m[n - 1 - k] * (m[k] - m[k + 1]) for k in range(n - 1))
		rhs.append(value)
	return rhs


def fixed_point_moments(theta, alpha, N: int) -> list:
	"""
	Moments of the stationary law from dm_n/dt = 0, solved upward:
	m_n = theta m_(n-1) + lambda theta sum_(k <= n-2) m_(n-1-k) (m_k - m_(k+1)). Exact for Fraction arguments
	"""
	m = [theta * 0 + 1]
	for n in range(1, N + 1):
		m.append(theta * m[n - 1] + alpha * sum(m[n - 1 - k] * (m[k] - m[k + 1]) for k in range(n - 1)))
	return m


def moment_rhs(s: MomentState) -> np.ndarray:
	if s.order < 1:
		raise DomainException('Moment hierarchy needs truncation order N >= 1')
	return hierarchy_rhs(np.asarray(s.m, dtype=float), s.params.theta, s.params.alpha)


def m1_exact(params: JacobiParams, m1_0: float, t: float) -> float:
	if not 0 <= m1_0 <= 1:
		raise DomainException('m_1(0) must lie in [0, 1], got {}'.format(m1_0))
	return (m1_0 - params.theta) * math.exp(-t) + params.theta


def initial_moments(start: InitialState, N: int, epsilon: float = constant.START_EPSILON) -> np.ndarray:
	"""
	m_0 ... m_N of J_0 given as a scalar c (J_0 = cP), a measure supported in (epsilon, 1 - epsilon),
	or JacobiParams meaning the stationary law
	"""
	if N < 1:
		raise DomainException('Truncation order must be at least 1, got {}'.format(N))
	if isinstance(start, JacobiParams):
		return stationary_moments(start, N).values
	if isinstance(start, SpectralMeasure):
		inside = start.atom0 == 0 and start.atom1 == 0 and (not start.has_continuous_part or (start.lo >= epsilon and start.hi <= 1 - epsilon))
		if not inside:
			raise DomainException('J_0 must satisfy 0 < J_0 < P, the measure leaves ({}, {})'.format(epsilon, 1 - epsilon))
		return moments_of_measure(start, N)
	c = float(start)
	if not 0 < c < 1:
		raise DomainException('J_0 = cP needs c in (0, 1), got {}'.format(c))
	return point_mass_moments(c, N)


def __check_state(m: np.ndarray, t: float):
	for n in range(1, len(m)):
		if m[n] > m[n - 1] + constant.MONOTONE_TOLERANCE:
			raise IntegrationException('Moment sequence is not monotone', t, n)
		if m[n] < -constant.MONOTONE_TOLERANCE:
			raise IntegrationException('Negative moment', t, n)


def __check_hankel(m: np.ndarray, t: float):
	if len(m) >= 5 and not hankel_check(m[:5]):
		raise IntegrationException('Moment sequence fails the Hankel positivity check', t, 4)


def __validate_initial(m: np.ndarray):
	if abs(m[0] - 1) > constant.MASS_TOLERANCE:
		raise DomainException('m_0 must be 1, got {}'.format(m[0]))
	try:
		__check_state(m, 0.0)
	except IntegrationException as e:
		raise DomainException('Invalid initial moment vector: {}'.format(e)) from None
	if len(m) >= 5 and not hankel_check(m[:5]):
		raise DomainException('Initial moment vector fails the Hankel positivity check')


def integrate_moments(
		params: JacobiParams, m0: Sequence[float], T: float, h: float, N: int = constant.DEFAULT_TRUNCATION,
		dps: Optional[int] = None, record_every: int = 1, rho: Optional[float] = None, logger: Optional[logging.Logger] = None
) -> List[MomentState]:
	"""
	Classical fourth order Runge-Kutta for the truncated hierarchy, which is closed since dm_n/dt
	only involves m_0 ... m_n

	With dps set the state is carried in mpmath numbers at that many decimal digits. The trajectory holds
	every record_every-th step and always the final one. Monotonicity of the moment sequence is checked
	after every step, Hankel positivity at every recorded one

	A spectral radius bound rho < 1 attaches the tail bound rho^(N+1) / (1 - rho) to every state
	"""
	if h <= 0 or T < 0:
		raise DomainException('Need h > 0 and T >= 0, got h={} T={}'.format(h, T))
	if record_every < 1:
		raise DomainException('record_every must be positive, got {}'.format(record_every))
	if len(m0) < N + 1:
		raise DomainException('Initial vector holds {} moments, truncation order {} needs {}'.format(len(m0), N, N + 1))
	if rho is not None and not 0 <= rho < 1:
		raise DomainException('Spectral radius bound must lie in [0, 1), got {}'.format(rho))
	steps = int(round(T / h))
	if abs(steps * h - T) > 1e-9 * max(1.0, T):
		raise DomainException('Horizon {} is not a multiple of the step {}'.format(T, h))
	initial = np.array([float(v) for v in m0[:N + 1]])
	__validate_initial(initial)
	initial[0] = 1.0
	logger = get_logger(logger)
	logger.debug('Integrating the moment hierarchy of {} to T={} with h={} N={} dps={}'.format(params, T, h, N, dps))
	if dps is None:
		trajectory = __integrate_double(params, initial, steps, h, record_every)
	else:
		with mpmath.workdps(dps):
			trajectory = __integrate_mp(params, [1] + list(m0[1:N + 1]), steps, h, record_every)
	if rho is not None:
		bound = rho ** (N + 1) / (1 - rho)
		trajectory = [s._replace(tail_bound=bound) for s in trajectory]
	return trajectory


def __integrate_double(params: JacobiParams, m: np.ndarray, steps: int, h: float, record_every: int) -> List[MomentState]:
	theta, alpha = params.theta, params.alpha

	def f(state: np.ndarray) -> np.ndarray:
		return hierarchy_rhs(state, theta, alpha)

	trajectory = [MomentState(0.0, m.copy(), params)]
	for step in range(1, steps + 1):
		k1 = f(m)
		k2 = f(m + h / 2 * k1)
		k3 = f(m + h / 2 * k2)
		k4 = f(m + h * k3)
		m = m + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
		m[0] = 1.0
		t = step * h
		__check_state(m, t)
		if step % record_every == 0 or step == steps:
			__check_hankel(m, t)
			trajectory.append(MomentState(t, m.copy(), params))
	return trajectory


def __integrate_mp(params: JacobiParams, m0: list, steps: int, h: float, record_every: int) -> List[MomentState]:
	theta, alpha = mpmath.mpf(params.theta), mpmath.mpf(params.lam) * mpmath.mpf(params.theta)
	h = mpmath.mpf(h)
	m = [mpmath.mpf(v) for v in m0]

	def f(state: list) -> list:
		return generic_hierarchy_rhs(state, theta, alpha)

	def shifted(state: list, scale, direction: list) -> list:
		return [a + scale * b for a, b in zip(state, direction)]

	trajectory = [MomentState(0.0, list(m), params)]
	for step in range(1, steps + 1):
		k1 = f(m)
		k2 = f(shifted(m, h / 2, k1))
		k3 = f(shifted(m, h / 2, k2))
		k4 = f(shifted(m, h, k3))
		m = [v + h / 6 * (a + 2 * b + 2 * c + d) for v, a, b, c, d in zip(m, k1, k2, k3, k4)]
		t = float(step * h)
		current = np.array([float(v) for v in m])
		__check_state(current, t)
		if step % record_every == 0 or step == steps:
			__check_hankel(current, t)
			trajectory.append(MomentState(t, list(m), params))
	return trajectory


def relaxation_rate(trajectory: Sequence[MomentState]) -> float:
	"""
	Least-squares slope of log |m_1(t) - theta|, -1 for every start
	"""
	theta = trajectory[0].params.theta
	points = [(s.t, abs(float(s.m[1]) - theta)) for s in trajectory]
	points = [(t, gap) for t, gap in points if gap > 1e-10]
	if len(points) < 2:
		raise DomainException('Trajectory is already relaxed, no rate to fit')
	t, gap = np.array(points).T
	return float(np.polyfit(t, np.log(gap), 1)[0])
