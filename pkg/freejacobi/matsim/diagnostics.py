from typing import NamedTuple, Sequence

import numpy as np
from scipy import stats

from freejacobi import constant
from freejacobi.exceptions import DomainException
from freejacobi.matsim.matsim_config import TrajectoryRecord
from freejacobi.matsim.unitary import sample_haar_unitary, trial_generator
from freejacobi.measures.functionals import cumulative_distribution
from freejacobi.stationary.law import stationary_measure
from freejacobi.stationary.params import JacobiParams


class MartingaleDiagnostic(NamedTuple):
	t: np.ndarray
	ck: np.ndarray
	ck_stderr: np.ndarray
	scaled: np.ndarray  # e^(kt) c_k(t)
	scaled_stderr: np.ndarray

	@property
	def drift(self) -> float:
		return float(np.max(self.scaled) - np.min(self.scaled))


class ConvergenceReport(NamedTuple):
	order: float  # fitted exponent of error ~ d^-order
	monotone: bool


def martingale_diagnostic(record: TrajectoryRecord, k: int) -> MartingaleDiagnostic:
	"""
	e^(kt) times the trial mean of tr_m T_k(2J - I), constant in t for lambda = 1, theta = 1/2
	"""
	if not 0 <= k <= constant.MAX_CHEBYSHEV_ORDER:
		raise DomainException('Chebyshev order must lie in [0, {}], got {}'.format(constant.MAX_CHEBYSHEV_ORDER, k))
	config = record.config
	if config.m != config.p or config.d != 2 * config.m:
		raise DomainException('Martingale diagnostic needs lambda = 1, theta = 1/2 (p = m, d = 2m), got m={} p={} d={}'.format(config.m, config.p, config.d))
	scale = np.exp(k * record.times)
	ck = record.chebyshev_mean[:, k]
	ck_stderr = record.chebyshev_stderr[:, k]
	return MartingaleDiagnostic(record.times, ck, ck_stderr, scale * ck, scale * ck_stderr)


def ks_distance(eigenvalues: np.ndarray, params: JacobiParams, grid_size: int = constant.DEFAULT_GRID_SIZE) -> float:
	"""
	Kolmogorov-Smirnov distance between pooled eigenvalues and the stationary law
	"""
	measure = stationary_measure(params, grid_size)
	return float(stats.kstest(np.asarray(eigenvalues), lambda x: cumulative_distribution(measure, x)).statistic)


def haar_angle_ks(d: int, trials: int, seed: int) -> float:
	"""
	Kolmogorov-Smirnov statistic of pooled Haar eigenvalue angles against the uniform law on (-pi, pi]
	"""
	angles = np.concatenate([
		np.angle(np.linalg.eigvals(sample_haar_unitary(d, trial_generator(seed, trial))))
		for trial in range(trials)
	])
	return float(stats.kstest(angles, stats.uniform(loc=-np.pi, scale=2 * np.pi).cdf).statistic)


def convergence_order(dims: Sequence[int], errors: Sequence[float]) -> ConvergenceReport:
	"""
	Least-squares slope of log error against log d
	"""
	if len(dims) != len(errors) or len(dims) < 2:
		raise DomainException('Need at least two (d, error) pairs')
	errors = np.abs(np.asarray(errors, dtype=float))
	if np.any(errors == 0):
		raise DomainException('Errors must be nonzero to fit a convergence order')
	order = np.argsort(dims)
	dims = np.asarray(dims, dtype=float)[order]
	errors = errors[order]
	slope = np.polyfit(np.log(dims), np.log(errors), 1)[0]
	return ConvergenceReport(float(-slope), bool(np.all(np.diff(errors) < 0)))
