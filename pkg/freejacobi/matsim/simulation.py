import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, NamedTuple, Optional

import numpy as np
from numpy.polynomial import chebyshev

from freejacobi import constant
from freejacobi.exceptions import DomainException, FreeJacobiException, SimulationException
from freejacobi.logger import get_logger
from freejacobi.matsim.matsim_config import MatrixJacobiConfig, TrajectoryRecord
from freejacobi.matsim.unitary import (
	brownian_matrix, corner_jacobi, hermitian_increment, hermitian_sqrt, jacobi_spectrum, polar_projection,
	sample_haar_unitary, scalar_corner_unitary, trial_generator, unitarity_defect, unitary_bm_step
)
from freejacobi.states import Scheme, StartKind


class TrialResult(NamedTuple):
	moments: np.ndarray  # [time, n]
	chebyshev: np.ndarray  # [time, k]
	traces: Optional[np.ndarray]  # [time, j]
	snapshots: Dict[float, np.ndarray]
	polar_projections: int
	clamp_activations: int


class TrialOutcome(NamedTuple):
	trial: int
	result: Optional[TrialResult]
	error: Optional[str]


class SpectrumRecorder:
	"""
	Accumulates the per-time statistics of one trial
	"""
	def __init__(self, config: MatrixJacobiConfig):
		self.config = config
		self.powers = np.arange(config.moment_order + 1)
		self.snapshot_steps = config.snapshot_steps()
		self.moments: List[np.ndarray] = []
		self.chebyshev: List[np.ndarray] = []
		self.traces: List[np.ndarray] = []
		self.snapshots: Dict[float, np.ndarray] = {}

	def record(self, step: int, eigenvalues: np.ndarray, Y: Optional[np.ndarray] = None):
		self.moments.append(np.mean(eigenvalues[None, :] ** self.powers[:, None], axis=1))
		self.chebyshev.append(np.mean(chebyshev.chebvander(2 * eigenvalues - 1, constant.MAX_CHEBYSHEV_ORDER), axis=0))
		if Y is not None:
			d = len(Y)
			self.traces.append(np.array([np.trace(Y) / d, np.sum(Y * Y.T) / d]))
		if step in self.snapshot_steps:
			self.snapshots[self.snapshot_steps[step]] = eigenvalues.copy()

	def result(self, polar_projections: int, clamp_activations: int) -> TrialResult:
		return TrialResult(
			np.array(self.moments), np.array(self.chebyshev),
			np.array(self.traces) if len(self.traces) > 0 else None,
			self.snapshots, polar_projections, clamp_activations
		)


def initial_unitary(config: MatrixJacobiConfig, rng: np.random.Generator) -> np.ndarray:
	if config.start == StartKind.haar:
		return sample_haar_unitary(config.d, rng)
	if config.start == StartKind.identity:
		return np.eye(config.d, dtype=complex)
	if config.start == StartKind.scalar:
		return scalar_corner_unitary(config.d, config.m, config.p, config.scalar)
	return np.array(config.unitary, dtype=complex)


def __unitary_corner_trial(config: MatrixJacobiConfig, trial: int, logger: logging.Logger) -> TrialResult:
	rng = trial_generator(config.seed, trial)
	Y = initial_unitary(config, rng)
	if unitarity_defect(Y) > constant.UNITARITY_TOLERANCE:
		raise DomainException('Initial matrix is not unitary')
	recorded = set(config.recorded_steps())
	recorder = SpectrumRecorder(config)
	projections = 0
	recorder.record(0, jacobi_spectrum(corner_jacobi(Y, config.m, config.p, check=False)), Y)
	for step in range(1, config.steps + 1):
		Y = unitary_bm_step(Y, hermitian_increment(config.d, config.step, rng))
		if step in recorded:
			defect = unitarity_defect(Y)
			if defect > constant.UNITARITY_TOLERANCE:
				logger.debug('Trial {} unitarity drift {:.3g} at step {}, projecting back'.format(trial, defect, step))
				Y = polar_projection(Y)
				projections += 1
			recorder.record(step, jacobi_spectrum(corner_jacobi(Y, config.m, config.p, check=False)), Y)
	return recorder.result(projections, 0)


def __direct_sde_trial(config: MatrixJacobiConfig, trial: int, logger: logging.Logger) -> TrialResult:
	"""
	Euler-Maruyama for dJ = sqrt(I - J) dB sqrt(J) + sqrt(J) dB* sqrt(I - J) + (theta I - J) dt on the free clock,
	t_free = d t_matrix, which turns the variance of dB into h / d
	"""
	rng = trial_generator(config.seed, trial)
	m, h, d = config.m, config.step, config.d
	theta = float(config.theta)
	if config.start == StartKind.scalar:
		J = config.scalar * np.eye(m, dtype=complex)
	else:
		J = corner_jacobi(initial_unitary(config, rng), m, config.p)
	eigenvalues = np.linalg.eigvalsh(J)
	if eigenvalues[0] < constant.CLAMP_EPSILON or eigenvalues[-1] > 1 - constant.CLAMP_EPSILON:
		raise DomainException('The direct SDE needs a start strictly inside (0, I)')
	noise_rng = None if config.frozen_noise else rng
	recorded = set(config.recorded_steps())
	recorder = SpectrumRecorder(config)
	clamps = 0
	recorder.record(0, eigenvalues)
	identity = np.eye(m)
	for step in range(1, config.steps + 1):
		eigenvalues, vectors = np.linalg.eigh(J)
		clamped = np.clip(eigenvalues, constant.CLAMP_EPSILON, 1 - constant.CLAMP_EPSILON)
		if np.any(clamped != eigenvalues):
			clamps += 1
		root_j = hermitian_sqrt(clamped, vectors)
		root_complement = hermitian_sqrt(1 - clamped, vectors)
		noise = brownian_matrix(m, h, d, noise_rng)
		J = J + root_complement @ noise @ root_j + root_j @ noise.conj().T @ root_complement + (theta * identity - J) * h
		J = (J + J.conj().T) / 2
		if step in recorded:
			recorder.record(step, np.clip(np.linalg.eigvalsh(J), 0, 1))
	if clamps > 0:
		logger.debug('Trial {} clamped the spectrum in {} of {} steps'.format(trial, clamps, config.steps))
	return recorder.result(0, clamps)


def __run_trial(config: MatrixJacobiConfig, trial: int, logger: logging.Logger) -> TrialOutcome:
	runner: Callable = __unitary_corner_trial if config.scheme == Scheme.unitary_corner else __direct_sde_trial
	try:
		return TrialOutcome(trial, runner(config, trial, logger), None)
	except (FreeJacobiException, np.linalg.LinAlgError) as e:
		logger.warning('Trial {} aborted: {}'.format(trial, e))
		return TrialOutcome(trial, None, str(e))


def __mean_and_stderr(stack: np.ndarray):
	mean = np.mean(stack, axis=0)
	if len(stack) < 2:
		return mean, np.zeros(mean.shape)
	return mean, np.std(stack, axis=0, ddof=1) / np.sqrt(len(stack))


def __aggregate(config: MatrixJacobiConfig, outcomes: List[TrialOutcome], logger: logging.Logger) -> TrajectoryRecord:
	completed = [outcome for outcome in outcomes if outcome.result is not None]
	aborted = [(outcome.trial, outcome.error) for outcome in outcomes if outcome.result is None]
	if len(aborted) > constant.ABORT_RATE_LIMIT * config.trials or len(completed) == 0:
		raise SimulationException('{} of {} trials aborted, first error: {}'.format(len(aborted), config.trials, aborted[0][1]))
	results = [outcome.result for outcome in completed]
	moment_mean, moment_stderr = __mean_and_stderr(np.array([r.moments for r in results]))
	chebyshev_mean, chebyshev_stderr = __mean_and_stderr(np.array([r.chebyshev for r in results]))
	trace_mean = trace_stderr = None
	if results[0].traces is not None:
		traces = np.array([r.traces for r in results])
		trace_mean = np.mean(traces, axis=0)
		trace_stderr = np.abs(__mean_and_stderr(traces.real)[1] + 1j * __mean_and_stderr(traces.imag)[1])
	snapshots = {
		t: np.concatenate([r.snapshots[t] for r in results])
		for t in sorted(set().union(*(r.snapshots.keys() for r in results)))
	}
	clamps = sum(r.clamp_activations for r in results)
	steps_taken = config.steps * len(results)
	flagged = steps_taken > 0 and clamps > constant.CLAMP_FLAG_RATE * steps_taken
	if flagged:
		logger.warning('Spectrum clamped in {} of {} steps, run flagged'.format(clamps, steps_taken))
	return TrajectoryRecord(
		config=config,
		times=np.array(config.recorded_steps()) * config.step,
		moment_mean=moment_mean, moment_stderr=moment_stderr,
		chebyshev_mean=chebyshev_mean, chebyshev_stderr=chebyshev_stderr,
		trace_mean=trace_mean, trace_stderr=trace_stderr,
		snapshots=snapshots,
		seeds=[(config.seed, outcome.trial) for outcome in completed],
		aborted=aborted,
		polar_projections=sum(r.polar_projections for r in results),
		clamp_activations=clamps,
		steps_taken=steps_taken,
		flagged=flagged,
	)


def __simulate(config: MatrixJacobiConfig, logger: Optional[logging.Logger]) -> TrajectoryRecord:
	logger = get_logger(logger)
	logger.debug('Running {} trials of the {} scheme, m={} p={} d={}, {} jobs'.format(config.trials, config.scheme.name, config.m, config.p, config.d, config.jobs))
	with ThreadPoolExecutor(max_workers=config.jobs, thread_name_prefix='Trial') as executor:
		outcomes = list(executor.map(lambda trial: __run_trial(config, trial, logger), range(config.trials)))
	return __aggregate(config, outcomes, logger)


def simulate_trajectory(config: MatrixJacobiConfig, logger: Optional[logging.Logger] = None) -> TrajectoryRecord:
	if config.scheme != Scheme.unitary_corner:
		raise DomainException('simulate_trajectory runs the unitary corner scheme, got {}'.format(config.scheme.name))
	return __simulate(config, logger)


def simulate_direct_sde(config: MatrixJacobiConfig, logger: Optional[logging.Logger] = None) -> TrajectoryRecord:
	if config.scheme != Scheme.direct_sde:
		raise DomainException('simulate_direct_sde runs the direct SDE scheme, got {}'.format(config.scheme.name))
	return __simulate(config, logger)
