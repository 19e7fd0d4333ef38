from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from freejacobi.exceptions import DomainException
from freejacobi.states import Scheme, StartKind
from freejacobi.stationary.params import JacobiParams

MATRIX_STARTS = (StartKind.haar, StartKind.identity, StartKind.scalar, StartKind.unitary)


@dataclass(frozen=True)
class MatrixJacobiConfig:
	"""
	J = X X* with X the top-left m x p corner of a d x d unitary, approximating FJP(m / p, p / d)
	"""
	m: int
	p: int
	d: int
	step: float
	T: float
	trials: int
	seed: int
	start: StartKind = StartKind.haar
	scheme: Scheme = Scheme.unitary_corner
	moment_order: int = 4
	record_every: int = 1
	snapshot_times: Tuple[float, ...] = ()
	scalar: float = 0.5  # c of the scalar start J_0 = cP
	unitary: Optional[np.ndarray] = field(default=None, compare=False)
	jobs: int = 1
	frozen_noise: bool = False  # direct SDE without its martingale part

	def __post_init__(self):
		if not 1 <= self.m <= self.p <= self.d:
			raise DomainException('Need 1 <= m <= p <= d, got m={} p={} d={}'.format(self.m, self.p, self.d))
		if self.step <= 0 or self.T < 0:
			raise DomainException('Need step > 0 and T >= 0, got step={} T={}'.format(self.step, self.T))
		if abs(self.steps * self.step - self.T) > 1e-9 * max(1.0, self.T):
			raise DomainException('Horizon {} is not a multiple of the step {}'.format(self.T, self.step))
		for t in self.snapshot_times:
			if not 0 <= t <= self.T + 1e-9 * max(1.0, self.T):
				raise DomainException('Snapshot time {} lies outside [0, {}]'.format(t, self.T))
			if abs(round(t / self.step) * self.step - t) > 1e-9 * max(1.0, t):
				raise DomainException('Snapshot time {} is not a multiple of the step {}'.format(t, self.step))
		if self.trials < 1 or self.jobs < 1 or self.record_every < 1 or self.moment_order < 1:
			raise DomainException('trials, jobs, record_every and moment_order must be positive')
		if not 0 <= self.seed < 2 ** 64:
			raise DomainException('Seed must be a 64-bit unsigned integer, got {}'.format(self.seed))
		if self.start not in MATRIX_STARTS:
			raise DomainException('Start {} is not available for matrix simulations'.format(self.start.name))
		if self.start == StartKind.scalar:
			if not 0 < self.scalar < 1:
				raise DomainException('Scalar start needs c in (0, 1), got {}'.format(self.scalar))
			if self.scheme == Scheme.unitary_corner and self.p + self.m > self.d:
				raise DomainException('Scalar start of the unitary scheme needs p + m <= d')
		if self.start == StartKind.unitary:
			if self.unitary is None or self.unitary.shape != (self.d, self.d):
				raise DomainException('Given-unitary start needs a {0} x {0} matrix'.format(self.d))
		if self.scheme == Scheme.direct_sde and self.start == StartKind.identity:
			raise DomainException('The direct SDE needs a start strictly inside (0, I), identity-corner is not one')

	@property
	def lam(self) -> Fraction:
		return Fraction(self.m, self.p)

	@property
	def theta(self) -> Fraction:
		return Fraction(self.p, self.d)

	@property
	def params(self) -> JacobiParams:
		return JacobiParams(float(self.lam), float(self.theta))

	@property
	def steps(self) -> int:
		return int(round(self.T / self.step))

	def recorded_steps(self) -> List[int]:
		"""
		Every record_every-th step, the final one and every snapshot step
		"""
		snapshots = self.snapshot_steps()
		return [s for s in range(self.steps + 1) if s % self.record_every == 0 or s == self.steps or s in snapshots]

	def snapshot_steps(self) -> Dict[int, float]:
		return {int(round(t / self.step)): t for t in self.snapshot_times}

	def to_json(self) -> dict:
		return {
			'm': self.m, 'p': self.p, 'd': self.d,
			'lambda': str(self.lam), 'theta': str(self.theta),
			'step': self.step, 'T': self.T, 'trials': self.trials, 'seed': self.seed,
			'start': self.start.name, 'scheme': self.scheme.name, 'scalar': self.scalar,
			'moment_order': self.moment_order, 'record_every': self.record_every,
			'snapshot_times': list(self.snapshot_times), 'frozen_noise': self.frozen_noise,
		}


@dataclass
class TrajectoryRecord:
	config: MatrixJacobiConfig
	times: np.ndarray
	moment_mean: np.ndarray  # [time, n] mean over trials of tr_m J^n, n = 0 ... moment_order
	moment_stderr: np.ndarray
	chebyshev_mean: np.ndarray  # [time, k] mean of tr_m T_k(2J - I), k = 0 ... MAX_CHEBYSHEV_ORDER
	chebyshev_stderr: np.ndarray
	trace_mean: Optional[np.ndarray]  # [time, j] mean of tr_d Y^j, j = 1, 2, unitary corner scheme only
	trace_stderr: Optional[np.ndarray]
	snapshots: Dict[float, np.ndarray]  # pooled corner eigenvalues
	seeds: List[Tuple[int, int]]  # (seed, trial) of every completed trial
	aborted: List[Tuple[int, str]] = field(default_factory=list)
	polar_projections: int = 0
	clamp_activations: int = 0
	steps_taken: int = 0
	flagged: bool = False

	@property
	def params(self) -> JacobiParams:
		return self.config.params

	@property
	def completed_trials(self) -> int:
		return len(self.seeds)

	def health(self) -> dict:
		return {
			'completed_trials': self.completed_trials,
			'aborted_trials': len(self.aborted),
			'polar_projections': self.polar_projections,
			'clamp_activations': self.clamp_activations,
			'steps_taken': self.steps_taken,
			'flagged': self.flagged,
		}
