from typing import Sequence

import numpy as np

from freejacobi.cauchy.pde import PdeSolution
from freejacobi.matsim.matsim_config import TrajectoryRecord
from freejacobi.moments.functionals import MartingaleSeries
from freejacobi.moments.hierarchy import MomentState
from freejacobi.output.run_output import RunOutput

TRAJECTORY_FILE = 'trajectory.csv'
CHEBYSHEV_FILE = 'chebyshev.csv'
CONTOUR_FILE = 'contour.csv'
SIM_TRAJECTORY_FILE = 'sim_trajectory.csv'
SNAPSHOT_FILE = 'snapshots.csv'


def write_moment_trajectory(output: RunOutput, trajectory: Sequence[MomentState], file_name: str = TRAJECTORY_FILE) -> str:
	order = trajectory[0].order if len(trajectory) > 0 else 0
	header = ['t'] + ['m{}'.format(n) for n in range(1, order + 1)]
	return output.write_csv(file_name, header, ([s.t] + [float(v) for v in s.m[1:]] for s in trajectory))


def write_martingale_series(output: RunOutput, series: Sequence[MartingaleSeries], file_name: str = CHEBYSHEV_FILE) -> str:
	"""
	:param series: the series of k = 0, 1, ... in this order
	"""
	rows = []
	for k, entry in enumerate(series):
		for t, ck, scaled in zip(entry.t, entry.ck, entry.scaled):
			rows.append((t, k, ck, scaled))
	return output.write_csv(file_name, ['t', 'k', 'ck', 'ck_scaled'], rows)


def write_contour_series(output: RunOutput, solution: PdeSolution, file_name: str = CONTOUR_FILE) -> str:
	rows = []
	for sample in solution.samples:
		for z, g in zip(sample.points, sample.values):
			rows.append((sample.t, z.real, z.imag, g.real, g.imag))
	return output.write_csv(file_name, ['t', 're_z', 'im_z', 're_G', 'im_G'], rows)


def write_sim_trajectory(output: RunOutput, record: TrajectoryRecord, file_name: str = SIM_TRAJECTORY_FILE) -> str:
	rows = []
	for i, t in enumerate(record.times):
		for n in range(1, record.moment_mean.shape[1]):
			rows.append((t, n, record.moment_mean[i, n], record.moment_stderr[i, n]))
	return output.write_csv(file_name, ['t', 'n', 'mean_mn', 'stderr_mn'], rows)


def write_snapshots(output: RunOutput, record: TrajectoryRecord, file_name: str = SNAPSHOT_FILE) -> str:
	rows = []
	for t in sorted(record.snapshots.keys()):
		for eigenvalue in np.sort(record.snapshots[t]):
			rows.append((t, eigenvalue))
	return output.write_csv(file_name, ['t', 'eig'], rows)
