import csv

import numpy as np

from freejacobi.cauchy.contour import contour, sample_contour
from freejacobi.cauchy.pde import PdeSolution
from freejacobi.matsim.matsim_config import MatrixJacobiConfig
from freejacobi.matsim.simulation import simulate_trajectory
from freejacobi.moments.functionals import martingale_series
from freejacobi.moments.hierarchy import initial_moments, integrate_moments
from freejacobi.output.run_output import RunOutput
from freejacobi.output.writers import (
	write_contour_series, write_martingale_series, write_moment_trajectory, write_sim_trajectory, write_snapshots
)


def read_rows(path: str) -> list:
	with open(path, encoding='utf8', newline='') as f:
		return list(csv.reader(f))


def test_moment_files(tmp_path, arcsine):
	output = RunOutput(str(tmp_path), 'moments', {})
	trajectory = integrate_moments(arcsine, initial_moments(0.25, 4), T=0.1, h=1e-2, N=4, record_every=5)
	rows = read_rows(write_moment_trajectory(output, trajectory))
	assert rows[0] == ['t', 'm1', 'm2', 'm3', 'm4']
	assert len(rows) == 1 + 3
	assert rows[1][1] == '0.25'

	series = [martingale_series(trajectory, k) for k in range(3)]
	rows = read_rows(write_martingale_series(output, series))
	assert rows[0] == ['t', 'k', 'ck', 'ck_scaled']
	assert len(rows) == 1 + 3 * 3
	assert [row[1] for row in rows[1:4]] == ['0', '0', '0']
	assert float(rows[4][2]) == -0.5


def test_contour_file(tmp_path):
	output = RunOutput(str(tmp_path), 'pde', {})
	points = contour(-1, 1, 1, 0.5)
	sample = sample_contour(lambda z: 1 / (z - 0.5), points)
	solution = PdeSolution([sample, sample.with_values(sample.values, 0.5)], np.ones(len(points), dtype=bool), 0.0, 1, 0)
	rows = read_rows(write_contour_series(output, solution))
	assert rows[0] == ['t', 're_z', 'im_z', 're_G', 'im_G']
	assert len(rows) == 1 + 2 * 5
	assert rows[1][:3] == ['0', '-1', '1']


def test_simulation_files(tmp_path):
	output = RunOutput(str(tmp_path), 'simulate', {})
	config = MatrixJacobiConfig(m=2, p=4, d=8, step=0.01, T=0.02, trials=3, seed=5, moment_order=3, snapshot_times=(0.02,))
	record = simulate_trajectory(config)
	rows = read_rows(write_sim_trajectory(output, record))
	assert rows[0] == ['t', 'n', 'mean_mn', 'stderr_mn']
	assert len(rows) == 1 + 3 * 3
	rows = read_rows(write_snapshots(output, record))
	assert rows[0] == ['t', 'eig']
	values = [float(row[1]) for row in rows[1:]]
	assert len(values) == 2 * 3
	assert values == sorted(values)
