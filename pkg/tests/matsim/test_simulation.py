import math

import numpy as np
import pytest

from freejacobi.exceptions import DomainException, SimulationException
from freejacobi.matsim.diagnostics import convergence_order, haar_angle_ks, ks_distance, martingale_diagnostic
from freejacobi.matsim.matsim_config import MatrixJacobiConfig
from freejacobi.matsim.simulation import simulate_direct_sde, simulate_trajectory
from freejacobi.states import Scheme, StartKind


def make_config(**kwargs) -> MatrixJacobiConfig:
	options = dict(m=2, p=4, d=8, step=0.01, T=0.1, trials=4, seed=20220614, record_every=5)
	options.update(kwargs)
	return MatrixJacobiConfig(**options)


def test_unitary_corner_record():
	record = simulate_trajectory(make_config(snapshot_times=(0.1,)))
	assert np.allclose(record.times, [0, 0.05, 0.1])
	assert record.moment_mean.shape == (3, 5)
	assert np.all(record.moment_mean[:, 0] == 1)
	assert np.all((record.moment_mean >= 0) & (record.moment_mean <= 1))
	assert record.trace_mean.shape == (3, 2)
	assert record.seeds == [(20220614, trial) for trial in range(4)]
	assert len(record.snapshots[0.1]) == 2 * 4
	assert record.health()['completed_trials'] == 4
	assert not record.flagged


def test_snapshots_off_the_record_grid_are_taken():
	record = simulate_trajectory(make_config(T=0.3, record_every=10, snapshot_times=(0.15, 0.3)))
	assert sorted(record.snapshots) == [0.15, 0.3]
	assert all(len(eigenvalues) == 2 * 4 for eigenvalues in record.snapshots.values())
	assert np.allclose(record.times, [0, 0.1, 0.15, 0.2, 0.3])


def test_identity_start():
	record = simulate_trajectory(make_config(start=StartKind.identity))
	assert np.allclose(record.moment_mean[0], 1)
	assert record.trace_mean[0, 0] == pytest.approx(1)
	assert record.moment_stderr[0, 1] == 0


def test_given_unitary_start():
	given = simulate_trajectory(make_config(start=StartKind.unitary, unitary=np.eye(8, dtype=complex)))
	identity = simulate_trajectory(make_config(start=StartKind.identity))
	assert np.array_equal(given.moment_mean, identity.moment_mean)


def test_results_do_not_depend_on_jobs():
	single = simulate_trajectory(make_config(jobs=1))
	pooled = simulate_trajectory(make_config(jobs=4))
	assert np.array_equal(single.moment_mean, pooled.moment_mean)
	assert np.array_equal(single.chebyshev_mean, pooled.chebyshev_mean)


def test_frozen_direct_sde_relaxes_deterministically():
	config = make_config(m=4, p=8, d=16, start=StartKind.scalar, scalar=0.25, scheme=Scheme.direct_sde, frozen_noise=True)
	record = simulate_direct_sde(config)
	expected = 0.5 - 0.25 * (1 - 0.01) ** np.array(config.recorded_steps())
	assert np.allclose(record.moment_mean[:, 1], expected, atol=1e-12)
	assert np.all(record.moment_stderr[:, 1] < 1e-12)
	assert record.trace_mean is None
	assert record.clamp_activations == 0


def test_noisy_direct_sde_stays_in_the_unit_interval():
	config = make_config(m=4, p=8, d=16, start=StartKind.scalar, scalar=0.5, scheme=Scheme.direct_sde, T=0.5)
	record = simulate_direct_sde(config)
	assert np.all((record.moment_mean >= 0) & (record.moment_mean <= 1))


def test_scheme_must_match():
	with pytest.raises(DomainException):
		simulate_trajectory(make_config(scheme=Scheme.direct_sde))
	with pytest.raises(DomainException):
		simulate_direct_sde(make_config())


def test_aborted_trials():
	with pytest.raises(SimulationException):
		simulate_trajectory(make_config(start=StartKind.unitary, unitary=2 * np.eye(8, dtype=complex)))


def test_martingale_diagnostic():
	record = simulate_trajectory(make_config(m=4, p=4, d=8, start=StartKind.identity))
	diagnostic = martingale_diagnostic(record, 1)
	assert diagnostic.scaled[0] == pytest.approx(1)
	assert np.allclose(diagnostic.scaled, np.exp(record.times) * record.chebyshev_mean[:, 1])
	with pytest.raises(DomainException):
		martingale_diagnostic(record, 9)
	with pytest.raises(DomainException):
		martingale_diagnostic(simulate_trajectory(make_config()), 1)


def test_ks_distance_of_arcsine_quantiles(arcsine):
	u = (np.arange(1000) + 0.5) / 1000
	assert ks_distance(np.sin(math.pi * u / 2) ** 2, arcsine) < 0.01
	assert ks_distance(np.full(100, 0.5), arcsine) > 0.4


def test_haar_angles_are_uniform():
	assert haar_angle_ks(32, 10, 7) < 0.08


def test_convergence_order():
	report = convergence_order([256, 64, 128], [1 / 16, 1 / 8, 1 / 8 / math.sqrt(2)])
	assert report.order == pytest.approx(0.5)
	assert report.monotone
	with pytest.raises(DomainException):
		convergence_order([64], [0.1])
	with pytest.raises(DomainException):
		convergence_order([64, 128], [0.1, 0.0])
