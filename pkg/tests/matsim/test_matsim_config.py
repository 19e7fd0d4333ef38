from fractions import Fraction

import numpy as np
import pytest

from freejacobi.exceptions import DomainException
from freejacobi.matsim.matsim_config import MatrixJacobiConfig
from freejacobi.states import Scheme, StartKind


def make_config(**kwargs) -> MatrixJacobiConfig:
	options = dict(m=2, p=4, d=8, step=0.01, T=0.1, trials=4, seed=7)
	options.update(kwargs)
	return MatrixJacobiConfig(**options)


def test_derived_values():
	config = make_config(record_every=3, snapshot_times=(0.05, 0.1))
	assert config.lam == Fraction(1, 2)
	assert config.theta == Fraction(1, 2)
	assert config.params.alpha == pytest.approx(0.25)
	assert config.steps == 10
	assert config.recorded_steps() == [0, 3, 5, 6, 9, 10]
	assert config.snapshot_steps() == {5: 0.05, 10: 0.1}
	data = config.to_json()
	assert data['lambda'] == '1/2'
	assert data['start'] == 'haar'


@pytest.mark.parametrize('kwargs', [
	dict(m=5, p=4),
	dict(p=9),
	dict(step=0.03),
	dict(step=0),
	dict(trials=0),
	dict(jobs=0),
	dict(seed=-1),
	dict(start=StartKind.stationary),
	dict(start=StartKind.scalar, scalar=1.0),
	dict(start=StartKind.scalar, m=3, p=6, d=8),
	dict(start=StartKind.unitary),
	dict(start=StartKind.unitary, unitary=np.eye(4)),
	dict(start=StartKind.identity, scheme=Scheme.direct_sde),
	dict(snapshot_times=(0.2,)),
	dict(snapshot_times=(0.055,)),
	dict(snapshot_times=(-0.01,)),
])
def test_invalid_configs(kwargs):
	with pytest.raises(DomainException):
		make_config(**kwargs)


def test_scalar_start_of_the_direct_sde_ignores_the_corner_fit():
	config = make_config(start=StartKind.scalar, scheme=Scheme.direct_sde, m=3, p=6, d=8, scalar=0.3)
	assert config.scalar == 0.3
