import logging

import pytest

from freejacobi.stationary.params import JacobiParams


@pytest.fixture
def arcsine() -> JacobiParams:
	return JacobiParams(1.0, 0.5)


@pytest.fixture
def half() -> JacobiParams:
	return JacobiParams(0.5, 0.5)


@pytest.fixture
def logger() -> logging.Logger:
	return logging.getLogger('freejacobi.test')
