"""
Acceptance suites. Every suite takes (quick, logger) and returns a SuiteResult; quick shrinks the
Monte Carlo sizes only
"""
import logging
import math
import os
import tempfile
from collections import OrderedDict
from fractions import Fraction
from typing import Callable, Dict, List, NamedTuple, Optional

import numpy as np

from freejacobi import constant
from freejacobi.cauchy.contour import contour, laurent_coefficients, laurent_dg, laurent_g, sample_contour
from freejacobi.cauchy.pde import pde_rhs, pde_rhs_pointwise, solve_pde
from freejacobi.exceptions import FreeJacobiException
from freejacobi.logger import get_logger
from freejacobi.matsim.diagnostics import convergence_order, haar_angle_ks, ks_distance
from freejacobi.matsim.matsim_config import MatrixJacobiConfig
from freejacobi.matsim.simulation import simulate_direct_sde, simulate_trajectory
from freejacobi.matsim.unitary import trial_generator
from freejacobi.measures.quadrature import quadrature
from freejacobi.moments.catalan import arcsine_moment, arcsine_moments, catalan, catalan_identity_check
from freejacobi.moments.functionals import log_identity_residual, martingale_series
from freejacobi.moments.hierarchy import (
	MomentState, fixed_point_moments, initial_moments, integrate_moments, m1_exact, moment_rhs, relaxation_rate
)
from freejacobi.output.run_output import RunOutput
from freejacobi.output.writers import write_sim_trajectory, write_snapshots
from freejacobi.states import Scheme, StartKind
from freejacobi.stationary.ladder import branch_diagnostic, stationary_moment, stationary_moments
from freejacobi.stationary.law import normalizing_constant, stationary_atoms, stationary_cauchy, stationary_density, stationary_measure
from freejacobi.stationary.params import JacobiParams
from freejacobi.stationary.potentials import log_potential_integral, log_potentials_by_quadrature, stationary_log_potentials
from freejacobi.stationary.transforms import k_transform
from freejacobi.utils import file_util
from freejacobi.verify.verdict import SuiteRecorder, SuiteResult

SuiteFunction = Callable[[bool, logging.Logger], SuiteResult]

ARCSINE = JacobiParams(1.0, 0.5)
SWEEP_SEED = 20220614
SWEEP_PAIRS = 200
SWEEP_LAMBDA_RANGE = (0.05, 1.0)
SWEEP_THETA_MIN = 0.02
SWEEP_INTEGRAL_PAIRS = 20
SWEEP_CONTOUR_POINTS = 16
SWEEP_HALF_PLANE_POINTS = 100
MC_SEED = 20220614
START_SCALAR = 0.25
CONTOUR_SPEC = (-4.0, 6.0, 1.0, 0.01)
ORACLE_POINT = 2 + 1j


class MonteCarloSizes(NamedTuple):
	d: int
	m: int
	p: int
	trials: int
	horizon: float
	identity_d: int
	convergence_dims: List[int]
	cross_m: int


FULL_SIZES = MonteCarloSizes(d=200, m=50, p=100, trials=50, horizon=8.0, identity_d=200, convergence_dims=[64, 128, 256], cross_m=100)
QUICK_SIZES = MonteCarloSizes(d=128, m=32, p=64, trials=20, horizon=0.0, identity_d=64, convergence_dims=[32, 64, 128], cross_m=32)


def __sizes(quick: bool) -> MonteCarloSizes:
	return QUICK_SIZES if quick else FULL_SIZES


def __sweep_pairs() -> List[JacobiParams]:
	"""
	Random pairs with lambda in SWEEP_LAMBDA_RANGE and theta in [SWEEP_THETA_MIN, 1 / (lambda + 1)], the SDE regime
	"""
	rng = trial_generator(SWEEP_SEED, 0)
	pairs = []
	for _ in range(SWEEP_PAIRS):
		lam = float(rng.uniform(*SWEEP_LAMBDA_RANGE))
		theta = float(rng.uniform(SWEEP_THETA_MIN, 1 / (lam + 1)))
		pairs.append(JacobiParams(lam, theta))
	return pairs


def stationary_suite(quick: bool, logger: logging.Logger) -> SuiteResult:
	recorder = SuiteRecorder('stationary')
	measure = stationary_measure(ARCSINE)
	arcsine = 1 / (math.pi * np.sqrt(measure.grid * (1 - measure.grid)))
	recorder.at_most('arcsine density', np.max(np.abs(measure.density - arcsine)), 1e-8)
	exact = fixed_point_moments(Fraction(1, 2), Fraction(1, 2), 10)
	recorder.holds('arcsine moments exact', all(exact[n] == arcsine_moment(n) for n in range(11)))
	ladder = stationary_moments(ARCSINE, 10)
	recorder.at_most('arcsine moments float', max(abs(ladder.values[n] - float(arcsine_moment(n))) for n in range(11)), 1e-10)
	recorder.at_most('arcsine log potential', abs(stationary_log_potentials(ARCSINE).log1m + 2 * math.log(2)), 1e-8)
	recorder.at_most('arcsine log potential by quadrature', abs(log_potentials_by_quadrature(ARCSINE).log1m + 2 * math.log(2)), 1e-8)

	pairs = __sweep_pairs()
	logger.debug('Sweeping {} parameter pairs'.format(len(pairs)))
	angles = 2 * math.pi * np.arange(SWEEP_CONTOUR_POINTS) / SWEEP_CONTOUR_POINTS
	test_contour = 0.5 + 2 * np.exp(1j * angles)
	rng = trial_generator(SWEEP_SEED, 1)
	half_plane = rng.uniform(-1, 2, SWEEP_HALF_PLANE_POINTS) + 1j * rng.uniform(1e-3, 2, SWEEP_HALF_PLANE_POINTS)
	mass_error = root_error = inverse_error = normalizer_error = integral_error = 0.0
	herglotz = branch = True
	integral_pairs = 0
	for p in pairs:
		lo, hi = p.edges
		atom0, atom1 = stationary_atoms(p)
		mass = atom0 + atom1 + quadrature(lambda x: stationary_density(p, x), lo, hi)
		mass_error = max(mass_error, abs(mass - 1))
		# monic form of A x^2 - B x + C, whose roots are the edges
		for x in (lo, hi):
			root_error = max(root_error, abs(x * x - p.B / p.A * x + p.C / p.A))
		g = stationary_cauchy(p, test_contour)
		inverse_error = max(inverse_error, max(abs(k_transform(p, complex(v)) - z) for v, z in zip(g, test_contour)))
		normalizer_error = max(normalizer_error, abs(normalizing_constant(p) / (2 * math.pi * p.alpha) - 1))
		herglotz = herglotz and bool(np.all(stationary_cauchy(p, half_plane).imag < 0))
		branch = branch and branch_diagnostic(p).consistent
		if p.strict_interior and integral_pairs < SWEEP_INTEGRAL_PAIRS:
			integral_pairs += 1
			integral_error = max(integral_error, abs(log_potential_integral(p) - 2 * stationary_log_potentials(p).log1m))
	recorder.at_most('sweep mass balance', mass_error, 1e-8)
	recorder.at_most('sweep root identity', root_error, 1e-10)
	recorder.at_most('sweep functional inverse', inverse_error, 1e-8)
	recorder.at_most('sweep normalizing constant', normalizer_error, 1e-8)
	recorder.at_most('sweep log potential integral', integral_error, 1e-7)
	recorder.holds('sweep upper half plane maps to lower', herglotz)
	recorder.holds('sweep branch selection', branch)
	return recorder.result()


def moments_suite(quick: bool, logger: logging.Logger) -> SuiteResult:
	recorder = SuiteRecorder('moments')
	residual = 0.0
	for lam, theta in ((1.0, 0.5), (0.5, 0.5), (0.3, 0.4), (0.8, 0.5)):
		p = JacobiParams(lam, theta)
		residual = max(residual, float(np.max(np.abs(moment_rhs(MomentState(0.0, stationary_moments(p, 12).values, p))))))
	recorder.at_most('stationary fixed point residual', residual, 1e-6)
	p = JacobiParams(0.5, 0.5)
	recursion = [float(v) for v in fixed_point_moments(Fraction(1, 2), Fraction(1, 4), 12)]
	recorder.at_most('fixed point recursion against ladder', np.max(np.abs(np.array(recursion) - stationary_moments(p, 12).values)), 1e-10)

	trajectory = integrate_moments(p, initial_moments(START_SCALAR, 16), T=10.0, h=1e-3, N=16, record_every=100, logger=logger)
	recorder.at_most('m1 against closed form', max(abs(s.m[1] - m1_exact(p, START_SCALAR, s.t)) for s in trajectory), 1e-8)
	recorder.at_most('relaxation rate', abs(relaxation_rate(trajectory) + 1), 0.01)

	flat = integrate_moments(p, initial_moments(p, 16), T=10.0, h=1e-2, N=16, record_every=100, logger=logger)
	recorder.at_most('stationary start stays put', max(float(np.max(np.abs(s.m - flat[0].m))) for s in flat), 1e-6)
	return recorder.result()


def chebyshev_suite(quick: bool, logger: logging.Logger) -> SuiteResult:
	recorder = SuiteRecorder('chebyshev')
	trajectory = integrate_moments(ARCSINE, list(initial_moments(START_SCALAR, 5)), T=5.0, h=2e-3, N=5, dps=40, record_every=50, logger=logger)
	for k in range(6):
		series = martingale_series(trajectory, k)
		recorder.at_most('martingale k={}'.format(k), np.max(np.abs(series.scaled - series.scaled[0])), 1e-6)
	return recorder.result()


def log_identity_suite(quick: bool, logger: logging.Logger) -> SuiteResult:
	recorder = SuiteRecorder('log-identity')
	p = JacobiParams(0.5, 0.5)
	trajectory = integrate_moments(p, initial_moments(START_SCALAR, 80), T=5.0, h=1e-3, N=80, logger=logger)
	recorder.at_most('log identity residual', np.max(np.abs(log_identity_residual(trajectory, p))), 1e-5)
	return recorder.result()


def pde_suite(quick: bool, logger: logging.Logger) -> SuiteResult:
	recorder = SuiteRecorder('pde')
	points = contour(*CONTOUR_SPEC)
	inner = slice(constant.TRUST_MARGIN, len(points) - constant.TRUST_MARGIN)
	p = JacobiParams(0.5, 0.5)
	stationary = sample_contour(lambda z: stationary_cauchy(p, z), points)
	recorder.at_most('stationary residual', np.max(np.abs(pde_rhs(stationary, p)[inner])), 1e-6)

	N = 12
	m = initial_moments(START_SCALAR, N)
	coefficients = laurent_coefficients(lambda z: pde_rhs_pointwise(z, laurent_g(m, z), laurent_dg(m, z), ARCSINE), 4.0, N - 1)
	hierarchy = moment_rhs(MomentState(0.0, m, ARCSINE))[:N - 1]
	recorder.at_most('Laurent coefficients against hierarchy', np.max(np.abs(coefficients - hierarchy)), 1e-8)

	initial = sample_contour(lambda z: 1 / (z - START_SCALAR), points)
	solution = solve_pde(initial, ARCSINE, T=2.0, h=1e-3, record_every=500, logger=logger)
	oracle = integrate_moments(ARCSINE, initial_moments(START_SCALAR, 60), T=2.0, h=1e-3, N=60, record_every=500, logger=logger)
	index = int(np.argmin(np.abs(points - ORACLE_POINT)))
	recorder.holds('oracle point trusted', bool(solution.trust_region[index]))
	deviation = max(abs(sample.values[index] - complex(laurent_g(s.m, ORACLE_POINT))) for sample, s in zip(solution.samples, oracle))
	recorder.at_most('evolved against moment oracle', deviation, 5e-5)
	recorder.at_most('Herglotz violations', solution.herglotz_violations, 0)
	return recorder.result()


def montecarlo_suite(quick: bool, logger: logging.Logger) -> SuiteResult:
	recorder = SuiteRecorder('montecarlo')
	sizes = __sizes(quick)
	step = 0.05
	haar = MatrixJacobiConfig(
		m=sizes.m, p=sizes.p, d=sizes.d, step=step, T=sizes.horizon, trials=sizes.trials, seed=MC_SEED,
		record_every=max(1, int(round(sizes.horizon / step))), snapshot_times=(sizes.horizon,)
	)
	record = simulate_trajectory(haar, logger)
	p = haar.params
	recorder.at_most('Haar start mean of tr J', abs(record.moment_mean[-1, 1] - 0.5), 0.02)
	recorder.at_most('Haar start mean of tr J^2', abs(record.moment_mean[-1, 2] - stationary_moment(p, 2)), 0.02)
	recorder.at_most('Haar start KS distance', ks_distance(record.snapshots[sizes.horizon], p), 0.05)

	d = sizes.identity_d
	identity = MatrixJacobiConfig(m=d // 4, p=d // 2, d=d, step=0.01, T=1.0, trials=sizes.trials, seed=MC_SEED, start=StartKind.identity, record_every=100)
	record = simulate_trajectory(identity, logger)
	recorder.at_most('mean tr Y_1', abs(record.trace_mean[-1, 0].real - math.exp(-0.5)), 0.02)
	recorder.at_most('Haar eigenangle KS', haar_angle_ks(d, 20, MC_SEED), 0.05)

	errors = []
	for dim in sizes.convergence_dims:
		config = MatrixJacobiConfig(m=dim // 4, p=dim // 2, d=dim, step=step, T=0.0, trials=20, seed=MC_SEED)
		record = simulate_trajectory(config, logger)
		bias = record.moment_mean[-1, 2] - stationary_moment(config.params, 2)
		spread = record.moment_stderr[-1, 2] ** 2 * record.completed_trials
		errors.append(math.sqrt(spread + bias ** 2))
	report = convergence_order(sizes.convergence_dims, errors)
	logger.info('Monte Carlo error of tr J^2 against d: {}, fitted order {:.3f}'.format(
		', '.join('{}: {:.3g}'.format(dim, e) for dim, e in zip(sizes.convergence_dims, errors)), report.order
	))
	recorder.holds('error decreases with d', report.monotone)
	recorder.at_least('convergence order', report.order, 0.5)
	return recorder.result()


def cross_scheme_suite(quick: bool, logger: logging.Logger) -> SuiteResult:
	recorder = SuiteRecorder('cross-scheme')
	m = __sizes(quick).cross_m
	records = {}
	for scheme in Scheme:
		config = MatrixJacobiConfig(
			m=m, p=2 * m, d=4 * m, step=0.01, T=1.0, trials=20, seed=MC_SEED,
			start=StartKind.scalar, scheme=scheme, scalar=START_SCALAR, record_every=100
		)
		runner = simulate_trajectory if scheme == Scheme.unitary_corner else simulate_direct_sde
		records[scheme] = runner(config, logger)
	corner, direct = records[Scheme.unitary_corner], records[Scheme.direct_sde]
	for n in (1, 2):
		recorder.at_most('schemes agree on m{}'.format(n), abs(corner.moment_mean[-1, n] - direct.moment_mean[-1, n]), 0.03)
	expected = m1_exact(corner.params, START_SCALAR, 1.0)
	recorder.at_most('corner scheme m1 against closed form', abs(corner.moment_mean[-1, 1] - expected), 0.03)
	recorder.at_most('direct SDE m1 against closed form', abs(direct.moment_mean[-1, 1] - expected), 0.03)
	recorder.holds('direct SDE run not flagged', not direct.flagged)
	return recorder.result()


def __simulation_hashes(config: MatrixJacobiConfig, out_dir: str, logger: logging.Logger) -> Dict[str, str]:
	record = simulate_trajectory(config, logger)
	output = RunOutput(out_dir, 'simulate', config.to_json(), config.seed)
	paths = [write_sim_trajectory(output, record), write_snapshots(output, record)]
	return {os.path.basename(path): file_util.sha256_file(path) for path in paths}


def determinism_suite(quick: bool, logger: logging.Logger) -> SuiteResult:
	recorder = SuiteRecorder('determinism')
	base = dict(m=8, p=16, d=32, step=0.01, T=0.2, trials=8, seed=MC_SEED, record_every=5, snapshot_times=(0.2,))
	with tempfile.TemporaryDirectory() as directory:
		serial = __simulation_hashes(MatrixJacobiConfig(jobs=1, **base), os.path.join(directory, 'serial'), logger)
		parallel = __simulation_hashes(MatrixJacobiConfig(jobs=8, **base), os.path.join(directory, 'parallel'), logger)
		repeated = __simulation_hashes(MatrixJacobiConfig(jobs=8, **base), os.path.join(directory, 'repeated'), logger)
	recorder.holds('jobs 1 and jobs 8 outputs identical', serial == parallel)
	recorder.holds('repeated run outputs identical', parallel == repeated)
	return recorder.result()


def catalan_suite(quick: bool, logger: logging.Logger) -> SuiteResult:
	recorder = SuiteRecorder('catalan')
	recorder.holds('Catalan identity and stationary recurrence', catalan_identity_check(15))
	recorder.holds('Catalan numbers', [catalan(n) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429])
	half = Fraction(1, 2)
	recorder.holds('fixed point recursion at lambda = 1, theta = 1/2', fixed_point_moments(half, half, 8) == arcsine_moments(8))
	return recorder.result()


SUITES: Dict[str, SuiteFunction] = OrderedDict([
	('stationary', stationary_suite),
	('moments', moments_suite),
	('chebyshev', chebyshev_suite),
	('log-identity', log_identity_suite),
	('pde', pde_suite),
	('montecarlo', montecarlo_suite),
	('cross-scheme', cross_scheme_suite),
	('determinism', determinism_suite),
	('catalan', catalan_suite),
])
ALL_SUITES = 'all'


def suite_names() -> List[str]:
	return list(SUITES.keys()) + [ALL_SUITES]


def run_suite(name: str, quick: bool = False, logger: Optional[logging.Logger] = None) -> SuiteResult:
	logger = get_logger(logger)
	if name not in SUITES:
		raise KeyError('Unknown suite {}'.format(name))
	logger.info('Running suite {}{}'.format(name, ' (quick)' if quick else ''))
	try:
		result = SUITES[name](quick, logger)
	except (FreeJacobiException, ArithmeticError, np.linalg.LinAlgError) as e:
		logger.warning('Suite {} raised {}: {}'.format(name, type(e).__name__, e))
		return SuiteRecorder(name).result(error='{}: {}'.format(type(e).__name__, e))
	for check in result.checks:
		if not check.passed:
			logger.warning('Suite {} check failed: {} = {} (limit {})'.format(name, check.name, check.value, check.limit))
	logger.info('Suite {} {} in {:.1f}s'.format(name, 'passed' if result.passed else 'failed', result.seconds))
	return result


def run_suites(name: str, quick: bool = False, logger: Optional[logging.Logger] = None) -> List[SuiteResult]:
	names = list(SUITES.keys()) if name == ALL_SUITES else [name]
	return [run_suite(suite, quick, logger) for suite in names]
