import argparse
import json
import math
import sys
from typing import Callable, Dict, List, Optional, Union

import numpy as np

from freejacobi import constant
from freejacobi.cauchy.contour import contour, laurent_g, sample_contour
from freejacobi.cauchy.pde import pde_rhs, solve_pde
from freejacobi.exceptions import DomainException, FreeJacobiException, TruncationException
from freejacobi.matsim.diagnostics import ks_distance, martingale_diagnostic
from freejacobi.matsim.matsim_config import MatrixJacobiConfig
from freejacobi.matsim.simulation import simulate_direct_sde, simulate_trajectory
from freejacobi.measures.functionals import moments_of_measure
from freejacobi.measures.spectral_measure import save_measure
from freejacobi.moments.functionals import log_identity_residual, martingale_series
from freejacobi.moments.hierarchy import initial_moments, integrate_moments, m1_exact, relaxation_rate
from freejacobi.output.writers import (
	write_contour_series, write_martingale_series, write_moment_trajectory, write_sim_trajectory, write_snapshots
)
from freejacobi.session import FreeJacobiSession
from freejacobi.states import Scheme, StartKind, parse_enum
from freejacobi.stationary.ladder import branch_diagnostic, stationary_moments
from freejacobi.stationary.law import normalizing_constant, regime_report, stationary_cauchy, stationary_measure
from freejacobi.stationary.params import REGIME_SLACK, JacobiParams
from freejacobi.stationary.potentials import log_potential_integral, log_potentials_by_quadrature, stationary_log_potentials
from freejacobi.stationary.transforms import free_cumulants, k_transform
from freejacobi.utils.misc_util import format_fraction, format_milli, format_vector, get_milli_time
from freejacobi.verify.suites import run_suites, suite_names
from freejacobi.verify.verdict import verdict_json

EXIT_SUCCESS = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

MEASURE_CSV = 'measure.csv'
MEASURE_JSON = 'measure.json'
CUMULANT_COUNT = 6
INVERSE_CONTOUR_POINTS = 16
ORACLE_RADIUS = 2.0
STATIONARY_START = 'stationary'

# command line dest -> config option, the flags override the config file when given
OPTION_FLAGS = [
	'language', 'debug_mode', 'out_dir', 'grid_size', 'moment_table_size', 'truncation_order', 'moment_step',
	'moment_horizon', 'record_every', 'tail_tolerance', 'contour_x_lo', 'contour_x_hi', 'contour_y0', 'contour_dx',
	'pde_step', 'pde_horizon', 'laurent_order', 'seed', 'jobs', 'trials', 'sim_step', 'sim_horizon', 'sim_moment_order',
]

Command = Callable[[FreeJacobiSession, argparse.Namespace], int]


def parse_start(text: str, params: JacobiParams) -> Union[float, JacobiParams]:
	if text.strip().lower() == STATIONARY_START:
		return params
	try:
		return float(text)
	except ValueError:
		raise DomainException('Start should be "{}" or a number c in (0, 1), got "{}"'.format(STATIONARY_START, text)) from None


def cmd_stationary(session: FreeJacobiSession, args: argparse.Namespace) -> int:
	config, logger = session.config, session.logger
	p = JacobiParams(args.lam, args.theta)
	output = session.open_output('stationary', {'lambda': p.lam, 'theta': p.theta, 'grid_size': config.get('grid_size')})
	measure = stationary_measure(p, config.get('grid_size'), logger)
	save_measure(measure, output.path_of(MEASURE_CSV), output.path_of(MEASURE_JSON))
	output.adopt_file(MEASURE_CSV)
	output.adopt_file(MEASURE_JSON)
	report = regime_report(p)
	logger.info(session.tr('stationary.summary', report['x_minus'], report['x_plus'], report['atom0'], report['atom1']))

	if p.theta * (p.lam + 1) > 1 + REGIME_SLACK:
		output.write_json('stationary.json', {'regime': report})
		logger.error(session.tr('stationary.regime_violation', p.theta * (p.lam + 1)))
		session.finish_output(output)
		return EXIT_USAGE

	size = config.get('moment_table_size')
	ladder = stationary_moments(p, size, logger)
	quadrature = moments_of_measure(measure, size)
	output.write_csv('moments.csv', ['n', 'ladder', 'quadrature'], ((n, ladder.values[n], quadrature[n]) for n in range(size + 1)))
	if ladder.fallback:
		logger.warning(session.tr('stationary.ladder_fallback'))
	output.add_health(ladder_fallback=ladder.fallback)

	angles = 2 * math.pi * np.arange(INVERSE_CONTOUR_POINTS) / INVERSE_CONTOUR_POINTS
	test_contour = 0.5 + 2 * np.exp(1j * angles)
	g = stationary_cauchy(p, test_contour)
	diagnostic = branch_diagnostic(p)
	cumulants = free_cumulants(p, CUMULANT_COUNT)
	logger.info(session.tr('stationary.cumulants', format_vector(cumulants)))
	transforms = {
		'free_cumulants': cumulants,
		'inverse_error': max(abs(k_transform(p, complex(v)) - z) for v, z in zip(g, test_contour)),
		'branch_selected': diagnostic.selected,
		'branch_opposite': diagnostic.opposite,
		'branch_consistent': diagnostic.consistent,
		'normalizing_constant': normalizing_constant(p) if measure.has_continuous_part else None,
		'expected_normalizing_constant': 2 * math.pi * p.alpha,
	}
	summary = {'regime': report, 'moment_route': ladder.route.name, 'ladder_fallback': ladder.fallback, 'transforms': transforms}
	if p.sde_valid:
		closed = stationary_log_potentials(p)
		by_quadrature = log_potentials_by_quadrature(p)
		summary['log_potentials'] = {
			'log1m': closed.log1m,
			'logJ': closed.logJ,
			'log1m_quadrature': by_quadrature.log1m,
			'logJ_quadrature': by_quadrature.logJ,
			'log1m_integral': log_potential_integral(p) / 2,
		}
	else:
		logger.warning(session.tr('stationary.no_log_potentials'))
	output.write_json('stationary.json', summary)
	session.finish_output(output)
	return EXIT_SUCCESS


def cmd_moments(session: FreeJacobiSession, args: argparse.Namespace) -> int:
	config, logger = session.config, session.logger
	p = JacobiParams(args.lam, args.theta)
	start = parse_start(args.start, p)
	N, h, T, record_every = config.get('truncation_order'), config.get('moment_step'), config.get('moment_horizon'), config.get('record_every')
	m0 = initial_moments(start, N)
	output = session.open_output('moments', {
		'lambda': p.lam, 'theta': p.theta, 'start': args.start, 'N': N, 'h': h, 'T': T,
		'record_every': record_every, 'dps': args.dps, 'rho': args.rho,
	})
	trajectory = integrate_moments(p, m0 if args.dps is None else list(m0), T, h, N, dps=args.dps, record_every=record_every, rho=args.rho, logger=logger)
	write_moment_trajectory(output, trajectory)
	write_martingale_series(output, [martingale_series(trajectory, k) for k in range(min(N, constant.MAX_CHEBYSHEV_ORDER) + 1)])

	summary = {'m1_closed_form_error': max(abs(float(s.m[1]) - m1_exact(p, float(m0[1]), s.t)) for s in trajectory)}
	try:
		summary['relaxation_rate'] = relaxation_rate(trajectory)
		logger.info(session.tr('moments.relaxation', summary['relaxation_rate']))
	except DomainException:
		summary['relaxation_rate'] = None
	residual = log_identity_residual(trajectory, p, args.rho, config.get('tail_tolerance'))
	output.write_csv('log_identity.csv', ['t', 'residual'], zip((s.t for s in trajectory), residual))
	summary['log_identity_max_residual'] = float(np.max(np.abs(residual)))
	logger.info(session.tr('moments.log_identity', summary['log_identity_max_residual']))
	output.write_json('moments.json', summary)
	session.finish_output(output)
	return EXIT_SUCCESS


def cmd_pde(session: FreeJacobiSession, args: argparse.Namespace) -> int:
	config, logger = session.config, session.logger
	p = JacobiParams(args.lam, args.theta)
	start = parse_start(args.start, p)
	h, T, record_every, order = config.get('pde_step'), config.get('pde_horizon'), config.get('record_every'), config.get('laurent_order')
	points = contour(config.get('contour_x_lo'), config.get('contour_x_hi'), config.get('contour_y0'), config.get('contour_dx'))
	m0 = initial_moments(start, order)
	if isinstance(start, JacobiParams):
		initial = sample_contour(lambda z: stationary_cauchy(p, z), points)
	else:
		initial = sample_contour(lambda z: 1 / (z - start), points)
	output = session.open_output('pde', {
		'lambda': p.lam, 'theta': p.theta, 'start': args.start, 'h': h, 'T': T, 'record_every': record_every,
		'laurent_order': order, 'contour': [config.get('contour_x_lo'), config.get('contour_x_hi'), config.get('contour_y0'), config.get('contour_dx')],
	})
	solution = solve_pde(initial, p, T, h, record_every, logger=logger)
	oracle = integrate_moments(p, m0, T, h, order, record_every=record_every, logger=logger)
	write_contour_series(output, solution)

	region = solution.trust_region & (np.abs(points) >= ORACLE_RADIUS)
	deviations = [
		float(np.max(np.abs(sample.values[region] - laurent_g(s.m, points[region])))) if np.any(region) else float('nan')
		for sample, s in zip(solution.samples, oracle)
	]
	output.write_csv('oracle.csv', ['t', 'max_deviation'], zip((sample.t for sample in solution.samples), deviations))
	report = {
		'trust_region_points': int(np.count_nonzero(solution.trust_region)),
		'contour_points': len(points),
		'filter_order': solution.filter_order,
		'max_defect': solution.max_defect,
		'herglotz_violations': solution.herglotz_violations,
		'max_oracle_deviation': max(deviations),
	}
	if isinstance(start, JacobiParams):
		residual = np.abs(pde_rhs(initial, p))
		report['stationary_residual'] = float(np.max(residual[solution.trust_region])) if np.any(solution.trust_region) else None
		logger.info(session.tr('pde.stationary_residual', report['stationary_residual']))
	logger.info(session.tr('pde.trust', report['trust_region_points'], report['contour_points']))
	logger.info(session.tr('pde.deviation', report['max_oracle_deviation']))
	output.write_json('pde.json', report)
	output.add_health(herglotz_violations=solution.herglotz_violations, trust_region_points=report['trust_region_points'])
	session.finish_output(output)
	return EXIT_SUCCESS


def cmd_simulate(session: FreeJacobiSession, args: argparse.Namespace) -> int:
	config, logger = session.config, session.logger
	T = config.get('sim_horizon')
	sim_config = MatrixJacobiConfig(
		m=args.m, p=args.p, d=args.d, step=config.get('sim_step'), T=T, trials=config.get('trials'), seed=config.get('seed'),
		start=parse_enum(StartKind, args.start), scheme=parse_enum(Scheme, args.scheme),
		moment_order=config.get('sim_moment_order'), record_every=config.get('record_every'),
		snapshot_times=tuple(args.snapshot) if args.snapshot else (T,), scalar=args.scalar,
		unitary=np.load(args.unitary) if args.unitary is not None else None, jobs=config.get('jobs'),
	)
	logger.info(session.tr('simulate.start', sim_config.trials, format_fraction(sim_config.lam), format_fraction(sim_config.theta)))
	output = session.open_output('simulate', sim_config.to_json(), sim_config.seed)
	runner = simulate_trajectory if sim_config.scheme == Scheme.unitary_corner else simulate_direct_sde
	record = runner(sim_config, logger)
	write_sim_trajectory(output, record)
	write_snapshots(output, record)
	if record.trace_mean is not None:
		output.write_csv('traces.csv', ['t', 're_tr_Y', 'im_tr_Y', 're_tr_Y2', 'im_tr_Y2'], (
			(t, mean[0].real, mean[0].imag, mean[1].real, mean[1].imag) for t, mean in zip(record.times, record.trace_mean)
		))
	if sim_config.m == sim_config.p and sim_config.d == 2 * sim_config.m:
		rows = []
		for k in range(constant.MAX_CHEBYSHEV_ORDER + 1):
			diagnostic = martingale_diagnostic(record, k)
			rows.extend(zip(diagnostic.t, [k] * len(diagnostic.t), diagnostic.ck, diagnostic.ck_stderr, diagnostic.scaled, diagnostic.scaled_stderr))
		output.write_csv('martingale.csv', ['t', 'k', 'ck', 'ck_stderr', 'ck_scaled', 'ck_scaled_stderr'], rows)

	params = record.params
	summary = {'final_moments': record.moment_mean[-1], 'final_stderr': record.moment_stderr[-1], 'health': record.health()}
	if params.theta * (params.lam + 1) <= 1 + REGIME_SLACK:
		summary['stationary_moments'] = stationary_moments(params, sim_config.moment_order).values
		summary['ks_distance'] = {t: ks_distance(eigenvalues, params) for t, eigenvalues in record.snapshots.items()}
	output.write_json('simulate.json', summary)
	output.add_health(**record.health())
	logger.info(session.tr('simulate.summary', record.completed_trials, len(record.aborted)))
	if record.flagged:
		logger.warning(session.tr('simulate.flagged', record.clamp_activations, record.steps_taken))
	session.finish_output(output)
	return EXIT_SUCCESS


def cmd_verify(session: FreeJacobiSession, args: argparse.Namespace) -> int:
	results = run_suites(args.suite, args.quick, session.logger)
	verdict = verdict_json(results)
	print(json.dumps(verdict, indent=4))
	if verdict['passed']:
		session.logger.info(session.tr('verify.passed'))
		return EXIT_SUCCESS
	session.logger.error(session.tr('verify.failed', ', '.join(result.name for result in results if not result.passed)))
	return EXIT_FAILURE


COMMANDS: Dict[str, Command] = {
	'stationary': cmd_stationary,
	'moments': cmd_moments,
	'pde': cmd_pde,
	'simulate': cmd_simulate,
	'verify': cmd_verify,
}


def __add_params(parser: argparse.ArgumentParser):
	parser.add_argument('--lambda', dest='lam', type=float, required=True, help='lambda of FJP(lambda, theta)')
	parser.add_argument('--theta', type=float, required=True, help='theta of FJP(lambda, theta)')


def build_parser() -> argparse.ArgumentParser:
	parser = argparse.ArgumentParser(prog=constant.PACKAGE_NAME, description='Numerics of the free Jacobi process')
	parser.add_argument('--config', help='YAML or JSON file overriding the default configuration')
	parser.add_argument('--save-config', help='Write the effective configuration to this path')
	parser.add_argument('--out-dir', dest='out_dir', help='Output directory')
	parser.add_argument('--debug', dest='debug_mode', action='store_const', const=True, help='Show debug logging')
	parser.add_argument('--language', help='Message language, en_us or zh_cn')
	subparsers = parser.add_subparsers(dest='command')

	stationary = subparsers.add_parser('stationary', help='Stationary law: measure, moments, transforms, log potentials')
	__add_params(stationary)
	stationary.add_argument('--grid-size', dest='grid_size', type=int)
	stationary.add_argument('--moment-table-size', dest='moment_table_size', type=int)

	moments = subparsers.add_parser('moments', help='Integrate the moment hierarchy')
	__add_params(moments)
	moments.add_argument('--start', default=STATIONARY_START, help='"stationary" or c for J_0 = cP')
	moments.add_argument('--T', dest='moment_horizon', type=float)
	moments.add_argument('--h', dest='moment_step', type=float)
	moments.add_argument('--N', dest='truncation_order', type=int)
	moments.add_argument('--record-every', dest='record_every', type=int)
	moments.add_argument('--tail-tolerance', dest='tail_tolerance', type=float)
	moments.add_argument('--dps', type=int, help='Integrate in extended precision with this many digits')
	moments.add_argument('--rho', type=float, help='Spectral radius bound certifying the series tails')

	pde = subparsers.add_parser('pde', help='Solve the Cauchy transform PDE on a contour')
	__add_params(pde)
	pde.add_argument('--start', default=STATIONARY_START, help='"stationary" or c for J_0 = cP')
	pde.add_argument('--T', dest='pde_horizon', type=float)
	pde.add_argument('--h', dest='pde_step', type=float)
	pde.add_argument('--x-lo', dest='contour_x_lo', type=float)
	pde.add_argument('--x-hi', dest='contour_x_hi', type=float)
	pde.add_argument('--y0', dest='contour_y0', type=float)
	pde.add_argument('--dx', dest='contour_dx', type=float)
	pde.add_argument('--record-every', dest='record_every', type=int)
	pde.add_argument('--laurent-order', dest='laurent_order', type=int)

	simulate = subparsers.add_parser('simulate', help='Matrix Monte Carlo of the Jacobi process')
	simulate.add_argument('--m', type=int, required=True)
	simulate.add_argument('--p', type=int, required=True)
	simulate.add_argument('--d', type=int, required=True)
	simulate.add_argument('--start', default=StartKind.haar.name, help='haar, identity, scalar or unitary')
	simulate.add_argument('--scheme', default='unitary-corner', help='unitary-corner or direct-sde')
	simulate.add_argument('--scalar', type=float, default=0.5, help='c of the scalar start')
	simulate.add_argument('--unitary', help='.npy file holding the d x d start of the unitary start')
	simulate.add_argument('--snapshot', type=float, action='append', help='Time of an eigenvalue snapshot, repeatable')
	simulate.add_argument('--T', dest='sim_horizon', type=float)
	simulate.add_argument('--step', dest='sim_step', type=float)
	simulate.add_argument('--trials', type=int)
	simulate.add_argument('--seed', type=int)
	simulate.add_argument('--jobs', type=int)
	simulate.add_argument('--record-every', dest='record_every', type=int)
	simulate.add_argument('--moment-order', dest='sim_moment_order', type=int)

	verify = subparsers.add_parser('verify', help='Run acceptance suites, print a JSON verdict')
	verify.add_argument('suite', choices=suite_names())
	verify.add_argument('--quick', action='store_true', help='Shrink the Monte Carlo sizes')
	return parser


def main(argv: Optional[List[str]] = None) -> int:
	parser = build_parser()
	try:
		args = parser.parse_args(argv)
	except SystemExit as e:
		return EXIT_SUCCESS if e.code in (0, None) else EXIT_USAGE

	session = FreeJacobiSession()
	logger = session.logger
	start_time = get_milli_time()
	try:
		if args.config is not None:
			session.load_config(args.config)
		session.override({option: getattr(args, option, None) for option in OPTION_FLAGS})
	except (OSError, KeyError, ValueError) as e:
		logger.error(session.tr('cli.bad_config', e))
		return EXIT_USAGE
	if args.save_config is not None:
		session.config.write_to_file(args.save_config)
		logger.info(session.tr('cli.saved_config', args.save_config))
	if args.command is None:
		if args.save_config is not None:
			return EXIT_SUCCESS
		parser.print_usage(sys.stderr)
		logger.error(session.tr('cli.no_command'))
		return EXIT_USAGE

	logger.debug(session.tr('cli.start', constant.VERSION, args.command))
	try:
		return COMMANDS[args.command](session, args)
	except (DomainException, TruncationException) as e:
		logger.error(session.tr('cli.domain_error', e))
		return EXIT_USAGE
	except FreeJacobiException as e:
		logger.error(session.tr('cli.numerical_error', type(e).__name__, e))
		return EXIT_USAGE
	except (KeyboardInterrupt, SystemExit):
		logger.info(session.tr('cli.interrupted'))
		return EXIT_USAGE
	except Exception:
		logger.exception(session.tr('cli.unexpected_error', args.command))
		return EXIT_USAGE
	finally:
		logger.debug(session.tr('cli.elapsed', format_milli(get_milli_time() - start_time)))
		session.close()
