"""Command-line front end: ``leggett <command> [options]``.

Result documents go to stdout (or ``--out``) as JSON or CSV; logging goes to
stderr. Exit status is 0 on success, 1 on usage or domain errors and 2 when
a property suite, campaign or certificate fails.

"""

import argparse
import csv
import io
import logging
import sys

import numpy as np

from . import analysis, pauli, search, verify
from .config import Config
from .inequalities import MODES, ghz_tensor
from .settings import literal_norm_defects
from .utils import dumps


log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2


class _Parser(argparse.ArgumentParser):

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '%s: error: %s\n' % (self.prog, message))


def _common_options():
    parser = _Parser(add_help=False)
    parser.add_argument('-v', '--verbose', action='count', default=0,
        help='INFO with -v, DEBUG with -vv')
    parser.add_argument('--config', metavar='PATH',
        help='JSON or YAML run settings; flags override it')
    parser.add_argument('--ineq', type=int, choices=(1, 2), default=2,
        help='1 for the single-qubit inequality, 2 for the two-qubit one')
    parser.add_argument('--mode', choices=MODES, default='paper')
    parser.add_argument('--state', choices=('ghz', 'noisy-ghz'), default='ghz')
    parser.add_argument('--noise', type=float, default=0.0, metavar='P',
        help='white-noise fraction for --state noisy-ghz')
    parser.add_argument('--samples', type=int, metavar='N')
    parser.add_argument('--seed', type=int, metavar='S')
    parser.add_argument('--format', choices=('json', 'csv'), default='json')
    parser.add_argument('--out', metavar='PATH')
    parser.add_argument('--paper-literal', action='store_true',
        help='report the norm defects of the literal family-two table')
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--alpha', type=float, help='tilt angle in radians')
    group.add_argument('--alpha-pi', type=float, help='tilt angle as a fraction of pi')
    return parser


def build_parser():

    common = _common_options()
    parser = _Parser(prog='leggett', description='Leggett-model inequalities for a GHZ subsystem.')
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    commands.add_parser('tensor', parents=[common], help='dump the four-qubit correlation tensor')

    sub = commands.add_parser('verify', parents=[common], help='run the property suites')
    sub.add_argument('--suite', action='append', choices=verify.SUITES,
        help='run only this suite (repeatable)')

    sub = commands.add_parser('sweep', parents=[common], help='verdicts over an alpha grid')
    sub.add_argument('--grid', nargs=3, type=float, metavar=('LO', 'HI', 'STEPS'),
        help='grid in radians; default 0 pi/4 1000')

    commands.add_parser('range', parents=[common], help='upper end of the violation range')
    commands.add_parser('max-violation', parents=[common], help='largest margin over alpha')

    sub = commands.add_parser('noise-threshold', parents=[common], help='largest tolerable white noise')
    sub.add_argument('--simulate', action='store_true',
        help='rebuild noisy tensors from density operators')

    sub = commands.add_parser('campaign', parents=[common], help='sample lambdas and check every link')
    sub.add_argument('--model', choices=('A', 'B'), default='B')

    sub = commands.add_parser('optimize', parents=[common], help='search lambdas against the bound')
    sub.add_argument('--model', choices=('A', 'B'), default='B')
    sub.add_argument('--restarts', type=int, metavar='N')
    sub.add_argument('--objective', choices=search.OBJECTIVES, default='deficit')

    return parser


def _alpha(args, default=None):
    if args.alpha_pi is not None:
        return args.alpha_pi * np.pi
    if args.alpha is not None:
        return args.alpha
    return default


def _state(args):
    if args.state == 'ghz':
        if args.noise:
            raise ValueError('--noise needs --state noisy-ghz')
        return pauli.ghz_state(4)
    return pauli.mix_white_noise(pauli.ghz_state(4), args.noise)


def _flatten(raw, prefix=''):
    for key in sorted(raw):
        value = raw[key]
        name = prefix + str(key)
        if isinstance(value, dict):
            for row in _flatten(value, name + '.'):
                yield row
        else:
            yield name, value


def _rows_csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(args, doc, csv_text=None):
    if args.format == 'csv':
        if csv_text is None:
            raw = doc if isinstance(doc, dict) else doc._dump()
            csv_text = _rows_csv(('key', 'value'), _flatten(raw))
        text = csv_text
    else:
        if args.paper_literal:
            raw = doc if isinstance(doc, dict) else doc._dump()
            alpha = _alpha(args, np.pi / 8)
            raw = dict(raw, literal_table={'alpha': alpha, 'norm_defects': literal_norm_defects(alpha)})
            doc = raw
        text = dumps(doc) + '\n'
    if args.out:
        with open(args.out, 'w') as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_tensor(args, config):
    if args.state == 'ghz' and args.noise:
        raise ValueError('--noise needs --state noisy-ghz')
    tensor = analysis.noisy_ghz_tensor(args.noise) if args.state == 'noisy-ghz' else ghz_tensor()
    raw = dict(tensor._dump(), schema='tensor/1', state=args.state, noise=args.noise)
    rows = sorted(raw['entries'].items())
    _emit(args, raw, _rows_csv(('index', 'value'), rows))
    return EXIT_OK


def cmd_verify(args, config):
    report = verify.run_suites(config, args.suite)
    _emit(args, report)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_sweep(args, config):
    if args.grid:
        lo, hi, steps = args.grid
        if steps != int(steps):
            raise ValueError('grid steps must be an integer; got %r' % steps)
    else:
        lo, hi, steps = config.grid['lo'], config.grid['hi'], config.grid['steps']
    result = analysis.sweep_alpha(_state(args), args.ineq, args.mode, (lo, hi, int(steps)), config.tolerances['violation'])
    _emit(args, result, result.to_csv())
    return EXIT_OK


def cmd_range(args, config):
    result = analysis.violation_range(_state(args), args.ineq, args.mode, config.tolerances['range'])
    _emit(args, result)
    return EXIT_OK


def cmd_max_violation(args, config):
    result = analysis.max_violation(_state(args), args.ineq, args.mode, config.tolerances['range'])
    _emit(args, result)
    return EXIT_OK


def cmd_noise_threshold(args, config):
    result = analysis.noise_threshold(args.ineq, args.mode, config.tolerances['noise'],
        tuple(config.noise_bracket), simulate=args.simulate)
    _emit(args, result)
    return EXIT_OK


def cmd_campaign(args, config):
    alpha = _alpha(args)
    if alpha is None:
        alpha = np.linspace(0, np.pi / 4, config.alpha_points)
    report = search.run_campaign(args.model, alpha, config.samples, config.seed, tolerances=config.tolerances)
    _emit(args, report)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_optimize(args, config):
    result = search.maximize_leggett_lhs(
        _alpha(args, 0.0), args.ineq,
        restarts=config.restarts,
        seed=config.seed,
        model=args.model,
        objective=args.objective,
        max_evaluations=config.max_evaluations,
        simplex_tolerance=config.simplex_tolerance,
    )
    _emit(args, result)
    return EXIT_OK if result.sound else EXIT_FAILED


COMMANDS = {
    'tensor': cmd_tensor,
    'verify': cmd_verify,
    'sweep': cmd_sweep,
    'range': cmd_range,
    'max-violation': cmd_max_violation,
    'noise-threshold': cmd_noise_threshold,
    'campaign': cmd_campaign,
    'optimize': cmd_optimize,
}


def main(argv=None):

    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.WARNING if not args.verbose else (logging.INFO if args.verbose == 1 else logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')

    try:
        config = Config()
        if args.config:
            config.load(args.config)
        overrides = dict((k, getattr(args, k, None)) for k in ('seed', 'samples', 'restarts'))
        config.update(dict((k, v) for k, v in overrides.items() if v is not None))

        if args.paper_literal:
            alpha = _alpha(args, np.pi / 8)
            for family, defect in sorted(literal_norm_defects(alpha).items()):
                log.warning('literal table set %d at alpha=%r: norm defect %.6g', family, alpha, defect)

        return COMMANDS[args.command](args, config)

    except (ValueError, TypeError, IOError) as e:
        log.error('%s', e)
        return EXIT_USAGE
