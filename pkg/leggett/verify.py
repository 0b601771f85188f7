"""Property suites run by ``leggett verify``.

Each suite returns a :class:`SuiteResult` of named checks; a check records
its worst observed value and whether that value is within tolerance.

"""

import itertools
import logging
from collections import OrderedDict

import numpy as np

from . import pauli
from .inequalities import ghz_tensor
from .lambdas import taxi_norm, touched_pairs
from .search import run_campaign
from .settings import all_sets, family_one, family_two
from .utils import plain, sample_rng


log = logging.getLogger(__name__)

SUITES = ('tensor', 'settings', 'purity', 'taxi', 'chain-A', 'chain-B', 'complementarity')

#: GHZ four-body correlations: index -> value; every other weight-4 entry is 0.
GHZ_CORRELATIONS = dict(
    [((3, 3, 3, 3), 1.0), ((1, 1, 1, 1), 1.0), ((2, 2, 2, 2), 1.0)]
    + [(index, -1.0) for index in set(itertools.permutations((1, 1, 2, 2)))]
)


class SuiteResult(object):

    def __init__(self, name):
        self.name = name
        self.checks = OrderedDict()
        self.details = {}

    def check(self, name, value, ok):
        self.checks[name] = (plain(value), bool(ok))
        if not ok:
            log.warning('%s: %s failed with %r', self.name, name, value)

    @property
    def passed(self):
        return all(ok for _, ok in self.checks.values())

    def _dump(self):
        raw = {
            'passed': self.passed,
            'checks': dict((k, {'value': v, 'ok': ok}) for k, (v, ok) in self.checks.items()),
        }
        if self.details:
            raw['details'] = self.details
        return raw


class VerificationReport(object):

    def __init__(self, suites):
        self.suites = suites

    @property
    def passed(self):
        return all(s.passed for s in self.suites)

    def _dump(self):
        return {
            'schema': 'verify/1',
            'passed': self.passed,
            'suites': dict((s.name, s) for s in self.suites),
        }


def _random_four_qubit(seed, index):
    rng = sample_rng(seed, index)
    return pauli.PureState(pauli.haar_amplitudes(rng, 1, 16)[0])


def check_tensor(config):
    res = SuiteResult('tensor')
    tensor = ghz_tensor()

    worst = 0.0
    for index in tensor.indices(weight=4):
        worst = max(worst, abs(tensor[index] - GHZ_CORRELATIONS.get(index, 0.0)))
    res.check('ghz_four_body', worst, worst <= 1e-12)
    res.check('ghz_zz_pair', tensor[3, 3, 0, 0], abs(tensor[3, 3, 0, 0] - 1) <= 1e-12)
    res.check('ghz_marginal', tensor[1, 0, 0, 0], abs(tensor[1, 0, 0, 0]) <= 1e-12)

    worst_reduced = worst_noise = worst_linear = 0.0
    for i in range(10):
        psi = _random_four_qubit(config.seed, i)
        full = pauli.correlation_tensor(psi, n=4)
        reduced = pauli.correlation_tensor(pauli.partial_trace(psi, [0, 1]), n=2)
        worst_reduced = max(worst_reduced, np.abs(full.entries[:, :, 0, 0] - reduced.entries).max())

        p = sample_rng(config.seed, i).uniform()
        noisy = pauli.correlation_tensor(pauli.mix_white_noise(psi, p), n=4)
        worst_noise = max(worst_noise, np.abs(noisy.entries - full.scaled(1 - p).entries).max())

        rng = sample_rng(config.seed, 1000 + i)
        u, v = [x / np.linalg.norm(x) for x in rng.standard_normal((2, 3))]
        w = rng.uniform()
        fixed = [pauli.IDENTITY, u, v]
        mixed = pauli.expectation(full, [w * u + (1 - w) * v] + fixed, strict=False)
        split = w * pauli.expectation(full, [u] + fixed) + (1 - w) * pauli.expectation(full, [v] + fixed)
        worst_linear = max(worst_linear, abs(mixed - split))

    res.check('reduced_tensor', worst_reduced, worst_reduced <= 1e-10)
    res.check('white_noise_scaling', worst_noise, worst_noise <= 1e-12)
    res.check('linearity', worst_linear, worst_linear <= 1e-10)
    return res


def check_settings(config):
    res = SuiteResult('settings')
    worst_norm = worst_one = worst_two = 0.0
    for alpha in np.linspace(-np.pi / 2, np.pi / 2, 201):
        for s in all_sets(alpha):
            worst_norm = max(worst_norm, max(abs(np.linalg.norm(v) - 1) for v in s.vectors()))
        for s in family_one(alpha):
            worst_one = max(worst_one, abs(np.linalg.norm(s.a - s.a_prime) - 2 * abs(np.sin(2 * alpha))))
        for s in family_two(alpha):
            worst_two = max(worst_two, abs(np.linalg.norm(s.a - s.a_prime) - 2 * abs(np.sin(alpha))))
    res.check('unit_norm', worst_norm, worst_norm <= 1e-12)
    res.check('family_one_difference', worst_one, worst_one <= 1e-12)
    res.check('family_two_difference', worst_two, worst_two <= 1e-12)

    expected = set(itertools.product(range(4), repeat=2)) - {(0, 0), (3, 3)}
    touched = touched_pairs(np.pi / 8)
    res.check('touched_pairs', len(touched), touched == expected)
    return res


def check_purity(config):
    res = SuiteResult('purity')
    rng = np.random.default_rng(config.seed)
    tensors = pauli.pair_moments(pauli.haar_amplitudes(rng, config.haar_samples, 4))
    total = (tensors ** 2).sum(axis=(-2, -1))
    corr = (tensors[:, 1:, 1:] ** 2).sum(axis=(-2, -1))
    abs_sum = np.abs(tensors).sum(axis=(-2, -1))
    excluded = abs_sum - np.abs(tensors[:, 0, 0]) - np.abs(tensors[:, 3, 3])

    res.check('total_square', np.abs(total - 4).max(), np.abs(total - 4).max() < 1e-9)
    res.check('correlation_square_min', corr.min(), corr.min() >= 1 - 1e-9)
    res.check('correlation_square_max', corr.max(), corr.max() <= 3 + 1e-9)
    res.check('abs_exceeds_square', (abs_sum - total).min(), (abs_sum - total).min() >= -1e-9)
    res.check('excluded_abs_sum', excluded.min(), excluded.min() >= 2 - 1e-9)

    product = pauli.two_qubit_tensor(pauli.product_state(
        pauli.haar_pure(2, config.seed), pauli.haar_pure(2, config.seed + 1)))
    bell = pauli.two_qubit_tensor(pauli.ghz_state(2))
    res.check('product_state', product.correlation_square(), abs(product.correlation_square() - 1) <= 1e-9)
    res.check('bell_state', bell.correlation_square(), abs(bell.correlation_square() - 3) <= 1e-9)
    return res


def check_taxi(config):
    res = SuiteResult('taxi')
    rng = np.random.default_rng(config.seed)
    vectors = rng.standard_normal((config.haar_samples, 3))
    vectors /= np.linalg.norm(vectors, axis=-1, keepdims=True)
    lowest = min(taxi_norm(v) for v in vectors)
    res.check('random_vectors', lowest, lowest >= 1 - 1e-12)
    axis = taxi_norm([1.0, 0.0, 0.0])
    res.check('axis_equality', axis, abs(axis - 1) <= 1e-12)
    return res


def _alphas(config):
    return np.linspace(0, np.pi / 4, config.alpha_points)


def check_campaign(config, model):
    name = 'chain-%s' % model
    res = SuiteResult(name)
    report = run_campaign(model, _alphas(config), config.samples, config.seed, tolerances=config.tolerances)
    res.check('failures', report.failures, report.passed)
    res.check('min_chain_slack', report.min_chain_slack, report.min_chain_slack >= -config.tolerances['chain'])
    res.check('min_integrand_slack', report.min_integrand_slack, report.min_integrand_slack >= -config.tolerances['integrand'])
    res.check('min_probability', report.min_probability, report.min_probability >= -config.tolerances['positivity'])
    res.check('probability_sum', report.max_probability_error, report.max_probability_error <= 1e-10)
    res.details['tightest_link'] = report.tightest
    res.details['samples'] = report.samples
    if report.counterexamples:
        res.details['counterexamples'] = report.counterexamples
    return res


def check_complementarity(config):
    """A state with every GHZ four-body correlation leaves qubits 1-2 only zz."""
    res = SuiteResult('complementarity')
    reduced = pauli.correlation_tensor(pauli.partial_trace(pauli.ghz_state(4), [0, 1]), n=2)
    support = set(zip(*[i.tolist() for i in np.nonzero(np.abs(reduced.entries) > 1e-12)]))
    res.check('reduced_support', sorted(support), support <= {(0, 0), (3, 3), (3, 0), (0, 3)})
    res.check('excluded_abs_sum', reduced.excluded_abs_sum(), reduced.excluded_abs_sum() <= 1e-12)
    return res


_SUITE_FUNCS = {
    'tensor': check_tensor,
    'settings': check_settings,
    'purity': check_purity,
    'taxi': check_taxi,
    'chain-A': lambda config: check_campaign(config, 'A'),
    'chain-B': lambda config: check_campaign(config, 'B'),
    'complementarity': check_complementarity,
}


def run_suites(config, names=None):
    """Run the named suites (all by default) and collect a report."""
    names = list(names or SUITES)
    unknown = [n for n in names if n not in _SUITE_FUNCS]
    if unknown:
        raise ValueError('unknown suites: %s' % ', '.join(unknown))
    results = []
    for name in names:
        log.info('running suite %s', name)
        results.append(_SUITE_FUNCS[name](config))
    return VerificationReport(results)
