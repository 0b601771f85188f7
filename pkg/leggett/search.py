"""Empirical certification of the hidden-variable side.

:func:`run_campaign` samples lambdas and checks every per-lambda link;
:func:`maximize_leggett_lhs` pushes the hidden-variable deficit as far as a
derivative-free search can, to show the constants are sound and tight.

"""

import itertools
import logging
from collections import OrderedDict

import numpy as np
from scipy.optimize import minimize

from . import pauli
from .lambdas import (
    MODELS, ChainReport, LambdaAssignment, chain_slacks, counterexample,
    inequality_links, link_constant, outcome_tables, positivity_floor,
    probability_error, product_tensors, sample_lambdas, stats,
)
from .settings import all_sets
from .utils import plain, sample_rng


log = logging.getLogger(__name__)

DEFAULT_TOLERANCES = {
    'chain': 1e-10,
    'integrand': 1e-9,
    'positivity': 1e-12,
}

#: Slack allowed between an optimum and its analytic constant.
CERTIFICATE_TOLERANCE = 1e-6

OBJECTIVES = ('deficit', 'lhs')


def integrand_bound(model, alpha):
    """Pointwise lower bound on the campaign's modulus sum.

    Model B uses all 14 two-qubit moduli (``4|sin 2a|``); model A the
    family-one single-qubit moduli (``2|sin 2a|``).

    """
    return (2 if model == 'A' else 4) * abs(np.sin(2 * alpha))


class CampaignReport(object):

    def __init__(self, model, alphas, seed, tolerances, max_counterexamples=5):
        self.model = model
        self.alphas = list(alphas)
        self.seed = seed
        self.tolerances = tolerances
        self.max_counterexamples = max_counterexamples

        self.samples = 0
        self.failures = 0
        self.min_chain_slack = np.inf
        self.tightest = None
        self.min_integrand_slack = np.inf
        self.min_probability = np.inf
        self.max_probability_error = 0.0
        self.counterexamples = []

    @property
    def passed(self):
        return not self.failures

    def _note_chain(self, chain, where):
        for name, values in chain.slacks.items():
            lowest = float(np.min(values))
            if lowest < self.min_chain_slack:
                self.min_chain_slack = lowest
                self.tightest = '%s@%s' % (name, where)

    def _dump(self):
        return {
            'schema': 'campaign/1',
            'model': self.model,
            'alphas': self.alphas,
            'seed': self.seed,
            'samples': self.samples,
            'failures': self.failures,
            'passed': self.passed,
            'min_chain_slack': plain(self.min_chain_slack),
            'tightest_link': self.tightest,
            'min_integrand_slack': plain(self.min_integrand_slack),
            'min_probability': plain(self.min_probability),
            'max_probability_error': plain(self.max_probability_error),
            'tolerances': dict(self.tolerances),
            'counterexamples': self.counterexamples,
        }


def _set_name(settings):
    return '%s%s' % (settings.family, '^' if settings.swapped else '')


def _check_chunk(report, lambdas, tensors, alpha):

    tol = report.tolerances
    failing = np.zeros(lambdas.shape, dtype=bool)

    for settings in all_sets(alpha):
        cs = stats(lambdas, settings, tensors)
        chain = ChainReport(chain_slacks(cs), settings)
        tables = outcome_tables(cs)
        floor = positivity_floor(cs, tables)

        report._note_chain(chain, _set_name(settings))
        report.min_probability = min(report.min_probability, float(floor.min()))
        report.max_probability_error = max(report.max_probability_error, float(np.max(probability_error(cs, tables))))

        bad = (chain.min_slack < -tol['chain']) | (floor < -tol['positivity'])
        for i in np.flatnonzero(bad):
            if len(report.counterexamples) >= report.max_counterexamples:
                break
            log.warning('chain failure at alpha=%r under %r', alpha, settings)
            report.counterexamples.append(counterexample(lambdas[i], settings, cs.select(i), chain.select(i).slacks))
        failing |= bad

    # Model A is held to the single-qubit moduli, model B to all fourteen.
    which = 1 if report.model == 'A' else 2
    moduli = _Objective(inequality_links(alpha, which)).moduli(tensors[0])
    slack = moduli - integrand_bound(report.model, alpha)
    report.min_integrand_slack = min(report.min_integrand_slack, float(slack.min()))
    failing |= slack < -tol['integrand']

    report.failures += int(failing.sum())


def run_campaign(model, alpha, n, seed=0, tolerances=None, chunk_size=10000, max_counterexamples=5):
    """Sample ``n`` lambdas and check every link at every ``alpha``.

    :param str model: ``'A'`` or ``'B'``.
    :param alpha: One angle or a sequence of them; each sample is checked at all.
    :param int n: Sample count.
    :param int seed: Campaign seed; sample ``i`` depends only on ``(seed, i)``.
    :param dict tolerances: Overrides for ``chain``, ``integrand`` and
        ``positivity``.
    :returns: :class:`CampaignReport`. Failures are counted (one per sample
        and angle) and the first few dumped; nothing is raised.

    """

    if model not in MODELS:
        raise ValueError('unknown model %r' % (model, ))
    if n < 1:
        raise ValueError('campaign needs at least one sample; got %r' % n)
    if chunk_size < 1:
        raise ValueError('chunk size must be positive; got %r' % chunk_size)

    tol = dict(DEFAULT_TOLERANCES)
    tol.update(tolerances or {})
    alphas = [float(a) for a in np.atleast_1d(alpha)]
    report = CampaignReport(model, alphas, seed, tol, max_counterexamples)

    for start in range(0, n, chunk_size):
        count = min(chunk_size, n - start)
        lambdas = sample_lambdas(model, count, seed, start)
        tensors = lambdas.pair_tensors()
        for a in alphas:
            _check_chunk(report, lambdas, tensors, a)
        report.samples += count
        log.info('model %s: %d/%d samples, %d failures, min slack %.3g', model, report.samples, n, report.failures, report.min_chain_slack)

    return report


class LambdaChart(object):
    """Unconstrained coordinates for a lambda.

    Model A uses a polar and an azimuthal angle per qubit (8 numbers). Model
    B uses 7 numbers per two-qubit ket: a real first amplitude and three
    complex ones, normalised after the fact, which fixes the global phase.

    """

    def __init__(self, model):
        if model not in MODELS:
            raise ValueError('unknown model %r' % (model, ))
        self.model = model
        self.size = 8 if model == 'A' else 14

    def _blochs(self, x):
        theta, phi = x[..., 0::2], x[..., 1::2]
        return np.stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1)

    def _kets(self, x):
        x = x.reshape(x.shape[:-1] + (2, 7))
        kets = np.empty(x.shape[:-1] + (4, ), dtype=complex)
        kets[..., 0] = x[..., 0]
        kets[..., 1:] = x[..., 1::2] + 1j * x[..., 2::2]
        norms = np.linalg.norm(kets, axis=-1, keepdims=True)
        return kets / np.where(norms > 0, norms, 1)

    def tensors(self, x):
        """Pair tensors ``(T12, T34)`` for coordinates of shape ``(..., size)``."""
        x = np.asarray(x, dtype=float)
        if self.model == 'A':
            return product_tensors(self._blochs(x))
        kets = self._kets(x)
        return pauli.pair_moments(kets[..., 0, :]), pauli.pair_moments(kets[..., 1, :])

    def assignment(self, x):
        x = np.asarray(x, dtype=float)
        if self.model == 'A':
            return LambdaAssignment('A', blochs=self._blochs(x))
        kets = self._kets(x)
        return LambdaAssignment('B', states=(kets[..., 0, :], kets[..., 1, :]))

    def coordinates(self, lambda_):
        """Inverse of :meth:`assignment`, up to the chart's redundancy."""
        if lambda_.variant != self.model:
            raise ValueError('chart for model %s cannot hold a model %s lambda' % (self.model, lambda_.variant))
        if self.model == 'A':
            u = lambda_.blochs
            x = np.empty(u.shape[:-2] + (8, ))
            x[..., 0::2] = np.arccos(np.clip(u[..., 2], -1, 1))
            x[..., 1::2] = np.arctan2(u[..., 1], u[..., 0])
            return x
        parts = []
        for ket in lambda_.states:
            lead = np.abs(ket[..., :1])
            phase = np.where(lead > 0, ket[..., :1].conj() / np.where(lead > 0, lead, 1), 1)
            ket = ket * phase
            part = np.empty(ket.shape[:-1] + (7, ))
            part[..., 0] = ket[..., 0].real
            part[..., 1::2] = ket[..., 1:].real
            part[..., 2::2] = ket[..., 1:].imag
            parts.append(part)
        return np.concatenate(parts, axis=-1)

    def random(self, rng):
        if self.model == 'A':
            x = np.empty(8)
            x[0::2] = np.arccos(rng.uniform(-1, 1, 4))
            x[1::2] = rng.uniform(-np.pi, np.pi, 4)
            return x
        return rng.standard_normal(14)

    def anchors(self):
        """Products of Pauli eigenstates (and Bell pairs for model B), batched."""
        eigen = np.concatenate([np.eye(3), -np.eye(3)])
        if self.model == 'A':
            blochs = np.array(list(itertools.product(eigen, repeat=4)))
            return LambdaAssignment('A', blochs=blochs)
        singles = [pauli.bloch_state(v).amplitudes for v in eigen]
        kets = [np.kron(u, v) for u, v in itertools.product(singles, repeat=2)]
        r = 2 ** -0.5
        kets.extend(np.array(k, dtype=complex) for k in (
            [r, 0, 0, r], [r, 0, 0, -r], [0, r, r, 0], [0, r, -r, 0],
        ))
        pairs = np.array(list(itertools.product(kets, repeat=2)))
        return LambdaAssignment('B', states=(pairs[:, 0], pairs[:, 1]))


class _Objective(object):
    """Left side and modulus sum of a set of links as tensor forms."""

    def __init__(self, links):
        forms = [link.forms() for link in links]
        self.lhs_form = sum(f[0] for f in forms)
        self.moduli_forms = np.concatenate([f[1] for f in forms])

    def moduli(self, t12):
        """Modulus sum; the moduli only read ``T12``."""
        flat = t12.reshape(t12.shape[:-2] + (16, ))
        return np.abs(flat @ self.moduli_forms.reshape(-1, 16).T).sum(axis=-1)

    def evaluate(self, t12, t34):
        lhs = np.einsum('...ij,ijkl,...kl->...', t12, self.lhs_form, t34)
        return lhs, self.moduli(t12)

    def value(self, t12, t34, objective):
        lhs, moduli = self.evaluate(t12, t34)
        return lhs - moduli if objective == 'deficit' else lhs


def deficit(lambda_, alpha, which):
    """``LHS - moduli`` for each lambda; never below :func:`link_constant`."""
    lhs, moduli = _Objective(inequality_links(alpha, which)).evaluate(*lambda_.pair_tensors())
    return lhs - moduli


class OptimizationResult(object):

    def __init__(self, **kwargs):
        self.__dict__.update(kwargs)

    @property
    def sound(self):
        return self.value >= self.threshold - CERTIFICATE_TOLERANCE

    @property
    def floor_sum(self):
        return float(sum(self.link_floors.values()))

    @property
    def tight(self):
        if not self.link_floors:
            return None
        return abs(self.floor_sum - self.constant) <= CERTIFICATE_TOLERANCE

    def _dump(self):
        return {
            'schema': 'optimization/1',
            'alpha': self.alpha,
            'alpha_over_pi': self.alpha / np.pi,
            'which': self.which,
            'model': self.model,
            'objective': self.objective,
            'restarts': self.restarts,
            'seed': self.seed,
            'value': self.value,
            'threshold': self.threshold,
            'sound': self.sound,
            'lhs': self.lhs,
            'moduli': self.moduli,
            'constant': self.constant,
            'bound': self.bound,
            'link_floors': dict(self.link_floors),
            'floor_sum': self.floor_sum,
            'tight': self.tight,
            'evaluations': self.evaluations,
            'argmin': self.argmin._dump(),
        }


def _descend(func, x0, max_evaluations, simplex_tolerance):
    res = minimize(func, x0, method='Nelder-Mead', options=dict(
        xatol=simplex_tolerance,
        fatol=np.inf,
        maxfev=max_evaluations,
        adaptive=True,
    ))
    return float(res.fun), res.x, int(res.nfev)


def _ranked(values, count):
    order = np.argsort(values, kind='stable')
    return order[:count]


def maximize_leggett_lhs(alpha, which=2, restarts=64, seed=0, model='B', objective='deficit',
                         max_evaluations=10000, simplex_tolerance=1e-8, link_floors=True):
    """Search for the lambda that comes closest to breaking an inequality.

    The hidden-variable side of either inequality says that, for every
    lambda, ``LHS - moduli >= constant`` (the ``deficit`` objective) and
    hence ``LHS >= constant + integrand bound`` (the ``lhs`` objective).
    This drives the chosen objective down with Nelder-Mead from
    ``restarts`` starts: half (rounded up) from the best Pauli-eigenstate
    anchors, the rest from random chart points seeded by ``(seed, restart)``.

    With ``link_floors`` each link is also minimised on its own; the sum of
    those floors is the constant itself whenever every link is tight.

    :returns: :class:`OptimizationResult`; ``sound`` holds when the optimum
        stays above its threshold within 1e-6.

    """

    if which not in (1, 2):
        raise ValueError('unknown inequality %r' % (which, ))
    if objective not in OBJECTIVES:
        raise ValueError('unknown objective %r' % (objective, ))
    if restarts < 1:
        raise ValueError('need at least one restart; got %r' % restarts)

    chart = LambdaChart(model)
    links = inequality_links(alpha, which)
    joint = _Objective(links)
    constant = link_constant(which)
    integrand = 4 * abs(np.sin(2 * alpha)) if which == 2 else 2 * abs(np.sin(2 * alpha))
    # Only single-qubit pure states bound the single-qubit moduli.
    if which == 1 and model == 'B':
        integrand = 0.0
    threshold = constant if objective == 'deficit' else constant + integrand

    anchors = chart.anchors()
    anchor_x = chart.coordinates(anchors)
    anchor_tensors = anchors.pair_tensors()

    def func(x):
        return float(joint.value(*chart.tensors(x), objective=objective))

    starts = [anchor_x[i] for i in _ranked(joint.value(*anchor_tensors, objective=objective), (restarts + 1) // 2)]
    for r in range(len(starts), restarts):
        starts.append(chart.random(sample_rng(seed, r)))

    best = None
    evaluations = 0
    for r, x0 in enumerate(starts):
        value, x, nfev = _descend(func, x0, max_evaluations, simplex_tolerance)
        evaluations += nfev
        log.debug('restart %d: %r after %d evaluations', r, value, nfev)
        if best is None or value < best[0]:
            best = (value, r, x)

    value, index, x = best
    argmin = chart.assignment(x)
    lhs, moduli = joint.evaluate(*chart.tensors(x))
    log.info('inequality %d at alpha=%r: best %s %r from restart %d', which, alpha, objective, value, index)

    floors = OrderedDict()
    if link_floors:
        for link in links:
            single = _Objective([link])
            values = single.value(*anchor_tensors, objective='deficit')
            i = int(_ranked(values, 1)[0])

            def link_func(x, single=single):
                return float(single.value(*chart.tensors(x), objective='deficit'))

            polished, _, nfev = _descend(link_func, anchor_x[i], max_evaluations, simplex_tolerance)
            evaluations += nfev
            floors[link.name] = min(float(values[i]), polished)

    return OptimizationResult(
        alpha=float(alpha),
        which=which,
        model=model,
        objective=objective,
        restarts=restarts,
        seed=seed,
        value=value,
        threshold=float(threshold),
        lhs=float(lhs),
        moduli=float(moduli),
        constant=constant,
        bound=float(constant + integrand),
        link_floors=floors,
        evaluations=evaluations,
        argmin=argmin,
    )
