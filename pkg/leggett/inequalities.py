"""Quantum values of the single- and two-qubit inequalities, and their bounds.

Two constant modes are supported:

``paper``
    The published constants: two-qubit bound ``-76 + 4|sin 2a|`` against the
    GHZ closed form ``-32 - 44 cos 2a`` (scaled by the state's GHZ
    visibility).

``rederived``
    Constants re-summed from the per-lambda chain (``-44``), against the
    left side simulated by exact tensor contraction.

The single-qubit inequality has the same bound ``-6 + 2|sin 2a|`` in both
modes.

"""

import functools
import logging

import numpy as np

from . import pauli
from .lambdas import inequality_links, link_constant, tensor_stats
from .utils import plain


log = logging.getLogger(__name__)

MODES = ('paper', 'rederived')
INEQUALITIES = (1, 2)

#: Published constant of the two-qubit bound.
REPORTED_CONSTANT = -76

#: Violation flag threshold on the margin.
VIOLATION_TOLERANCE = 1e-9


def _check(which=None, mode=None):
    if which is not None and which not in INEQUALITIES:
        raise ValueError('unknown inequality %r; expected 1 or 2' % (which, ))
    if mode is not None and mode not in MODES:
        raise ValueError('unknown mode %r; expected one of %s' % (mode, ', '.join(MODES)))


def as_tensor(state):
    """Four-qubit correlation tensor of a state, or the tensor itself."""
    if isinstance(state, pauli.CorrelationTensor):
        tensor = state
    else:
        tensor = pauli.correlation_tensor(state, n=4)
    if tensor.n != 4:
        raise ValueError('expected a four-qubit tensor; got %d qubits' % tensor.n)
    return tensor


@functools.lru_cache(maxsize=None)
def ghz_tensor():
    return pauli.correlation_tensor(pauli.ghz_state(4), n=4)


def ghz_visibility(state):
    """Projection of the state's four-body correlations on those of GHZ.

    1 for GHZ itself, ``1 - p`` after white noise ``p``, 0 for the maximally
    mixed state.

    """
    reference = ghz_tensor()
    tensor = as_tensor(state)
    mask = np.zeros((4, ) * 4, dtype=bool)
    for index in reference.indices(weight=4):
        mask[index] = True
    ref = reference.entries[mask]
    return float(np.dot(tensor.entries[mask], ref) / np.dot(ref, ref))


def _links_lhs(tensor, alpha, which):
    total = 0.0
    for link in inequality_links(alpha, which):
        total += link.lhs(tensor_stats(tensor, link.settings))
    return float(total)


def single_qubit_lhs(state, alpha):
    """``sum_i <A_i B_i C_i D_i> + <A'_i B_i C_i D_i>`` over family one."""
    return _links_lhs(as_tensor(state), alpha, 1)


def two_qubit_lhs(state, alpha):
    """Family one, its swapped variant and twice the family-two products."""
    return _links_lhs(as_tensor(state), alpha, 2)


def reported_two_qubit_lhs(state, alpha):
    return ghz_visibility(state) * (-32 - 44 * np.cos(2 * alpha))


def single_qubit_bound(alpha):
    return -6 + 2 * abs(np.sin(2 * alpha))


def two_qubit_bound(alpha, mode='paper'):
    _check(mode=mode)
    constant = REPORTED_CONSTANT if mode == 'paper' else link_constant(2)
    return constant + 4 * abs(np.sin(2 * alpha))


def lhs(state, alpha, which, mode='paper'):
    _check(which, mode)
    if which == 1:
        return single_qubit_lhs(state, alpha)
    if mode == 'paper':
        return reported_two_qubit_lhs(state, alpha)
    return two_qubit_lhs(state, alpha)


def bound(alpha, which, mode='paper'):
    _check(which, mode)
    if which == 1:
        return single_qubit_bound(alpha)
    return two_qubit_bound(alpha, mode)


class InequalityVerdict(object):

    def __init__(self, alpha, which, mode, lhs, bound, tolerance=VIOLATION_TOLERANCE):
        self.alpha = float(alpha)
        self.which = which
        self.mode = mode
        self.lhs = float(lhs)
        self.bound = float(bound)
        self.tolerance = tolerance

    @property
    def margin(self):
        return self.bound - self.lhs

    @property
    def violated(self):
        return self.margin > self.tolerance

    def __repr__(self):
        return '<InequalityVerdict %d/%s alpha=%r margin=%r>' % (self.which, self.mode, self.alpha, self.margin)

    def _dump(self):
        return {
            'schema': 'verdict/1',
            'alpha': self.alpha,
            'alpha_over_pi': self.alpha / np.pi,
            'which': self.which,
            'mode': self.mode,
            'lhs': self.lhs,
            'bound': self.bound,
            'margin': plain(self.margin),
            'violated': self.violated,
        }


def verdict(state, alpha, which=2, mode='paper', tolerance=VIOLATION_TOLERANCE):
    """Compare a state's left side against the hidden-variable bound.

    :param state: :class:`~leggett.pauli.PureState`,
        :class:`~leggett.pauli.DensityOperator` or a four-qubit
        :class:`~leggett.pauli.CorrelationTensor`.
    :param float alpha: Tilt angle in radians.
    :param int which: 1 for the single-qubit inequality, 2 for the two-qubit one.
    :param str mode: ``paper`` or ``rederived``.
    :returns: :class:`InequalityVerdict`.

    """
    _check(which, mode)
    tensor = as_tensor(state)
    return InequalityVerdict(alpha, which, mode, lhs(tensor, alpha, which, mode), bound(alpha, which, mode), tolerance)
