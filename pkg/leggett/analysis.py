"""Sweeps over the tilt angle, root finding and closed-form cross-checks.

Every margin here is a sinusoid in ``2 * alpha`` on ``[0, pi/4]``: the
family-one settings enter through ``cos 2a`` and ``sin 2a``, the
family-two settings through products of ``cos a`` and ``sin a``, and the
bounds through ``|sin 2a|``. :class:`Sinusoid` fits one from three
evaluations, which gives closed forms to check the numeric answers against.

"""

import csv
import io
import logging

import numpy as np
from scipy.optimize import minimize_scalar

from . import pauli
from .inequalities import VIOLATION_TOLERANCE, as_tensor, bound, ghz_tensor, lhs, verdict
from .utils import plain


log = logging.getLogger(__name__)

QUARTER = np.pi / 4

#: Disagreement between closed form and numeric answer worth a warning.
AGREEMENT = 1e-8

SWEEP_COLUMNS = ('alpha_rad', 'alpha_over_pi', 'lhs', 'bound', 'margin', 'violated')


class Sinusoid(object):
    """``a + b cos(2 alpha) + c sin(2 alpha)``."""

    def __init__(self, a, b, c):
        self.a = float(a)
        self.b = float(b)
        self.c = float(c)

    @classmethod
    def fit(cls, func):
        """Fit from ``func`` at ``alpha`` = 0, pi/8 and pi/4."""
        u, v, w = func(0.0), func(np.pi / 8), func(QUARTER)
        r2 = np.sqrt(2)
        a = (v * r2 - u - w) / (r2 - 2)
        return cls(a, u - a, w - a)

    def __call__(self, alpha):
        return self.a + self.b * np.cos(2 * alpha) + self.c * np.sin(2 * alpha)

    @property
    def amplitude(self):
        return float(np.hypot(self.b, self.c))

    @property
    def phase(self):
        return float(np.arctan2(self.c, self.b))

    def peak(self):
        """``(alpha, value)`` of the maximum over ``2 alpha`` in ``(-pi, pi]``."""
        return self.phase / 2, self.a + self.amplitude

    def falling_root(self):
        """The zero just past the peak, or ``None`` if the sinusoid never vanishes."""
        if not self.amplitude or abs(self.a) > self.amplitude:
            return None
        return (self.phase + np.arccos(-self.a / self.amplitude)) / 2

    def __repr__(self):
        return '<Sinusoid %r + %r cos2a + %r sin2a>' % (self.a, self.b, self.c)

    def _dump(self):
        return {'a': self.a, 'b': self.b, 'c': self.c}


def margin_function(state, which, mode):
    tensor = as_tensor(state)

    def margin(alpha):
        return bound(alpha, which, mode) - lhs(tensor, alpha, which, mode)

    return margin


def margin_sinusoid(state, which, mode):
    return Sinusoid.fit(margin_function(state, which, mode))


class SweepResult(object):

    def __init__(self, which, mode, verdicts):
        self.which = which
        self.mode = mode
        self.verdicts = verdicts

    def rows(self):
        for v in self.verdicts:
            yield v.alpha, float(v.alpha / np.pi), v.lhs, v.bound, v.margin, v.violated

    def violated_alphas(self):
        return [v.alpha for v in self.verdicts if v.violated]

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator='\n')
        writer.writerow(SWEEP_COLUMNS)
        for alpha, over_pi, lhs_, bound_, margin, violated in self.rows():
            writer.writerow([repr(alpha), repr(over_pi), repr(lhs_), repr(bound_), repr(margin), int(violated)])
        return buf.getvalue()

    def _dump(self):
        return {
            'schema': 'sweep/1',
            'which': self.which,
            'mode': self.mode,
            'columns': list(SWEEP_COLUMNS),
            'rows': [[plain(x) for x in row] for row in self.rows()],
        }


def sweep_alpha(state, which=2, mode='paper', grid=(0.0, QUARTER, 1000), tolerance=VIOLATION_TOLERANCE):
    """Evaluate the verdict on ``steps`` evenly spaced angles from ``lo`` to ``hi``."""
    lo, hi, steps = grid
    if steps < 2:
        raise ValueError('sweep needs at least 2 steps; got %r' % (steps, ))
    if not hi > lo:
        raise ValueError('sweep grid is empty or inverted: [%r, %r]' % (lo, hi))
    tensor = as_tensor(state)
    verdicts = [verdict(tensor, a, which, mode, tolerance) for a in np.linspace(lo, hi, int(steps))]
    return SweepResult(which, mode, verdicts)


def bisect(func, lo, hi, tolerance, max_iterations=200):
    """Shrink ``[lo, hi]`` around a sign change of ``func`` to width ``tolerance``.

    :returns: ``(lo, hi, iterations)``; ``func(lo) > 0 >= func(hi)`` or the
        reverse holds throughout.

    """
    f_lo, f_hi = func(lo), func(hi)
    if (f_lo > 0) == (f_hi > 0):
        raise ValueError('no sign change on [%r, %r]: f = %r, %r' % (lo, hi, f_lo, f_hi))
    iterations = 0
    while hi - lo > tolerance and iterations < max_iterations:
        mid = (lo + hi) / 2
        f_mid = func(mid)
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        iterations += 1
        log.debug('bisect %d: [%r, %r]', iterations, lo, hi)
    return lo, hi, iterations


class ThresholdResult(object):

    def __init__(self, quantity, which, mode, bracket, iterations, tolerance, closed_form=None):
        self.quantity = quantity
        self.which = which
        self.mode = mode
        self.bracket = tuple(float(x) for x in bracket)
        self.iterations = iterations
        self.tolerance = tolerance
        self.closed_form = None if closed_form is None else float(closed_form)

    @property
    def value(self):
        return sum(self.bracket) / 2

    @property
    def agrees(self):
        if self.closed_form is None:
            return None
        return abs(self.value - self.closed_form) <= AGREEMENT

    def _dump(self):
        raw = {
            'schema': 'threshold/1',
            'quantity': self.quantity,
            'which': self.which,
            'mode': self.mode,
            'value': self.value,
            'bracket': list(self.bracket),
            'iterations': self.iterations,
            'tolerance': self.tolerance,
            'closed_form': self.closed_form,
            'agrees': self.agrees,
        }
        if self.quantity == 'alpha':
            raw['value_over_pi'] = self.value / np.pi
        return raw


def _peak(margin, tolerance):
    res = minimize_scalar(lambda a: -margin(a), bounds=(0.0, QUARTER), method='bounded', options={'xatol': tolerance})
    alpha = float(res.x)
    # The bounded search never evaluates the end points.
    candidates = [(margin(a), -a) for a in (0.0, alpha, QUARTER)]
    value, neg_alpha = max(candidates)
    return -neg_alpha, float(value)


def _warn_disagreement(what, numeric, closed):
    if closed is not None and abs(numeric - closed) > AGREEMENT:
        log.warning('%s: numeric %r disagrees with closed form %r', what, numeric, closed)


def violation_range(state, which=2, mode='paper', tolerance=1e-10):
    """Upper end of the angles where the inequality is violated.

    Violation starts at ``alpha = 0+`` (the margin vanishes at 0 itself) and
    ends where the margin falls back through zero, found by bisection
    between the margin's peak and ``pi/4``.

    :raises ValueError: if the margin never becomes positive, or is still
        positive at ``pi/4``.

    """
    margin = margin_function(state, which, mode)
    peak_alpha, peak = _peak(margin, 1e-12)
    if peak <= VIOLATION_TOLERANCE:
        raise ValueError('inequality %d (%s) is not violated on [0, pi/4]; peak margin %r' % (which, mode, peak))
    lo, hi, iterations = bisect(margin, peak_alpha, QUARTER, tolerance)
    closed = margin_sinusoid(state, which, mode).falling_root()
    result = ThresholdResult('alpha', which, mode, (lo, hi), iterations, tolerance, closed)
    _warn_disagreement('violation range', result.value, closed)
    return result


class MaxViolation(object):

    def __init__(self, which, mode, alpha, margin, closed_form):
        self.which = which
        self.mode = mode
        self.alpha = float(alpha)
        self.margin = float(margin)
        self.closed_form = closed_form

    def _dump(self):
        closed_alpha, closed_margin = self.closed_form
        return {
            'schema': 'max-violation/1',
            'which': self.which,
            'mode': self.mode,
            'alpha': self.alpha,
            'alpha_over_pi': self.alpha / np.pi,
            'margin': self.margin,
            'closed_form': {'alpha': float(closed_alpha), 'margin': float(closed_margin)},
        }


def max_violation(state, which=2, mode='paper', tolerance=1e-10):
    """Largest margin over ``alpha`` in ``[0, pi/4]`` and where it occurs.

    Found by bounded Brent search (golden section with parabolic steps) and
    checked against the fitted sinusoid's peak, ``sqrt(b^2 + c^2) + a``.

    """
    margin = margin_function(state, which, mode)
    alpha, value = _peak(margin, tolerance)
    closed = margin_sinusoid(state, which, mode).peak()
    _warn_disagreement('max violation', value, closed[1])
    return MaxViolation(which, mode, alpha, value, closed)


def noisy_ghz_tensor(p, simulate=False):
    """GHZ tensor after white noise ``p``; scaled directly unless ``simulate``."""
    if not 0 <= p <= 1:
        raise ValueError('noise fraction must lie in [0, 1]; got %r' % p)
    if simulate:
        return pauli.correlation_tensor(pauli.mix_white_noise(pauli.ghz_state(4), p), n=4)
    return ghz_tensor().scaled(1 - p)


def noise_closed_form(which, mode, bracket=(0.0, 0.1)):
    """Noise fraction where the peak margin of noisy GHZ reaches zero.

    With ``q = 1 - p`` the margin is ``bound(alpha) - q * lhs_ghz(alpha)``;
    writing both as sinusoids, the peak vanishes where
    ``(q l1)^2 + (s - q l2)^2 = (k - q l0)^2``.

    """
    lhs_fit = Sinusoid.fit(lambda a: lhs(ghz_tensor(), a, which, mode))
    bound_fit = Sinusoid.fit(lambda a: bound(a, which, mode))
    k, s = bound_fit.a, bound_fit.c
    l0, l1, l2 = lhs_fit.a, lhs_fit.b, lhs_fit.c
    roots = np.roots([l1 ** 2 + l2 ** 2 - l0 ** 2, 2 * (k * l0 - s * l2), s ** 2 - k ** 2])
    lo, hi = bracket
    for q in sorted(roots.real[np.abs(roots.imag) < 1e-12], reverse=True):
        p = 1 - q
        if lo <= p <= hi and k - q * l0 < 0:
            return float(p)
    return None


def noise_threshold(which=2, mode='paper', tolerance=1e-8, bracket=(0.0, 0.1), simulate=False):
    """Largest white-noise fraction for which GHZ still violates the inequality.

    Bisects ``p`` on the sign of the peak margin over ``alpha``.

    :param bool simulate: Rebuild the noisy tensor from the mixed density
        operator at every step instead of scaling the GHZ tensor.

    """
    lo, hi = bracket
    if not 0 <= lo < hi <= 1:
        raise ValueError('noise bracket must satisfy 0 <= lo < hi <= 1; got %r' % (bracket, ))

    def peak_margin(p):
        return _peak(margin_function(noisy_ghz_tensor(p, simulate), which, mode), 1e-12)[1] - VIOLATION_TOLERANCE

    lo, hi, iterations = bisect(peak_margin, lo, hi, tolerance)
    closed = noise_closed_form(which, mode, bracket)
    result = ThresholdResult('noise', which, mode, (lo, hi), iterations, tolerance, closed)
    if closed is not None and abs(result.value - closed) > tolerance:
        log.warning('noise threshold: numeric %r disagrees with closed form %r', result.value, closed)
    return result
