"""Hidden-variable statistics and the per-lambda inequality chain.

A value of the hidden variable fixes pure states for the subsystems:

- model ``A``: one Bloch vector per qubit (four single-qubit pure states);
- model ``B``: one two-qubit pure state for qubits 1-2 and one for 3-4.

Both reduce to a pair of two-qubit tensors ``(T12, T34)``, and every average
of a setting set factorises as ``T12(w1, w2) * T34(w3, w4)``. All functions
here accept a batch of lambdas (leading axes on the arrays) as readily as a
single one.

"""

import itertools
import logging
import re
from collections import OrderedDict

import numpy as np

from . import pauli
from .settings import family_one, family_two, triangle_swap
from .utils import frozen, is_unit, plain, sample_rng


log = logging.getLogger(__name__)

MODELS = ('A', 'B')

#: Slot symbols per qubit; the empty symbol is the unmeasured slot.
SLOTS = (('', 'A', "A'"), ('', 'B', "B'"), ('', 'C'), ('', 'D'))

#: The four outcomes ``(a, b, c, d)`` in table order.
OUTCOMES = tuple(itertools.product((1, -1), repeat=4))

_SUBSETS = tuple(itertools.product((False, True), repeat=4))

# _SIGNS[o, s] is the product of outcome o's signs over subset s.
_SIGNS = np.array([
    [np.prod([x for x, used in zip(outcome, subset) if used]) for subset in _SUBSETS]
    for outcome in OUTCOMES
], dtype=float)


class ChainViolation(ValueError):

    def __init__(self, message, dump):
        super(ChainViolation, self).__init__(message)
        self.dump = dump


class LambdaAssignment(object):
    """One hidden-variable value, or a batch of them.

    :param str variant: ``'A'`` or ``'B'``.
    :param blochs: model A; array of shape ``(..., 4, 3)``.
    :param states: model B; pair of arrays of shape ``(..., 4)``.

    """

    def __init__(self, variant, blochs=None, states=None):

        if variant not in MODELS:
            raise ValueError('unknown model %r' % (variant, ))
        self.variant = variant
        self.blochs = None
        self.states = None

        if variant == 'A':
            blochs = np.asarray(blochs, dtype=float)
            if blochs.shape[-2:] != (4, 3):
                raise ValueError('model A needs four Bloch vectors; got shape %r' % (blochs.shape, ))
            if not is_unit(blochs):
                raise ValueError('model A Bloch vectors must be unit length')
            self.blochs = frozen(blochs)
            self.shape = blochs.shape[:-2]

        else:
            if states is None or len(states) != 2:
                raise ValueError('model B needs two two-qubit states')
            first, second = [np.asarray(s, dtype=complex) for s in states]
            if first.shape[-1] != 4 or first.shape != second.shape:
                raise ValueError('model B states must have matching shape (..., 4)')
            for s in (first, second):
                norms = np.einsum('...a,...a->...', s.conj(), s).real
                if np.abs(norms - 1).max() > pauli.ATOL:
                    raise ValueError('model B states must be normalized')
            self.states = (frozen(first), frozen(second))
            self.shape = first.shape[:-1]

    def __len__(self):
        if not self.shape:
            raise TypeError('single lambda has no length')
        return self.shape[0]

    def __getitem__(self, index):
        if self.variant == 'A':
            return LambdaAssignment('A', blochs=self.blochs[index])
        return LambdaAssignment('B', states=(self.states[0][index], self.states[1][index]))

    def pair_tensors(self):
        """The two-qubit tensors ``(T12, T34)``, each of shape ``(..., 4, 4)``."""
        if self.variant == 'A':
            return product_tensors(self.blochs)
        return pauli.pair_moments(self.states[0]), pauli.pair_moments(self.states[1])

    def state(self):
        """The four-qubit product ket of a single lambda."""
        if self.shape:
            raise ValueError('state() needs a single lambda; got shape %r' % (self.shape, ))
        if self.variant == 'A':
            return pauli.product_state(*[pauli.bloch_state(u) for u in self.blochs])
        return pauli.product_state(*[pauli.PureState(s) for s in self.states])

    def _dump(self):
        if self.variant == 'A':
            return {'model': 'A', 'bloch_vectors': self.blochs.tolist()}
        return {
            'model': 'B',
            'states': [[[a.real, a.imag] for a in s.tolist()] for s in self.states],
        }

    @classmethod
    def _load(cls, raw):
        raw = dict(raw)
        model = raw.pop('model', None)
        if model == 'A':
            obj = cls('A', blochs=raw.pop('bloch_vectors'))
        elif model == 'B':
            states = [[complex(re, im) for re, im in s] for s in raw.pop('states')]
            obj = cls('B', states=states)
        else:
            raise ValueError('unknown model %r' % (model, ))
        if raw:
            raise ValueError('unknown lambda keys: %s' % ', '.join(sorted(raw)))
        return obj


def product_tensors(blochs):
    """Pair tensors of four single-qubit pure states, ``blochs`` of shape ``(..., 4, 3)``."""
    blochs = np.asarray(blochs, dtype=float)
    ones = np.ones(blochs.shape[:-1] + (1, ))
    ext = np.concatenate([ones, blochs], axis=-1)
    t12 = ext[..., 0, :, None] * ext[..., 1, None, :]
    t34 = ext[..., 2, :, None] * ext[..., 3, None, :]
    return t12, t34


def _random_unit(rng, count):
    v = rng.standard_normal((count, 3))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def sample_lambdas(variant, count, seed, start=0):
    """Draw ``count`` lambdas; sample ``i`` uses :func:`sample_rng` ``(seed, start + i)``.

    Model A draws uniform Bloch vectors, model B Haar-random two-qubit kets.

    """
    if variant not in MODELS:
        raise ValueError('unknown model %r' % (variant, ))
    if count < 1:
        raise ValueError('need at least one sample; got %r' % count)
    if variant == 'A':
        blochs = np.empty((count, 4, 3))
        for i in range(count):
            blochs[i] = _random_unit(sample_rng(seed, start + i), 4)
        return LambdaAssignment('A', blochs=blochs)
    states = np.empty((2, count, 4), dtype=complex)
    for i in range(count):
        states[:, i] = pauli.haar_amplitudes(sample_rng(seed, start + i), 2, 4)
    return LambdaAssignment('B', states=(states[0], states[1]))


class CorrelationSet(object):
    """Averages of the products of observables under one setting set.

    Labels concatenate slot symbols, e.g. ``"A'BCD"`` or ``"AB"``. Missing
    labels read as zero and the empty label as one, so hand-made sets only
    need their non-zero averages.

    """

    def __init__(self, averages=None, settings=None):
        self.averages = dict(averages or {})
        self.settings = settings

    def __getitem__(self, label):
        if not label:
            return 1.0
        return self.averages.get(label, 0.0)

    def __contains__(self, label):
        return label in self.averages

    def has_prime(self, symbol):
        return any(symbol + "'" in label for label in self.averages)

    def select(self, index):
        return CorrelationSet(dict((k, v[index]) for k, v in self.averages.items()), self.settings)

    def _dump(self):
        return dict((k, plain(v)) for k, v in self.averages.items())


def split_label(label):
    """Split ``"A'BCD"`` into per-qubit slot symbols ``("A'", 'B', 'C', 'D')``."""
    parts = re.findall(r"[ABCD]'?", label)
    if ''.join(parts) != label:
        raise ValueError('malformed label %r' % (label, ))
    symbols = ['', '', '', '']
    for part in parts:
        q = 'ABCD'.index(part[0])
        if symbols[q] or part not in SLOTS[q]:
            raise ValueError('malformed label %r' % (label, ))
        symbols[q] = part
    return tuple(symbols)


def _slot_table(slots, symbols):
    names = [s for s in symbols if not s or s in slots]
    weights = np.array([pauli.slot_weights(slots[s] if s else pauli.IDENTITY) for s in names])
    return names, weights


def _labelled(tables, values):
    averages = {}
    for combo in itertools.product(*[enumerate(names) for names, _ in tables]):
        label = ''.join(name for _, name in combo)
        if label:
            averages[label] = values[(Ellipsis, ) + tuple(i for i, _ in combo)]
    return averages


def stats(lambda_, settings, tensors=None):
    """Averages of every product of the setting set's observables.

    :param tensors: ``lambda_.pair_tensors()``, when the caller already has
        them; they do not depend on the settings.

    """
    t12, t34 = lambda_.pair_tensors() if tensors is None else tensors
    slots = settings.slots()
    tables = [_slot_table(slots, symbols) for symbols in SLOTS]
    p12 = tables[0][1] @ t12 @ tables[1][1].T
    p34 = tables[2][1] @ t34 @ tables[3][1].T
    values = p12[..., :, :, None, None] * p34[..., None, None, :, :]
    return CorrelationSet(_labelled(tables, values), settings)


def tensor_stats(tensor, settings):
    """The same averages for a four-qubit quantum state's tensor."""
    slots = settings.slots()
    tables = [_slot_table(slots, symbols) for symbols in SLOTS]
    values = np.einsum('ijkl,ai,bj,ck,dl->abcd', tensor.entries, *[w for _, w in tables])
    return CorrelationSet(_labelled(tables, values), settings)


def _symbols(a_prime, b_prime):
    return ("A'" if a_prime else 'A', "B'" if b_prime else 'B', 'C', 'D')


def outcome_table(cs, a_prime=False, b_prime=False):
    """All 16 outcome probabilities, in :data:`OUTCOMES` order, on the last axis."""
    symbols = _symbols(a_prime, b_prime)
    columns = [
        cs[''.join(s for s, used in zip(symbols, subset) if used)]
        for subset in _SUBSETS
    ]
    moments = np.stack(np.broadcast_arrays(*columns), axis=-1)
    return moments @ _SIGNS.T / 16


def outcome_probability(cs, outcomes, a_prime=False, b_prime=False):
    outcomes = tuple(int(o) for o in outcomes)
    if len(outcomes) != 4 or any(o not in (1, -1) for o in outcomes):
        raise ValueError('outcomes must be four signs; got %r' % (outcomes, ))
    return outcome_table(cs, a_prime, b_prime)[..., OUTCOMES.index(outcomes)]


def _variants(cs):
    return [
        (a, b)
        for a in ((False, True) if cs.has_prime('A') else (False, ))
        for b in ((False, True) if cs.has_prime('B') else (False, ))
    ]


def outcome_tables(cs):
    """:func:`outcome_table` of every primed variant, stacked on a new first axis."""
    return np.stack([outcome_table(cs, a, b) for a, b in _variants(cs)])


def positivity_floor(cs, tables=None):
    """Smallest outcome probability over every primed variant of the set."""
    tables = outcome_tables(cs) if tables is None else tables
    return tables.min(axis=-1).min(axis=0)


def probability_error(cs, tables=None):
    """Largest ``|sum(P) - 1|`` over the primed variants."""
    tables = outcome_tables(cs) if tables is None else tables
    return np.abs(tables.sum(axis=-1) - 1).max(axis=0)


def check_positivity(cs, tolerance=1e-12):
    ok = positivity_floor(cs) >= -tolerance
    return bool(ok) if np.ndim(ok) == 0 else ok


def chain_slacks(cs):
    """Slack of every chain link the set's observables allow.

    Each slack is the left side of a ``... >= 0`` link; all are
    non-negative for a physical lambda.

    """
    abcd = cs['ABCD']
    slacks = OrderedDict()
    slacks['same_pairs'] = abcd + cs['AB'] + cs['CD'] - abs(cs['A'] + cs['BCD'] + cs['B'] + cs['ACD']) + 1
    slacks['opposite_pairs'] = abcd - cs['AB'] - cs['CD'] - abs(cs['A'] + cs['BCD'] - cs['B'] - cs['ACD']) + 1
    slacks['single_marginal'] = abcd - abs(cs['A'] + cs['BCD']) + 1
    slacks['pair_marginal'] = abcd - abs(cs['AB'] + cs['CD']) + 1

    a_prime, b_prime = cs.has_prime('A'), cs.has_prime('B')
    if a_prime:
        slacks['primed_a'] = abcd + cs["A'BCD"] - abs(cs['A'] - cs["A'"]) + 2
    if b_prime:
        slacks['primed_b'] = abcd + cs["AB'CD"] - abs(cs['B'] - cs["B'"]) + 2
    if a_prime and b_prime:
        both = abcd + cs["AB'CD"] + cs["A'BCD"] + cs["A'B'CD"]
        slacks['primed_pairs_b'] = both - abs(cs['AB'] - cs["AB'"] + cs["A'B"] - cs["A'B'"]) + 4
        slacks['primed_pairs_a'] = both - abs(cs['AB'] + cs["AB'"] - cs["A'B"] - cs["A'B'"]) + 4

    return slacks


class ChainReport(object):

    def __init__(self, slacks, settings=None):
        self.slacks = slacks
        self.settings = settings

    @property
    def min_slack(self):
        return np.min(np.broadcast_arrays(*self.slacks.values()), axis=0)

    @property
    def tightest(self):
        """Name of the link with the least slack (over the whole batch)."""
        return min(self.slacks, key=lambda name: np.min(self.slacks[name]))

    def select(self, index):
        return ChainReport(OrderedDict((k, v[index]) for k, v in self.slacks.items()), self.settings)

    def _dump(self):
        return dict((k, plain(v)) for k, v in self.slacks.items())


def counterexample(lambda_, settings, cs, slacks):
    return {
        'schema': 'counterexample/1',
        'lambda': lambda_._dump(),
        'setting_set': settings._dump(),
        'averages': cs._dump(),
        'slacks': dict((k, plain(v)) for k, v in slacks.items()),
    }


def check_chain(lambda_, settings, strict=False, tolerance=1e-10):
    """Evaluate the chain links for ``lambda_`` under ``settings``.

    :param bool strict: Raise :class:`ChainViolation` with a counterexample
        dump if any slack falls below ``-tolerance``?
    :returns: :class:`ChainReport`.

    """
    cs = stats(lambda_, settings)
    report = ChainReport(chain_slacks(cs), settings)
    if strict:
        bad = np.flatnonzero(np.atleast_1d(report.min_slack < -tolerance))
        if len(bad):
            if lambda_.shape:
                i = bad[0]
                lambda_, cs, one = lambda_[i], cs.select(i), report.select(i)
            else:
                one = report
            raise ChainViolation(
                'chain link %s violated under %r' % (one.tightest, settings),
                counterexample(lambda_, settings, cs, one.slacks),
            )
    return report


class Link(object):
    """One setting set's share of a final inequality.

    ``lhs(cs) - moduli(cs) >= floor`` holds for every lambda.

    :param terms: ``(coefficient, label)`` pairs summed into the left side.
    :param moduli: lists of ``(coefficient, label)`` pairs, each taken in
        modulus on the right side.

    """

    def __init__(self, name, settings, terms, moduli, floor):
        self.name = name
        self.settings = settings
        self.terms = terms
        self.moduli_terms = moduli
        self.floor = floor

    @staticmethod
    def _sum(cs, terms):
        return sum(coefficient * cs[label] for coefficient, label in terms)

    def lhs(self, cs):
        return self._sum(cs, self.terms)

    def moduli(self, cs):
        return sum(abs(self._sum(cs, terms)) for terms in self.moduli_terms)

    def slack(self, cs):
        return self.lhs(cs) - self.moduli(cs) - self.floor

    def _weights(self, label):
        slots = self.settings.slots()
        return [pauli.slot_weights(slots[s] if s else pauli.IDENTITY) for s in split_label(label)]

    def forms(self):
        """The link as tensor forms on the pair tensors ``(T12, T34)``.

        :returns: ``(lhs_form, moduli_forms)``; the left side is
            ``einsum('ij,ijkl,kl', T12, lhs_form, T34)`` and each modulus is
            ``|einsum('ij,ij', T12, form)|`` (moduli never touch qubits 3-4).

        """
        lhs_form = np.zeros((4, 4, 4, 4))
        for coefficient, label in self.terms:
            u, v, w, x = self._weights(label)
            lhs_form += coefficient * np.einsum('i,j,k,l->ijkl', u, v, w, x)
        moduli_forms = []
        for terms in self.moduli_terms:
            form = np.zeros((4, 4))
            for coefficient, label in terms:
                u, v, w, x = self._weights(label)
                if w[0] != 1 or x[0] != 1:
                    raise ValueError('modulus term %r measures qubits 3-4' % (label, ))
                form += coefficient * np.outer(u, v)
            moduli_forms.append(form)
        return lhs_form, np.array(moduli_forms)

    def __repr__(self):
        return '<Link %s>' % self.name


_PAIR_TERMS = [(2, 'ABCD'), (2, "AB'CD"), (2, "A'BCD"), (2, "A'B'CD")]
_PAIR_MODULI = [
    [(1, 'AB'), (-1, "AB'"), (1, "A'B"), (-1, "A'B'")],
    [(1, 'AB'), (1, "AB'"), (-1, "A'B"), (-1, "A'B'")],
]


def inequality_links(alpha, which):
    """The links of the single-qubit (``which=1``) or two-qubit (``2``) inequality."""
    if which not in (1, 2):
        raise ValueError('unknown inequality %r' % (which, ))
    one = family_one(alpha)
    links = [
        Link('plain-%d' % s.family, s, [(1, 'ABCD'), (1, "A'BCD")], [[(1, 'A'), (-1, "A'")]], -2)
        for s in one
    ]
    if which == 1:
        return links
    for s in one:
        swapped = triangle_swap(s)
        links.append(Link('swapped-%d' % s.family, swapped, [(1, 'ABCD'), (1, "AB'CD")], [[(1, 'B'), (-1, "B'")]], -2))
    for s in family_two(alpha):
        links.append(Link('pairs-%d' % s.family, s, _PAIR_TERMS, _PAIR_MODULI, -8))
    return links


def link_constant(which):
    """Sum of the link floors: the rederived constant of the inequality."""
    return sum(link.floor for link in inequality_links(0.0, which))


def lambda_lhs(lambda_, alpha, which):
    """Left side and modulus sum of an inequality for ``lambda_``.

    :returns: ``(lhs, moduli)``, arrays for a batch.

    """
    lhs = moduli = 0.0
    for link in inequality_links(alpha, which):
        cs = stats(lambda_, link.settings)
        lhs = lhs + link.lhs(cs)
        moduli = moduli + link.moduli(cs)
    return lhs, moduli


def moduli_sum(lambda_, alpha):
    """All 14 moduli of the two-qubit inequality for ``lambda_``.

    Equals ``2|sin 2 alpha|`` times the sum of ``|T_ij|`` of the qubit-1-2
    tensor over every pair except (0, 0) and (3, 3).

    """
    return lambda_lhs(lambda_, alpha, 2)[1]


def marginal_moduli(lambda_, alpha):
    """Sum over family one of ``|<A> - <A'>|``; at least ``2|sin 2 alpha|``."""
    return lambda_lhs(lambda_, alpha, 1)[1]


def touched_pairs(alpha, atol=1e-12):
    """Two-qubit tensor pairs ``(i, j)`` the two-qubit moduli depend on."""
    touched = set()
    for link in inequality_links(alpha, 2):
        for form in link.forms()[1]:
            touched.update(zip(*[idx.tolist() for idx in np.nonzero(np.abs(form) > atol)]))
    return touched


def taxi_norm(vector):
    vector = np.asarray(vector, dtype=float)
    if vector.shape != (3, ) or not is_unit(vector):
        raise ValueError('taxi norm needs a unit 3-vector; got %r' % (vector.tolist(), ))
    norm = float(np.abs(vector).sum())
    assert norm >= 1 - 1e-12, norm
    return norm
