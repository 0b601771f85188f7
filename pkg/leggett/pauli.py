"""Dense states, density operators and Pauli correlation tensors.

Registers hold up to four qubits. Qubit 1 is the most significant bit of
the basis index, so ``T[i, j, k, l]`` is the expectation value of
``sigma_i (x) sigma_j (x) sigma_k (x) sigma_l`` with qubit 1 leftmost.

"""

import functools
import itertools
import logging

import numpy as np

from .utils import frozen, is_unit


log = logging.getLogger(__name__)

#: Tolerance for constructing states and tensors.
ATOL = 1e-12

#: Eigenvalues above this count as non-negative.
PSD_FLOOR = -1e-10

#: Identity followed by Pauli x, y, z; index 0 is the identity slot.
PAULIS = frozen([
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)

#: ``PAIR_PAULIS[i, j]`` is ``sigma_i (x) sigma_j``.
PAIR_PAULIS = frozen(np.einsum('iac,jbd->ijabcd', PAULIS, PAULIS).reshape(4, 4, 4, 4))

#: Marks an unmeasured slot in :func:`expectation`.
IDENTITY = None

_LETTERS = 'abcdefgh'


def _qubit_count(dim):
    n = int(round(np.log2(dim))) if dim > 0 else 0
    if dim != 2 ** n or not 1 <= n <= 4:
        raise ValueError('dimension must be 2**n with n in 1..4; got %d' % dim)
    return n


class PureState(object):

    def __init__(self, amplitudes):
        amplitudes = np.asarray(amplitudes, dtype=complex).ravel()
        self.n = _qubit_count(len(amplitudes))
        norm = np.vdot(amplitudes, amplitudes).real
        if abs(norm - 1) > ATOL:
            raise ValueError('state is not normalized; squared norm is %r' % norm)
        self.amplitudes = frozen(amplitudes)

    @classmethod
    def normalized(cls, amplitudes):
        amplitudes = np.asarray(amplitudes, dtype=complex)
        norm = np.linalg.norm(amplitudes)
        if not norm:
            raise ValueError('cannot normalize a zero vector')
        return cls(amplitudes / norm)

    def density(self):
        return DensityOperator(np.outer(self.amplitudes, self.amplitudes.conj()))

    def __repr__(self):
        return '<PureState n=%d>' % self.n


class DensityOperator(object):

    def __init__(self, matrix):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError('density operator must be square; got shape %r' % (matrix.shape, ))
        self.n = _qubit_count(matrix.shape[0])
        if np.abs(matrix - matrix.conj().T).max() > ATOL:
            raise ValueError('density operator is not Hermitian')
        trace = np.trace(matrix).real
        if abs(trace - 1) > ATOL:
            raise ValueError('density operator has trace %r' % trace)
        lowest = np.linalg.eigvalsh(matrix).min()
        if lowest < PSD_FLOOR:
            raise ValueError('density operator has negative eigenvalue %r' % lowest)
        self.matrix = frozen(matrix)

    def __repr__(self):
        return '<DensityOperator n=%d>' % self.n


def as_density(state):
    if isinstance(state, DensityOperator):
        return state
    if isinstance(state, PureState):
        return state.density()
    raise TypeError('expected PureState or DensityOperator; got %s' % type(state).__name__)


class CorrelationTensor(object):
    """Expectation values of every Pauli string on ``n`` qubits.

    ``entries`` has one axis of length 4 per qubit; index 0 is the identity.

    """

    def __init__(self, entries):
        entries = np.asarray(entries, dtype=float)
        if not 1 <= entries.ndim <= 4 or entries.shape != (4, ) * entries.ndim:
            raise ValueError('tensor must have shape (4,)*n for n in 1..4; got %r' % (entries.shape, ))
        origin = entries[(0, ) * entries.ndim]
        if abs(origin - 1) > ATOL:
            raise ValueError('identity entry must be 1; got %r' % origin)
        if np.abs(entries).max() > 1 + 1e-10:
            raise ValueError('tensor entries must lie in [-1, 1]')
        self.n = entries.ndim
        self.entries = frozen(entries)

    def __getitem__(self, index):
        return self.entries[index]

    def indices(self, weight=None):
        """Yield index tuples, optionally only those of the given weight."""
        for index in itertools.product(range(4), repeat=self.n):
            if weight is None or sum(1 for i in index if i) == weight:
                yield index

    def scaled(self, factor):
        """Scale every entry of weight >= 1 by ``factor``."""
        entries = self.entries * factor
        entries[(0, ) * self.n] = 1.0
        return type(self)(entries)

    def _dump(self):
        return {
            'n': self.n,
            'entries': dict(
                (''.join(str(i) for i in index), float(self.entries[index]))
                for index in self.indices()
            ),
        }


class TwoQubitTensor(CorrelationTensor):

    def __init__(self, entries):
        super(TwoQubitTensor, self).__init__(entries)
        if self.n != 2:
            raise ValueError('two-qubit tensor needs shape (4, 4); got %r' % (self.entries.shape, ))

    def total_square(self):
        return float((self.entries ** 2).sum())

    def correlation_square(self):
        return float((self.entries[1:, 1:] ** 2).sum())

    def excluded_abs_sum(self):
        """Sum of ``|T_ij|`` over all pairs except (0, 0) and (3, 3)."""
        return float(np.abs(self.entries).sum() - abs(self.entries[0, 0]) - abs(self.entries[3, 3]))


def ghz_state(n):
    if not 2 <= n <= 4:
        raise ValueError('GHZ state needs 2 <= n <= 4; got %r' % n)
    amplitudes = np.zeros(2 ** n, dtype=complex)
    amplitudes[0] = amplitudes[-1] = 2 ** -0.5
    return PureState(amplitudes)


def bloch_state(vector):
    """Single-qubit ket whose Bloch vector is ``vector``."""
    x, y, z = vector
    theta = np.arccos(np.clip(z, -1, 1))
    phi = np.arctan2(y, x)
    return PureState([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def product_state(*states):
    amplitudes = functools.reduce(np.kron, [s.amplitudes for s in states])
    return PureState(amplitudes)


def mix_white_noise(state, p):
    """Admix the fraction ``p`` of the maximally mixed state."""
    if not 0 <= p <= 1:
        raise ValueError('noise fraction must lie in [0, 1]; got %r' % p)
    rho = as_density(state)
    dim = 2 ** rho.n
    return DensityOperator((1 - p) * rho.matrix + p * np.eye(dim) / dim)


def _pauli_moments(matrix, n):
    # trace(rho . s_i (x) s_j ...) = sum rho[rows, cols] s_i[col, row] ...
    rows = _LETTERS[:n]
    cols = _LETTERS[n:2 * n]
    outs = 'ijkl'[:n]
    terms = [rows + cols] + [o + c + r for o, c, r in zip(outs, cols, rows)]
    spec = '%s->%s' % (','.join(terms), outs)
    moments = np.einsum(spec, matrix.reshape((2, ) * (2 * n)), *([PAULIS] * n))
    return moments.real


def correlation_tensor(state, n=4):
    rho = as_density(state)
    if rho.n != n:
        raise ValueError('expected a %d-qubit state; got %d qubits' % (n, rho.n))
    if n == 2:
        return TwoQubitTensor(_pauli_moments(rho.matrix, n))
    return CorrelationTensor(_pauli_moments(rho.matrix, n))


def pair_moments(amplitudes):
    """Two-qubit tensors of a batch of kets with shape ``(..., 4)``."""
    amplitudes = np.asarray(amplitudes, dtype=complex)
    rho = amplitudes.conj()[..., :, None] * amplitudes[..., None, :]
    flat = rho.reshape(rho.shape[:-2] + (16, )) @ PAIR_PAULIS.reshape(16, 16).T
    return flat.reshape(flat.shape[:-1] + (4, 4)).real


def two_qubit_tensor(state, n=2):
    if not isinstance(state, PureState):
        raise TypeError('expected PureState; got %s' % type(state).__name__)
    if state.n != n or n != 2:
        raise ValueError('expected a 2-qubit state; got %d qubits' % state.n)
    return TwoQubitTensor(pair_moments(state.amplitudes))


def partial_trace(state, keep):
    """Reduce to the qubits in ``keep`` (0-based, ordered as in the register)."""
    rho = as_density(state)
    n = rho.n
    keep = sorted(set(keep))
    if not keep or keep[0] < 0 or keep[-1] >= n:
        raise ValueError('cannot keep qubits %r of a %d-qubit state' % (keep, n))
    rows = list(_LETTERS[:n])
    cols = list(_LETTERS[n:2 * n])
    for q in range(n):
        if q not in keep:
            cols[q] = rows[q]
    out = ''.join(rows[q] for q in keep) + ''.join(cols[q] for q in keep)
    matrix = np.einsum('%s%s->%s' % (''.join(rows), ''.join(cols), out), rho.matrix.reshape((2, ) * (2 * n)))
    dim = 2 ** len(keep)
    return DensityOperator(matrix.reshape(dim, dim))


def slot_weights(direction):
    """The 4-vector contracting one tensor axis for a measured direction."""
    if direction is IDENTITY:
        return np.array([1.0, 0.0, 0.0, 0.0])
    return np.concatenate([[0.0], np.asarray(direction, dtype=float)])


def contract(entries, weights):
    out = np.asarray(entries)
    for w in reversed(weights):
        out = out @ w
    return float(out)


def expectation(tensor, dirs, strict=True):
    """Correlation of measurements along ``dirs``, one slot per qubit.

    Each slot is a unit Bloch vector or :data:`IDENTITY`. With ``strict``
    off the slots may be any real 3-vectors, which :func:`contract` treats
    linearly.

    """
    if len(dirs) != tensor.n:
        raise ValueError('need %d direction slots; got %d' % (tensor.n, len(dirs)))
    if strict:
        for d in dirs:
            if d is not IDENTITY and not is_unit(d):
                raise ValueError('direction %r is not a unit vector' % (d, ))
    return contract(tensor.entries, [slot_weights(d) for d in dirs])


def haar_amplitudes(rng, count, dim):
    """``count`` unitarily invariant kets of dimension ``dim``."""
    z = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    return z / np.linalg.norm(z, axis=-1, keepdims=True)


def haar_pure(dim, seed):
    if dim not in (2, 4):
        raise ValueError('Haar sampling supports dimension 2 or 4; got %r' % dim)
    rng = np.random.default_rng(seed)
    return PureState(haar_amplitudes(rng, 1, dim)[0])
