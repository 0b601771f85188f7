"""Measurement settings as functions of the tilt angle ``alpha``.

Family one holds sets 1-3 (a tilted pair on qubit 1 against a fixed axis on
qubits 2-4); family two holds sets 4-7 (tilted pairs on qubits 1 and 2).
Set ``i`` of family one tilts by ``2 * alpha``, family two by ``alpha``.

"""

import numpy as np

from .utils import frozen, is_unit


#: The three axes, ``AXES[1]`` being e_1.
AXES = {
    1: frozen([1.0, 0.0, 0.0]),
    2: frozen([0.0, 1.0, 0.0]),
    3: frozen([0.0, 0.0, 1.0]),
}

FAMILY_ONE = (1, 2, 3)
FAMILY_TWO = (4, 5, 6, 7)

# Family two: (set, a-pair axes, b-pair axes, c, d). Each pair is
# (main, tilt), giving m * e_main +- n * e_tilt.
_PAIR_TABLE = (
    (4, (1, 2), (1, 2), (-1, 1), (1, 1)),
    (5, (1, 3), (1, 3), (1, 2), (1, 2)),
    (6, (1, 2), (2, 1), (1, 2), (1, 1)),
    (7, (2, 3), (2, 3), (-1, 2), (1, 2)),
)


def bloch_vector(components, strict=True):
    v = frozen(components, dtype=float)
    if v.shape != (3, ):
        raise ValueError('Bloch vector needs 3 components; got shape %r' % (v.shape, ))
    if strict and not is_unit(v):
        raise ValueError('%r is not a unit vector' % (v.tolist(), ))
    return v


def _next_axis(i):
    return i % 3 + 1


class SettingSet(object):
    """One measurement context: directions for the four qubits.

    ``a_prime`` and ``b_prime`` are the alternative settings on qubits 1
    and 2; either may be ``None`` when the set does not use it.

    """

    def __init__(self, family, alpha, a, b, c, d, a_prime=None, b_prime=None, swapped=False, strict=True):

        if family is not None and family not in FAMILY_ONE + FAMILY_TWO:
            raise ValueError('unknown setting set %r' % family)

        self.family = family
        self.alpha = float(alpha)
        self.swapped = swapped

        self.a = bloch_vector(a, strict)
        self.b = bloch_vector(b, strict)
        self.c = bloch_vector(c, strict)
        self.d = bloch_vector(d, strict)
        self.a_prime = None if a_prime is None else bloch_vector(a_prime, strict)
        self.b_prime = None if b_prime is None else bloch_vector(b_prime, strict)

    def slots(self):
        """Map slot symbols (``A``, ``A'``, ...) to their directions."""
        slots = {'A': self.a, 'B': self.b, 'C': self.c, 'D': self.d}
        if self.a_prime is not None:
            slots["A'"] = self.a_prime
        if self.b_prime is not None:
            slots["B'"] = self.b_prime
        return slots

    def vectors(self):
        return [v for v in (self.a, self.a_prime, self.b, self.b_prime, self.c, self.d) if v is not None]

    def __repr__(self):
        return '<SettingSet %s%s alpha=%r>' % (self.family, '^' if self.swapped else '', self.alpha)

    def _dump(self):
        raw = {
            'family': self.family,
            'alpha': self.alpha,
            'swapped': self.swapped,
        }
        for name in ('a', 'a_prime', 'b', 'b_prime', 'c', 'd'):
            v = getattr(self, name)
            if v is not None:
                raw[name] = v.tolist()
        return raw


def _check_alpha(alpha):
    if not np.isfinite(alpha):
        raise ValueError('alpha must be finite; got %r' % alpha)


def family_one(alpha):
    _check_alpha(alpha)
    c2, s2 = np.cos(2 * alpha), np.sin(2 * alpha)
    sets = []
    for i in FAMILY_ONE:
        e, f = AXES[i], AXES[_next_axis(i)]
        sets.append(SettingSet(
            i, alpha,
            a=c2 * e + s2 * f,
            a_prime=c2 * e - s2 * f,
            b=-e,
            c=e,
            d=e,
        ))
    return sets


def family_two(alpha, literal=False):
    """Sets 4-7 with ``m = cos(alpha)`` and ``n = sin(alpha)``.

    With ``literal`` the tilt uses ``n = sin(2 * alpha)`` as printed in the
    original settings table; those vectors are generally not unit length and
    are built without the norm check, for diagnostics only.

    """
    _check_alpha(alpha)
    m = np.cos(alpha)
    n = np.sin(2 * alpha) if literal else np.sin(alpha)
    sets = []
    for family, (pa, qa), (pb, qb), (sc, c), (sd, d) in _PAIR_TABLE:
        sets.append(SettingSet(
            family, alpha,
            a=m * AXES[pa] + n * AXES[qa],
            a_prime=m * AXES[pa] - n * AXES[qa],
            b=m * AXES[pb] + n * AXES[qb],
            b_prime=m * AXES[pb] - n * AXES[qb],
            c=sc * AXES[c],
            d=sd * AXES[d],
            strict=not literal,
        ))
    return sets


def literal_norm_defects(alpha):
    """Largest ``| |v| - 1 |`` per set of the literal family-two table."""
    return dict(
        (s.family, float(max(abs(np.linalg.norm(v) - 1) for v in s.vectors())))
        for s in family_two(alpha, literal=True)
    )


def triangle_swap(settings):
    """Exchange the roles of qubits 1 and 2 in a family-one set.

    Qubit 1 gets the fixed axis and qubit 2 the tilted pair; ``c`` and ``d``
    stay where they are.

    """
    if settings.family not in FAMILY_ONE or settings.swapped:
        raise ValueError('only unswapped family-one sets can be swapped; got %r' % (settings, ))
    return SettingSet(
        settings.family, settings.alpha,
        a=settings.b,
        b=settings.a,
        b_prime=settings.a_prime,
        c=settings.c,
        d=settings.d,
        swapped=True,
    )


def all_sets(alpha):
    """Family one, its swapped variants and family two, in that order."""
    one = family_one(alpha)
    return one + [triangle_swap(s) for s in one] + family_two(alpha)
