import json

import numpy as np


def merge_update(dst, src):

    for k, v in src.items():

        if k not in dst:
            dst[k] = v
            continue

        e = dst[k]
        if isinstance(e, dict):
            merge_update(e, v)
        elif isinstance(e, list):
            e.extend(v)
        else:
            dst[k] = v


def is_unit(vector, atol=1e-9):
    vector = np.asarray(vector, dtype=float)
    return bool(np.all(np.abs(np.linalg.norm(vector, axis=-1) - 1) <= atol))


def frozen(array, dtype=None):
    """Return a read-only copy of ``array``."""
    array = np.array(array, dtype=dtype)
    array.setflags(write=False)
    return array


def sample_rng(seed, index):
    """Generator for one sample of a seeded run.

    Keyed on ``(seed, index)`` so a sample does not depend on how many
    samples came before it or how the run was chunked.

    """
    if seed < 0 or index < 0:
        raise ValueError('seed and index must be non-negative; got %r, %r' % (seed, index))
    return np.random.default_rng([int(seed), int(index)])


def plain(value):
    """Convert numpy scalars and arrays into JSON types."""
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    return value


def dumps(obj):
    return json.dumps(obj, indent=4, sort_keys=True, default=lambda x: x._dump())
