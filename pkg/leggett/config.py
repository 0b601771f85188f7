import copy
import json
import os

import numpy as np

from .utils import merge_update


DEFAULTS = {
    'seed': 0,
    'samples': 100000,
    'haar_samples': 10000,
    'alpha_points': 50,
    'restarts': 64,
    'max_evaluations': 10000,
    'simplex_tolerance': 1e-8,
    'noise_bracket': [0.0, 0.1],
    'grid': {'lo': 0.0, 'hi': np.pi / 4, 'steps': 1000},
    'tolerances': {
        'chain': 1e-10,
        'integrand': 1e-9,
        'positivity': 1e-12,
        'violation': 1e-9,
        'range': 1e-10,
        'noise': 1e-8,
    },
}


class Config(object):
    """Run settings shared by the CLI and the verification suites.

    Values start at :data:`DEFAULTS`; every key is also an attribute.

    """

    def __init__(self, **kwargs):
        self._data = copy.deepcopy(DEFAULTS)
        if kwargs:
            self.update(kwargs)

    def __getattr__(self, name):
        if name.startswith('_'):
            raise AttributeError(name)
        try:
            return self._data[name]
        except KeyError:
            raise AttributeError(name)

    def load(self, input_, recurse=True):
        """Load a JSON or YAML file, or a ``dict``, of settings.

        If passed a string, we treat it as a path to a ``.json`` or ``.yaml``
        file. If passed a dict, it is handed off to :meth:`update`. If passed
        another iterable, every element is loaded in turn, later ones
        overriding earlier ones.

        """

        if isinstance(input_, str):
            ext = os.path.splitext(input_)[1]
            if ext not in ('.json', '.yaml', '.yml'):
                raise ValueError('unknown filetype %s' % ext)
            with open(input_) as fh:
                encoded = fh.read()
            if ext == '.json':
                data = json.loads(encoded)
            else:
                import yaml # Only needed for YAML files.
                data = yaml.safe_load(encoded)
            self.update(data or {})

        elif isinstance(input_, dict):
            self.update(input_)

        elif recurse:
            for x in input_:
                self.load(x, recurse=False)

        else:
            raise TypeError('load needs str, dict, or list')

        return self

    def update(self, *args, **kwargs):
        for arg in args:
            if not isinstance(arg, dict):
                raise TypeError('Config.update needs dict')
            self._load(arg)
        if kwargs:
            self._load(kwargs)

    def _load(self, raw):

        raw = copy.deepcopy(raw)

        unknown = [k for k in raw if k not in DEFAULTS]
        if unknown:
            raise ValueError('unknown config keys: %s' % ', '.join(sorted(unknown)))

        for name in ('grid', 'tolerances'):
            extra = set(raw.get(name, {})) - set(DEFAULTS[name])
            if extra:
                raise ValueError('unknown %s keys: %s' % (name, ', '.join(sorted(extra))))

        # Lists replace rather than extend.
        bracket = raw.pop('noise_bracket', None)
        if bracket is not None:
            if len(bracket) != 2:
                raise ValueError('noise_bracket needs two values; got %r' % (bracket, ))
            self._data['noise_bracket'] = [float(x) for x in bracket]

        merge_update(self._data, raw)

    def _dump(self):
        return copy.deepcopy(self._data)

    def dump(self, path):
        """Save the settings as JSON to the given path."""
        with open(path, 'w') as fh:
            fh.write(json.dumps(self, indent=4, sort_keys=True, default=lambda x: x._dump()))
