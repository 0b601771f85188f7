from unittest import TestCase

import numpy as np

from leggett import analysis, inequalities, lambdas, pauli, search, settings
from leggett.lambdas import CorrelationSet, LambdaAssignment
from leggett.pauli import CorrelationTensor, DensityOperator, PureState
from leggett.settings import SettingSet


E1, E2, E3 = np.eye(3)


def bell():
    return pauli.ghz_state(2)


def ket(*bits):
    amplitudes = np.zeros(2 ** len(bits), dtype=complex)
    amplitudes[int(''.join(str(b) for b in bits), 2)] = 1
    return PureState(amplitudes)
