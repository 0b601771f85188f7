from .config import Config
from .inequalities import InequalityVerdict, verdict
from .lambdas import ChainViolation, CorrelationSet, LambdaAssignment
from .pauli import CorrelationTensor, DensityOperator, PureState, TwoQubitTensor
from .settings import SettingSet
