from .space import SpaceDescriptor  # noqa
from .states import DensityMatrix, StateVector  # noqa
from .operators import Operator  # noqa
from .params import (  # noqa
    DisplacementParameter, EffectiveCoupling, ExpansionOrder, PhysicalParams,
    SqueezeParameter,
)
from .results import ConventionReport, ProtocolResult, WeightList  # noqa
