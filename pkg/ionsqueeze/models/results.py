import cmath
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

PROBABILITY_TOLERANCE = 1e-12


class WeightList:
    """
    The 2m complex weights p_1 ... p_2m of a superposition run. Cycle j
    consumes the pair (p_2j-1, p_2j).
    """

    def __init__(self, weights):
        if isinstance(weights, WeightList):
            weights = weights.weights
        values = []
        for i, value in enumerate(weights):
            try:
                value = complex(value)
            except (TypeError, ValueError):
                raise ValueError(
                    'Weight %d must be a complex number. A value of %r was '
                    'supplied.' % (i + 1, value))
            if not cmath.isfinite(value):
                raise ValueError('Weight %d is not finite' % (i + 1, ))
            values.append(value)
        if not values or len(values) % 2:
            raise ValueError(
                'A weight list holds two weights per cycle, so its length '
                'must be even and non-zero. %d weights were supplied.' % len(
                    values))
        self.weights = tuple(values)

    def __repr__(self):
        return 'WeightList(%r)' % (list(self.weights), )

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, index):
        return self.weights[index]

    def __eq__(self, other):
        if isinstance(other, WeightList):
            return self.weights == other.weights
        return NotImplemented

    def __hash__(self):
        return hash(self.weights)

    @property
    def cycles(self):
        return len(self.weights) // 2

    def pairs(self):
        return [
            (self.weights[2 * j], self.weights[2 * j + 1])
            for j in range(self.cycles)
        ]


@dataclass(frozen=True)
class ConventionReport:
    """
    Signs and eigenstates the implementation realizes for the carrier,
    displacement and squeezing stages.
    """
    carrier_state: str
    carrier_matches_printed_state: bool
    s_c: int
    s_r: int
    squeeze_sector: str = 'S(2G)'
    tmsv_convention: str = 'sech(r) * (-exp(i*theta) * tanh(r))**n'
    tmsv_deviation: Optional[float] = None

    def as_dict(self):
        return {
            'carrier_state': self.carrier_state,
            'carrier_matches_printed_state':
                self.carrier_matches_printed_state,
            's_c': self.s_c,
            's_r': self.s_r,
            'squeeze_sector': self.squeeze_sector,
            'tmsv_convention': self.tmsv_convention,
            'tmsv_deviation': self.tmsv_deviation,
        }


@dataclass
class ProtocolResult:
    """
    Outcome of a protocol run: the final motional state, the post-selection
    bookkeeping and the diagnostics checked along the way.
    """
    final_state: object
    per_cycle_probability: list = field(default_factory=list)
    cumulative_probability: float = 1.0
    paper_formula_probability: Optional[float] = None
    tail_mass: float = 0.0
    fidelities: dict = field(default_factory=dict)
    purities: dict = field(default_factory=dict)
    literal_probability: list = field(default_factory=list)
    convention_report: Optional[ConventionReport] = None
    internal_state: object = None

    def __post_init__(self):
        self.per_cycle_probability = [
            float(p) for p in self.per_cycle_probability]
        for p in self.per_cycle_probability + [self.cumulative_probability]:
            if not -PROBABILITY_TOLERANCE <= p <= 1 + PROBABILITY_TOLERANCE:
                raise ValueError('Probability %r lies outside [0, 1]' % p)
        product = float(np.prod(self.per_cycle_probability))
        if not math.isclose(product, self.cumulative_probability,
                            rel_tol=0, abs_tol=PROBABILITY_TOLERANCE):
            raise ValueError(
                'The cumulative probability %r is not the product of the '
                'per-cycle probabilities (%r)' % (
                    self.cumulative_probability, product))

    @property
    def cycles(self):
        return len(self.per_cycle_probability)

    @property
    def formula_ratio(self):
        """Exact over formula probability, when the formula applies."""
        if not self.paper_formula_probability:
            return None
        return self.cumulative_probability / self.paper_formula_probability
