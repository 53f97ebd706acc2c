import math
from dataclasses import dataclass, field
from typing import Optional

from scipy import constants as physical

from ionsqueeze.conf import constants, settings
from ionsqueeze.errors import LambdaDickeError


@dataclass(frozen=True)
class SqueezeParameter:
    """
    The complex argument G of S(G) = exp(G* ab - G a^dagger b^dagger).
    Protocols apply S(2G), so the squeezing factor is r = 2|G|.
    """
    G: complex

    def __complex__(self):
        return complex(self.G)

    @property
    def applied(self):
        return 2 * complex(self.G)

    @property
    def r(self):
        return 2 * abs(self.G)

    @property
    def phase(self):
        return math.atan2(self.applied.imag, self.applied.real)


@dataclass(frozen=True)
class DisplacementParameter:
    beta: complex
    mode: str = constants.MODE_C

    def __post_init__(self):
        if self.mode not in constants.MOTIONAL_SUBSYSTEMS:
            raise ValueError(
                "`mode` must be one of %s. A value of %r was supplied." % (
                    constants.MOTIONAL_SUBSYSTEMS, self.mode))

    def __complex__(self):
        return complex(self.beta)


@dataclass(frozen=True)
class EffectiveCoupling:
    """
    Parameters of the resonant two-mode coupling
    H = rabi * eta * eta_r * (ab + a^dagger b^dagger)(sigma_x1 - sigma_x2).
    """
    rabi: float
    eta: float
    eta_r: float
    t: float

    @property
    def G(self):
        return -1j * self.rabi * self.eta * self.eta_r * self.t

    @property
    def r(self):
        return 2 * abs(self.G)

    def beta_c(self, t=None):
        """Center-of-mass displacement amplitude i * eta * rabi * t."""
        return 1j * self.eta * self.rabi * (self.t if t is None else t)

    def beta_r(self, t_prime):
        """Breathing-mode displacement amplitude i * eta_r * rabi * t'."""
        return 1j * self.eta_r * self.rabi * t_prime


class ExpansionOrder:
    """
    Order of the Lamb-Dicke expansion of cos(k x_i): 2 (terms through
    eta^2, eta_r^2 and eta * eta_r), 4, or the exact cosine. Odd orders
    vanish with both ions at the anti-nodes.
    """
    __slots__ = ('order', )

    def __init__(self, order=constants.EXPANSION_ORDER_2):
        if isinstance(order, ExpansionOrder):
            order = order.order
        if isinstance(order, str) and order.isdigit():
            order = int(order)
        if order not in constants.EXPANSION_ORDER_CHOICES:
            raise ValueError(
                "The expansion order must be one of %s. A value of %r was "
                "supplied." % (constants.EXPANSION_ORDER_CHOICES, order))
        object.__setattr__(self, 'order', order)

    def __setattr__(self, name, value):
        raise AttributeError('ExpansionOrder instances are immutable')

    def __eq__(self, other):
        if isinstance(other, ExpansionOrder):
            return self.order == other.order
        return self.order == other

    def __hash__(self):
        return hash(self.order)

    def __repr__(self):
        return 'ExpansionOrder(%r)' % (self.order, )

    @property
    def is_exact(self):
        return self.order == constants.EXPANSION_ORDER_EXACT


@dataclass(frozen=True)
class PhysicalParams:
    """
    Trap and laser constants, as angular frequencies in rad/s, the ion mass
    in kg and the effective wavevector in 1/m.

    The Lamb-Dicke parameters follow from the mass and wavevector
    (eta = k * sqrt(hbar / (4 m mu)), eta_r = k * sqrt(hbar / (4 m nu)))
    unless ``eta`` / ``eta_r`` are pinned explicitly, as parameter sweeps do.
    """
    mass: float
    mu: float
    nu: float
    omega0: float
    rabi: float
    k: float
    eta_override: Optional[float] = field(default=None)
    eta_r_override: Optional[float] = field(default=None)

    @classmethod
    def from_lamb_dicke(cls, eta=None, eta_r=None, mu=None, nu=None,
                        rabi=None, omega0=None, mass=None):
        """
        Build parameters from a center-of-mass Lamb-Dicke parameter, solving
        for the wavevector. Unset values come from the desk-scale defaults.
        """
        mu = settings.COM_FREQUENCY if mu is None else mu
        nu = mu * settings.BREATHING_TO_COM_RATIO if nu is None else nu
        mass = settings.ION_MASS_AMU * physical.atomic_mass if mass is None \
            else mass
        eta = settings.LAMB_DICKE_PARAMETER if eta is None else eta
        k = eta / math.sqrt(physical.hbar / (4 * mass * mu))
        return cls(
            mass=mass,
            mu=mu,
            nu=nu,
            omega0=settings.TRANSITION_FREQUENCY if omega0 is None else omega0,
            rabi=settings.RABI_FREQUENCY if rabi is None else rabi,
            k=k,
            eta_override=eta,
            eta_r_override=eta_r,
        )

    @property
    def eta(self):
        if self.eta_override is not None:
            return self.eta_override
        return self.k * math.sqrt(physical.hbar / (4 * self.mass * self.mu))

    @property
    def eta_r(self):
        if self.eta_r_override is not None:
            return self.eta_r_override
        return self.k * math.sqrt(physical.hbar / (4 * self.mass * self.nu))

    def laser_frequencies(self):
        """
        (omega_I, omega_II): red- and blue-detuned by mu + nu. The printed
        resonance conditions label both lines omega_I; the second one is
        read as omega_II.
        """
        return (
            self.omega0 - (self.mu + self.nu),
            self.omega0 + (self.mu + self.nu),
        )

    def detunings(self):
        """omega0 - omega_I and omega0 - omega_II, combined analytically."""
        omega_1, omega_2 = self.laser_frequencies()
        return (self.omega0 - omega_1, self.omega0 - omega_2)

    def coupling(self, t):
        return EffectiveCoupling(self.rabi, self.eta, self.eta_r, t)

    def interaction_time(self, r):
        """The time after which S(2G) reaches squeezing factor ``r``."""
        return r / (2 * self.rabi * self.eta * self.eta_r)

    def check_lamb_dicke(self, limit=None):
        if limit is None:
            limit = settings.LAMB_DICKE_LIMIT
        for name, value in (('eta', self.eta), ('eta_r', self.eta_r)):
            if not value > 0:
                raise LambdaDickeError(
                    'The Lamb-Dicke parameter %s must be positive' % name,
                    value=value)
            if value > limit:
                raise LambdaDickeError(
                    'The Lamb-Dicke parameter %s is outside the Lamb-Dicke '
                    'regime' % name, tolerance=limit, value=value)

    def with_values(self, **values):
        data = {f: getattr(self, f) for f in self.__dataclass_fields__}
        data.update(values)
        return self.__class__(**data)

    def as_dict(self):
        return {
            'mass': self.mass,
            'mu': self.mu,
            'nu': self.nu,
            'omega0': self.omega0,
            'rabi': self.rabi,
            'k': self.k,
            'eta': self.eta,
            'eta_r': self.eta_r,
        }
