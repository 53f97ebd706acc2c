"""
The run configuration: one JSON document per run, validated in full so every
problem is reported at once. The schema is documented in
``docs/source/configuration.rst``.
"""
import cmath
import json
import math
from dataclasses import dataclass, field
from typing import Optional

from ionsqueeze.conf import constants, settings
from ionsqueeze.errors import ConfigError
from ionsqueeze.models.params import (
    EffectiveCoupling, ExpansionOrder, PhysicalParams,
)
from ionsqueeze.models.results import WeightList

TOP_LEVEL_KEYS = (
    'command', 'cutoffs', 'G', 'coupling', 'weights', 'displacement',
    'physical', 'sweep', 'tolerances', 'output',
)
CUTOFF_KEYS = ('n_c', 'n_r')
COUPLING_KEYS = ('rabi', 'eta', 'eta_r', 't')
DISPLACEMENT_KEYS = ('beta_c', 'beta_r', 't_prime')
PHYSICAL_KEYS = ('mass', 'mu', 'nu', 'omega0', 'rabi', 'k', 'eta', 'eta_r')
SWEEP_KEYS = ('parameter', 'values', 'r', 'order')
OUTPUT_KEYS = ('path', 'format')

# Config tolerance names and the settings they override
TOLERANCE_SETTINGS = {
    'expm': 'EXPM_TOLERANCE',
    'integrator': 'INTEGRATOR_TOLERANCE',
    'tail_mass_budget': 'TAIL_MASS_BUDGET',
    'tail_mass_margin': 'TAIL_MASS_MARGIN',
    'unitarity': 'UNITARITY_TOLERANCE',
    'factorization': 'FACTORIZATION_TOLERANCE',
    'norm_drift': 'NORM_DRIFT_TOLERANCE',
    'protocol_fidelity': 'PROTOCOL_FIDELITY_TOLERANCE',
    'probability_audit': 'PROBABILITY_AUDIT_TOLERANCE',
    'lamb_dicke_limit': 'LAMB_DICKE_LIMIT',
}

SQUEEZING_COMMANDS = (
    constants.COMMAND_SQUEEZE,
    constants.COMMAND_SUPERPOSE,
    constants.COMMAND_GENERAL,
)


@dataclass
class ProtocolConfig:
    command: str
    n_c_cut: int
    n_r_cut: int
    G: Optional[complex] = None
    coupling: Optional[EffectiveCoupling] = None
    weights: Optional[WeightList] = None
    beta_c: Optional[complex] = None
    beta_r: Optional[complex] = None
    t_prime: Optional[float] = None
    physical: Optional[PhysicalParams] = None
    sweep_parameter: Optional[str] = None
    sweep_values: list = field(default_factory=list)
    sweep_r: Optional[float] = None
    expansion_order: Optional[ExpansionOrder] = None
    tolerances: dict = field(default_factory=dict)
    output_path: Optional[str] = None
    output_format: str = constants.FORMAT_JSON

    @property
    def cutoffs(self):
        return (self.n_c_cut, self.n_r_cut)

    @property
    def squeeze_parameter(self):
        if self.G is not None:
            return self.G
        if self.coupling is not None:
            return self.coupling.G
        return None

    @property
    def displacements(self):
        """(beta_c, beta_r), derived from the coupling when ``t_prime`` is
        given instead of explicit amplitudes."""
        if self.t_prime is not None:
            return self.coupling.beta_c(), self.coupling.beta_r(self.t_prime)
        return self.beta_c, self.beta_r

    def settings_overrides(self):
        return {
            TOLERANCE_SETTINGS[name]: value
            for name, value in self.tolerances.items()
        }

    def as_dict(self):
        """The resolved configuration, echoed into every report."""
        data = {
            'command': self.command,
            'cutoffs': {'n_c': self.n_c_cut, 'n_r': self.n_r_cut},
        }
        G = self.squeeze_parameter
        if G is not None:
            data['G'] = G
            data['r'] = 2 * abs(G)
        if self.coupling is not None:
            data['coupling'] = {
                'rabi': self.coupling.rabi,
                'eta': self.coupling.eta,
                'eta_r': self.coupling.eta_r,
                't': self.coupling.t,
            }
        if self.weights is not None:
            data['weights'] = list(self.weights)
        if self.command == constants.COMMAND_GENERAL:
            beta_c, beta_r = self.displacements
            data['displacement'] = {'beta_c': beta_c, 'beta_r': beta_r}
            if self.t_prime is not None:
                data['displacement']['t_prime'] = self.t_prime
        if self.physical is not None:
            data['physical'] = self.physical.as_dict()
            data['laser_frequencies'] = list(
                self.physical.laser_frequencies())
        if self.sweep_parameter is not None:
            data['sweep'] = {
                'parameter': self.sweep_parameter,
                'values': list(self.sweep_values),
                'r': self.sweep_r,
                'order': self.expansion_order.order,
            }
        with settings.override(**self.settings_overrides()):
            data['settings'] = settings.as_dict()
        return data


class _Parser:
    """Collects every validation problem before giving up."""

    def __init__(self):
        self.errors = []

    def error(self, message):
        self.errors.append(message)

    def block(self, data, name, allowed):
        if data is None:
            return None
        if not isinstance(data, dict):
            self.error("'%s' must be an object" % name)
            return None
        for key in sorted(set(data) - set(allowed)):
            self.error("Unknown key '%s.%s'" % (name, key))
        return data

    def real(self, value, name, positive=False, required=True):
        if value is None:
            if required:
                self.error("Missing required key '%s'" % name)
            return None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.error("'%s' must be a number, got %r" % (name, value))
            return None
        value = float(value)
        if not math.isfinite(value):
            self.error("'%s' must be finite" % name)
            return None
        if positive and value <= 0:
            self.error("'%s' must be positive, got %r" % (name, value))
            return None
        return value

    def complex(self, value, name, required=True):
        if value is None:
            if required:
                self.error("Missing required key '%s'" % name)
            return None
        parsed = None
        if isinstance(value, bool):
            parsed = None
        elif isinstance(value, (int, float)):
            parsed = complex(value)
        elif isinstance(value, list) and len(value) == 2 and all(
            isinstance(v, (int, float)) and not isinstance(v, bool)
            for v in value
        ):
            parsed = complex(value[0], value[1])
        elif isinstance(value, str):
            try:
                parsed = complex(value.replace(' ', ''))
            except ValueError:
                parsed = None
        if parsed is None:
            self.error(
                "'%s' must be a complex number (a number, [re, im] or a "
                "string such as \"0.1-0.2j\"), got %r" % (name, value))
            return None
        if not cmath.isfinite(parsed):
            self.error("'%s' must be finite" % name)
            return None
        return parsed

    def cutoff(self, value, name):
        if value is None:
            return settings.FOCK_CUTOFF
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            self.error(
                "'%s' must be an integer of at least 1, got %r" % (
                    name, value))
            return None
        return value


def parse_config(text, command=None):
    """
    Parse and validate a JSON run configuration.

    ``command`` is the subcommand the configuration is run with; a
    ``command`` key in the document must agree with it.

    Raises
    ------
    ConfigError
        Listing every problem found.
    """
    try:
        data = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as e:
        raise ConfigError('The configuration is not valid JSON: %s' % e)
    if not isinstance(data, dict):
        raise ConfigError('The configuration must be a JSON object')

    parser = _Parser()
    for key in sorted(set(data) - set(TOP_LEVEL_KEYS)):
        parser.error("Unknown key '%s'" % key)

    declared = data.get('command')
    if command is None:
        command = declared
    elif declared is not None and declared != command:
        parser.error(
            "'command' is %r but the run was started as %r" % (
                declared, command))
    if command not in constants.COMMAND_CHOICES:
        parser.error(
            "'command' must be one of %s, got %r" % (
                ', '.join(constants.COMMAND_CHOICES), command))
        raise ConfigError(parser.errors)

    cutoffs = data.get('cutoffs')
    if isinstance(cutoffs, list) and len(cutoffs) == 2:
        cutoffs = dict(zip(CUTOFF_KEYS, cutoffs))
    cutoffs = parser.block(cutoffs, 'cutoffs', CUTOFF_KEYS) or {}
    config = ProtocolConfig(
        command=command,
        n_c_cut=parser.cutoff(cutoffs.get('n_c'), 'cutoffs.n_c'),
        n_r_cut=parser.cutoff(cutoffs.get('n_r'), 'cutoffs.n_r'),
    )

    _parse_squeezing(parser, data, config)
    _parse_weights(parser, data, config)
    _parse_displacement(parser, data, config)
    _parse_physical(parser, data, config)
    _parse_sweep(parser, data, config)
    _parse_tolerances(parser, data, config)
    _parse_output(parser, data, config)

    if parser.errors:
        raise ConfigError(parser.errors)
    return config


def _parse_squeezing(parser, data, config):
    has_G = data.get('G') is not None
    coupling = parser.block(data.get('coupling'), 'coupling', COUPLING_KEYS)
    if config.command in SQUEEZING_COMMANDS:
        if has_G and coupling is not None:
            parser.error(
                "Give either 'G' or the 'coupling' block (rabi, eta, eta_r, "
                "t), not both")
        elif not has_G and coupling is None:
            parser.error(
                "Missing required key 'G' (or a 'coupling' block with rabi, "
                "eta, eta_r and t)")
    if has_G:
        config.G = parser.complex(data['G'], 'G')
    if coupling is not None:
        values = [
            parser.real(coupling.get(key), 'coupling.%s' % key,
                        positive=key != 'rabi' and key != 't')
            for key in COUPLING_KEYS
        ]
        if None not in values:
            config.coupling = EffectiveCoupling(*values)


def _parse_weights(parser, data, config):
    weights = data.get('weights')
    if weights is None:
        if config.command == constants.COMMAND_SUPERPOSE:
            parser.error("Missing required key 'weights'")
        return
    if not isinstance(weights, list):
        parser.error("'weights' must be a list")
        return
    parsed = [
        parser.complex(value, 'weights[%d]' % i)
        for i, value in enumerate(weights)
    ]
    if len(parsed) % 2 or not parsed:
        parser.error(
            "'weights' must hold two weights per cycle (an even, non-zero "
            "number); %d were given" % len(parsed))
        return
    if None not in parsed:
        config.weights = WeightList(parsed)


def _parse_displacement(parser, data, config):
    block = parser.block(
        data.get('displacement'), 'displacement', DISPLACEMENT_KEYS)
    if block is None:
        if config.command == constants.COMMAND_GENERAL:
            parser.error("Missing required block 'displacement'")
        return
    if 't_prime' in block:
        if 'beta_c' in block or 'beta_r' in block:
            parser.error(
                "Give either 't_prime' or 'beta_c' and 'beta_r' in "
                "'displacement', not both")
        elif 'coupling' not in data:
            parser.error(
                "'displacement.t_prime' needs the 'coupling' block to derive "
                "the displacement amplitudes")
        config.t_prime = parser.real(
            block['t_prime'], 'displacement.t_prime')
        return
    config.beta_c = parser.complex(block.get('beta_c'), 'displacement.beta_c')
    config.beta_r = parser.complex(block.get('beta_r'), 'displacement.beta_r')


def _parse_physical(parser, data, config):
    block = parser.block(data.get('physical'), 'physical', PHYSICAL_KEYS)
    if block is None:
        if config.command == constants.COMMAND_VALIDATE_RWA:
            config.physical = PhysicalParams.from_lamb_dicke()
        return
    values = {
        key: parser.real(block.get(key), 'physical.%s' % key, positive=True,
                         required=False)
        for key in PHYSICAL_KEYS
    }
    if 'k' in block and 'eta' in block:
        parser.error(
            "Give either 'physical.k' or 'physical.eta', not both")
        return
    if any(values[key] is None and key in block for key in PHYSICAL_KEYS):
        return
    if values['k'] is not None:
        base = PhysicalParams.from_lamb_dicke(
            mu=values['mu'], nu=values['nu'], rabi=values['rabi'],
            omega0=values['omega0'], mass=values['mass'])
        config.physical = base.with_values(
            k=values['k'], eta_override=None,
            eta_r_override=values['eta_r'])
    else:
        config.physical = PhysicalParams.from_lamb_dicke(
            eta=values['eta'], eta_r=values['eta_r'], mu=values['mu'],
            nu=values['nu'], rabi=values['rabi'], omega0=values['omega0'],
            mass=values['mass'])


def _parse_sweep(parser, data, config):
    block = parser.block(data.get('sweep'), 'sweep', SWEEP_KEYS)
    if block is None:
        if config.command == constants.COMMAND_VALIDATE_RWA:
            parser.error("Missing required block 'sweep'")
        return
    parameter = block.get('parameter')
    if parameter not in constants.SWEEP_PARAMETERS:
        parser.error(
            "'sweep.parameter' must be one of %s, got %r" % (
                ', '.join(constants.SWEEP_PARAMETERS), parameter))
    values = block.get('values')
    if not isinstance(values, list) or not values:
        parser.error("'sweep.values' must be a non-empty list of numbers")
        values = []
    parsed = [
        parser.real(value, 'sweep.values[%d]' % i, positive=True)
        for i, value in enumerate(values)
    ]
    config.sweep_parameter = parameter
    config.sweep_values = [v for v in parsed if v is not None]
    config.sweep_r = parser.real(block.get('r'), 'sweep.r', positive=True)
    try:
        config.expansion_order = ExpansionOrder(
            block.get('order', settings.EXPANSION_ORDER))
    except ValueError as e:
        parser.error("'sweep.order': %s" % e)


def _parse_tolerances(parser, data, config):
    block = parser.block(
        data.get('tolerances'), 'tolerances', tuple(TOLERANCE_SETTINGS))
    if block is None:
        return
    for name, value in sorted(block.items()):
        if name not in TOLERANCE_SETTINGS:
            continue
        value = parser.real(value, 'tolerances.%s' % name, positive=True)
        if value is not None:
            config.tolerances[name] = value
    margin = config.tolerances.get('tail_mass_margin')
    if margin is not None and margin >= 1:
        parser.error("'tolerances.tail_mass_margin' must be below 1")


def _parse_output(parser, data, config):
    block = parser.block(data.get('output'), 'output', OUTPUT_KEYS)
    if block is None:
        return
    path = block.get('path')
    if path is not None and not isinstance(path, str):
        parser.error("'output.path' must be a string")
    config.output_path = path
    fmt = block.get('format', constants.FORMAT_JSON)
    if fmt not in constants.FORMAT_CHOICES:
        parser.error(
            "'output.format' must be one of %s, got %r" % (
                ', '.join(constants.FORMAT_CHOICES), fmt))
    config.output_format = fmt
