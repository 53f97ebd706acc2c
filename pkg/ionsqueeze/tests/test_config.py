import json

from ionsqueeze.conf import constants, settings
from ionsqueeze.errors import ConfigError
from ionsqueeze.management.config import parse_config
from ionsqueeze.models.params import ExpansionOrder
from ionsqueeze.models.results import WeightList
from ionsqueeze.tests.base import IonSqueezeTestCase


def as_text(**data):
    return json.dumps(data)


class TestParseConfig(IonSqueezeTestCase):

    def assertConfigErrors(self, text, *fragments, command=None):
        with self.assertRaises(ConfigError) as cm:
            parse_config(text, command=command)
        joined = ' | '.join(cm.exception.errors)
        for fragment in fragments:
            self.assertIn(fragment, joined)
        return cm.exception

    def test_minimal_squeeze_config(self):
        config = parse_config(as_text(command='squeeze', G=[0, -0.1]))
        self.assertEqual(config.command, constants.COMMAND_SQUEEZE)
        self.assertEqual(config.G, -0.1j)
        self.assertEqual(
            config.cutoffs, (settings.FOCK_CUTOFF, settings.FOCK_CUTOFF))
        self.assertEqual(config.output_format, constants.FORMAT_JSON)
        self.assertIsNone(config.weights)

    def test_command_can_come_from_the_command_line(self):
        config = parse_config(as_text(G=0.1), command='squeeze')
        self.assertEqual(config.command, 'squeeze')
        self.assertConfigErrors(
            as_text(command='general', G=0.1), "run was started as 'squeeze'",
            command='squeeze')

    def test_complex_number_forms(self):
        for value, expected in ((0.2, 0.2), ([0.1, -0.2], 0.1 - 0.2j),
                                ('0.1 - 0.2j', 0.1 - 0.2j), (1, 1)):
            config = parse_config(as_text(command='squeeze', G=value))
            self.assertEqual(config.G, expected)
        self.assertConfigErrors(
            as_text(command='squeeze', G='abc'), "'G' must be a complex")
        self.assertConfigErrors(
            as_text(command='squeeze', G=True), "'G' must be a complex")

    def test_cutoffs(self):
        config = parse_config(
            as_text(command='squeeze', G=0.1, cutoffs={'n_c': 8, 'n_r': 12}))
        self.assertEqual(config.cutoffs, (8, 12))
        config = parse_config(as_text(command='squeeze', G=0.1,
                                      cutoffs=[5, 6]))
        self.assertEqual(config.cutoffs, (5, 6))
        self.assertConfigErrors(
            as_text(command='squeeze', G=0.1, cutoffs={'n_c': 0, 'n_r': 2.5}),
            "'cutoffs.n_c' must be an integer",
            "'cutoffs.n_r' must be an integer")

    def test_G_and_coupling_are_exclusive(self):
        coupling = {'rabi': 1.0, 'eta': 0.1, 'eta_r': 0.1, 't': 2.0}
        self.assertConfigErrors(
            as_text(command='squeeze', G=0.1, coupling=coupling),
            "either 'G' or the 'coupling' block")
        self.assertConfigErrors(
            as_text(command='squeeze'), "Missing required key 'G'")
        config = parse_config(as_text(command='squeeze', coupling=coupling))
        self.assertAlmostEqual(config.squeeze_parameter, -0.02j)

    def test_every_problem_is_reported(self):
        error = self.assertConfigErrors(
            as_text(command='superpose', G='x', weights=[1, 2, 3],
                    colour='blue', output={'format': 'xml'}),
            "Unknown key 'colour'", "'G' must be a complex",
            "two weights per cycle", "'output.format' must be one of")
        self.assertGreaterEqual(len(error.errors), 4)

    def test_weights(self):
        config = parse_config(
            as_text(command='superpose', G=0.1, weights=[1, [0, 1], '2-1j', 0]))
        self.assertEqual(config.weights, WeightList([1, 1j, 2 - 1j, 0]))
        self.assertConfigErrors(
            as_text(command='superpose', G=0.1), "Missing required key "
            "'weights'")
        self.assertConfigErrors(
            as_text(command='superpose', G=0.1, weights=[]),
            'two weights per cycle')

    def test_unknown_nested_keys(self):
        self.assertConfigErrors(
            as_text(command='general', G=0.1,
                    displacement={'beta_c': 0.1, 'beta_r': 0.1, 'gamma': 1}),
            "Unknown key 'displacement.gamma'")

    def test_general_displacements(self):
        config = parse_config(as_text(
            command='general', G=0.1,
            displacement={'beta_c': [0, 0.1], 'beta_r': '0.05j'}))
        self.assertEqual(config.displacements, (0.1j, 0.05j))
        self.assertConfigErrors(
            as_text(command='general', G=0.1),
            "Missing required block 'displacement'")

    def test_displacements_from_the_second_interaction_time(self):
        coupling = {'rabi': 2.0, 'eta': 0.1, 'eta_r': 0.05, 't': 1.0}
        config = parse_config(as_text(
            command='general', coupling=coupling,
            displacement={'t_prime': 3.0}))
        beta_c, beta_r = config.displacements
        self.assertAlmostEqual(beta_c, 0.2j)
        self.assertAlmostEqual(beta_r, 0.3j)
        self.assertConfigErrors(
            as_text(command='general', G=0.1, displacement={'t_prime': 1.0}),
            "'displacement.t_prime' needs the 'coupling' block")
        self.assertConfigErrors(
            as_text(command='general', coupling=coupling,
                    displacement={'t_prime': 1.0, 'beta_c': 0.1}),
            "Give either 't_prime'")

    def test_tolerances_become_settings_overrides(self):
        config = parse_config(as_text(
            command='squeeze', G=0.1,
            tolerances={'tail_mass_budget': 1e-4, 'integrator': 1e-7}))
        self.assertEqual(config.settings_overrides(), {
            'TAIL_MASS_BUDGET': 1e-4,
            'INTEGRATOR_TOLERANCE': 1e-7,
        })
        echo = config.as_dict()
        self.assertEqual(echo['settings']['TAIL_MASS_BUDGET'], 1e-4)
        self.assertNotEqual(settings.TAIL_MASS_BUDGET, 1e-4)
        self.assertConfigErrors(
            as_text(command='squeeze', G=0.1,
                    tolerances={'tail_mass_margin': 1.5, 'expm': -1}),
            "'tolerances.tail_mass_margin' must be below 1",
            "'tolerances.expm' must be positive")

    def test_validate_rwa_requirements(self):
        self.assertConfigErrors(
            as_text(command='validate-rwa'), "Missing required block 'sweep'")
        self.assertConfigErrors(
            as_text(command='validate-rwa',
                    sweep={'parameter': 'mu', 'values': [], 'r': 0.1,
                           'order': 3}),
            "'sweep.parameter' must be one of",
            "'sweep.values' must be a non-empty list",
            "'sweep.order'")
        config = parse_config(as_text(
            command='validate-rwa',
            sweep={'parameter': 'eta', 'values': [0.05, 0.1], 'r': 0.1}))
        self.assertEqual(config.sweep_values, [0.05, 0.1])
        self.assertEqual(config.expansion_order,
                         ExpansionOrder(settings.EXPANSION_ORDER))
        self.assertEqual(config.physical.eta, settings.LAMB_DICKE_PARAMETER)
        self.assertEqual(config.as_dict()['sweep']['parameter'], 'eta')

    def test_physical_block(self):
        config = parse_config(as_text(
            command='validate-rwa', physical={'eta': 0.05, 'eta_r': 0.04},
            sweep={'parameter': 'eta', 'values': [0.1], 'r': 0.1,
                   'order': 'exact-cosine'}))
        self.assertEqual((config.physical.eta, config.physical.eta_r),
                         (0.05, 0.04))
        self.assertTrue(config.expansion_order.is_exact)
        self.assertConfigErrors(
            as_text(command='validate-rwa', physical={'eta': 0.1, 'k': 1e7},
                    sweep={'parameter': 'eta', 'values': [0.1], 'r': 0.1}),
            "either 'physical.k' or 'physical.eta'")

    def test_invalid_documents(self):
        self.assertConfigErrors('{', 'not valid JSON')
        self.assertConfigErrors('[1, 2]', 'must be a JSON object')
        self.assertConfigErrors(as_text(G=0.1), "'command' must be one of")

    def test_conventions_needs_no_configuration(self):
        config = parse_config('', command='conventions')
        self.assertEqual(config.command, constants.COMMAND_CONVENTIONS)
        self.assertIsNone(config.squeeze_parameter)
