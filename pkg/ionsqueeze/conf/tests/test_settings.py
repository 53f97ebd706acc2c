from unittest import TestCase

from django.conf import settings as django_settings
from django.test import override_settings

from ionsqueeze.conf import defaults, settings


class TestSettingsHelper(TestCase):

    def test_defaults_are_returned_when_nothing_is_overridden(self):
        self.assertEqual(settings.FOCK_CUTOFF, defaults.FOCK_CUTOFF)
        self.assertEqual(settings.EXPM_TOLERANCE, 1e-12)
        self.assertEqual(settings.INTEGRATOR_TOLERANCE, 1e-9)
        self.assertEqual(settings.TAIL_MASS_BUDGET, 1e-6)

    def test_unsupported_setting_raises_attribute_error(self):
        with self.assertRaises(AttributeError):
            settings.NOT_A_SETTING

    def test_is_supported(self):
        self.assertTrue(settings.is_supported('FOCK_CUTOFF'))
        self.assertFalse(settings.is_supported('math'))
        self.assertFalse(settings.is_supported('NOT_A_SETTING'))

    def test_override_is_scoped(self):
        with settings.override(FOCK_CUTOFF=12):
            self.assertEqual(settings.FOCK_CUTOFF, 12)
            self.assertEqual(django_settings.IONSQUEEZE_FOCK_CUTOFF, 12)
        self.assertEqual(settings.FOCK_CUTOFF, defaults.FOCK_CUTOFF)

    @override_settings(IONSQUEEZE_TAIL_MASS_BUDGET=1e-4)
    def test_prefixed_django_settings_are_honoured(self):
        self.assertEqual(settings.TAIL_MASS_BUDGET, 1e-4)

    def test_nested_overrides_resolve_innermost_first(self):
        with settings.override(FOCK_CUTOFF=12, TAIL_MASS_BUDGET=1e-3):
            with settings.override(FOCK_CUTOFF=8):
                self.assertEqual(settings.FOCK_CUTOFF, 8)
                self.assertEqual(settings.TAIL_MASS_BUDGET, 1e-3)
            self.assertEqual(settings.FOCK_CUTOFF, 12)

    def test_override_works_as_a_decorator(self):

        @settings.override(EXPANSION_ORDER=4)
        def read():
            return settings.EXPANSION_ORDER

        self.assertEqual(read(), 4)
        self.assertEqual(settings.EXPANSION_ORDER, defaults.EXPANSION_ORDER)

    def test_override_rejects_unsupported_names(self):
        with self.assertRaises(AttributeError):
            settings.override(NOT_A_SETTING=1)

    def test_override_is_removed_when_the_block_raises(self):
        with self.assertRaises(RuntimeError):
            with settings.override(FOCK_CUTOFF=3):
                raise RuntimeError
        self.assertEqual(settings.FOCK_CUTOFF, defaults.FOCK_CUTOFF)

    def test_as_dict_lists_every_default_in_sorted_order(self):
        values = settings.as_dict()
        self.assertEqual(list(values), sorted(values))
        self.assertIn('FOCK_CUTOFF', values)
        self.assertIn('REPORT_FLOAT_DIGITS', values)
        self.assertNotIn('math', values)
        with settings.override(FOCK_CUTOFF=5):
            self.assertEqual(settings.as_dict(['FOCK_CUTOFF']),
                             {'FOCK_CUTOFF': 5})


class TestEnvironmentSettings(TestCase):

    def test_values_are_coerced_to_the_default_type(self):
        values = settings.environment_settings({
            'IONSQUEEZE_FOCK_CUTOFF': '14',
            'IONSQUEEZE_EXPM_TOLERANCE': '1e-10',
            'PATH': '/usr/bin',
        })
        self.assertEqual(values, {
            'IONSQUEEZE_FOCK_CUTOFF': 14,
            'IONSQUEEZE_EXPM_TOLERANCE': 1e-10,
        })
        self.assertIsInstance(values['IONSQUEEZE_FOCK_CUTOFF'], int)

    def test_unknown_names_are_ignored(self):
        self.assertEqual(
            settings.environment_settings({'IONSQUEEZE_COLOUR': 'blue'}), {})

    def test_unreadable_value_raises_value_error(self):
        with self.assertRaises(ValueError):
            settings.environment_settings({'IONSQUEEZE_FOCK_CUTOFF': 'thirty'})
