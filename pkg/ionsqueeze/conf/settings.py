import os
import sys

from cogwheels import BaseAppSettingsHelper
from django.conf import settings as django_settings
from django.test.utils import override_settings

from ionsqueeze.conf import defaults

PREFIX = 'IONSQUEEZE_'


def supported_names():
    return sorted(name for name in dir(defaults) if name.isupper())


def coerce(name, raw):
    """Read the string ``raw`` as the type of the default for ``name``."""
    default = getattr(defaults, name)
    if isinstance(default, bool):
        return raw.strip().lower() in ('1', 'true', 'yes', 'on')
    try:
        return type(default)(raw)
    except (TypeError, ValueError):
        raise ValueError(
            "The environment variable '%s%s' could not be read as %s: %r" % (
                PREFIX, name, type(default).__name__, raw))


def environment_settings(environ=None):
    """
    Return the prefixed settings defined as ``IONSQUEEZE_<NAME>`` environment
    variables, coerced to the types of their defaults.
    """
    environ = os.environ if environ is None else environ
    return {
        PREFIX + name: coerce(name, environ[PREFIX + name])
        for name in supported_names() if PREFIX + name in environ
    }


# Outside a Django project the environment is the only source of
# user-defined values
if not django_settings.configured:
    django_settings.configure(**environment_settings())


class IonSqueezeSettingsHelper(BaseAppSettingsHelper):
    """
    Values are looked up in this order:

    1.  Any value supplied to an active ``override()`` block (or Django's
        ``override_settings`` with the ``IONSQUEEZE_`` prefix)
    2.  An ``IONSQUEEZE_<NAME>`` environment variable, read once on import
    3.  The default value from ``ionsqueeze.conf.defaults``
    """
    deprecations = ()

    environment_settings = staticmethod(environment_settings)

    def __getattr__(self, name):
        if name.isupper() and not self.is_supported(name):
            raise AttributeError(
                "'%s' is not a supported ionsqueeze setting." % name)
        return super().__getattr__(name)

    def is_supported(self, name):
        return name.isupper() and hasattr(defaults, name)

    def as_dict(self, names=None):
        if names is None:
            names = supported_names()
        return {name: getattr(self, name) for name in sorted(names)}

    def override(self, **values):
        """
        Temporarily replace settings, as a context manager or a decorator.
        """
        for name in values:
            if not self.is_supported(name):
                raise AttributeError(
                    "'%s' is not a supported ionsqueeze setting." % name)
        return override_settings(
            **{PREFIX + name: value for name, value in values.items()})


sys.modules[__name__] = IonSqueezeSettingsHelper()
