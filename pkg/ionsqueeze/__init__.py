from ionsqueeze.utils.version import get_version

# major.minor.patch.release.number
# release must be one of alpha, beta, rc, or final
VERSION = (0, 1, 0, 'beta', 1)
__version__ = get_version(VERSION)


def get_default_space():
    """
    Return a ``SpaceDescriptor`` built from the ``FOCK_CUTOFF`` setting, for
    both the center-of-mass and the breathing mode. Handy in interactive
    sessions where the cutoff is not a concern.
    """
    from ionsqueeze.conf import settings
    from ionsqueeze.hilbert import make_space
    return make_space(settings.FOCK_CUTOFF, settings.FOCK_CUTOFF)
