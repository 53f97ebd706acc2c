RELEASE_TAGS = {'alpha': 'a', 'beta': 'b', 'rc': 'rc'}


def get_version(version):
    """
    Return a PEP 440 version string from a ``VERSION`` tuple of the form
    ``(major, minor, patch, release, number)``, where ``release`` is one of
    'alpha', 'beta', 'rc' or 'final'.
    """
    main = get_main_version(version)
    if version[3] == 'final':
        return main
    return main + RELEASE_TAGS[version[3]] + str(version[4])


def get_main_version(version):
    "Returns X.Y, or X.Y.Z when the patch number is non-zero."
    parts = 3 if version[2] else 2
    return '.'.join(str(x) for x in version[:parts])
