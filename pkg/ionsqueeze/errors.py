class IonSqueezeError(Exception):
    """
    Base class for every error raised by ionsqueeze. Guard failures carry the
    module and guard that fired, the tolerance the guard was configured with
    and the offending value, so the command layer can report them verbatim.
    """
    default_module = 'ionsqueeze'
    default_guard = None

    def __init__(self, message, module=None, guard=None, tolerance=None,
                 value=None):
        super().__init__(message)
        self.message = message
        self.module = module or self.default_module
        self.guard = guard or self.default_guard
        self.tolerance = tolerance
        self.value = value

    def to_dict(self):
        return {
            'type': self.__class__.__name__,
            'module': self.module,
            'guard': self.guard,
            'tolerance': self.tolerance,
            'value': self.value,
            'message': self.message,
        }


class ConfigError(IonSqueezeError):
    default_module = 'cli'
    default_guard = 'config'

    def __init__(self, errors):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        super().__init__(
            "The run configuration is invalid (%d problem%s): %s" % (
                len(self.errors), '' if len(self.errors) == 1 else 's',
                '; '.join(self.errors)))

    def to_dict(self):
        data = super().to_dict()
        data['errors'] = self.errors
        return data


# ---------------------------------------------------------------------------
# Input errors
# ---------------------------------------------------------------------------

class InvalidCutoffError(IonSqueezeError, ValueError):
    default_module = 'state-core'
    default_guard = 'cutoff'

    def __init__(self, name, value):
        super().__init__(
            "The Fock cutoff `%s` must be an integer of at least 1 (two Fock "
            "levels are needed to represent squeezing). A value of %r was "
            "supplied." % (name, value), value=value)


class FockRangeError(IonSqueezeError, ValueError):
    default_module = 'state-core'
    default_guard = 'fock-range'

    def __init__(self, mode, n, cutoff):
        super().__init__(
            "Fock index %r is out of range for %s, which is truncated at "
            "n=%d." % (n, mode, cutoff), value=n)


class DimensionMismatchError(IonSqueezeError, ValueError):
    default_module = 'state-core'
    default_guard = 'dimension'

    def __init__(self, what, expected, actual):
        super().__init__(
            "%s has shape %s, but %s was expected." % (
                what, actual, expected))


class SpaceMismatchError(IonSqueezeError, ValueError):
    default_module = 'state-core'
    default_guard = 'space'

    def __init__(self, left, right):
        super().__init__(
            "Objects defined on different spaces cannot be combined: %s "
            "and %s." % (left, right))


# ---------------------------------------------------------------------------
# Numerical guards
# ---------------------------------------------------------------------------

class NumericalGuardError(IonSqueezeError, ArithmeticError):
    """
    Raised whenever a computed quantity violates a configured tolerance.
    """

    def __init__(self, message, module=None, guard=None, tolerance=None,
                 value=None):
        if tolerance is not None and value is not None:
            message = '%s (value %.3e, tolerance %.3e)' % (
                message, value, tolerance)
        super().__init__(message, module, guard, tolerance, value)


class TruncationError(NumericalGuardError):
    default_module = 'operators'
    default_guard = 'tail-mass'


class UnitarityError(NumericalGuardError):
    default_module = 'operators'
    default_guard = 'unitarity'


class NotAntiHermitianError(NumericalGuardError):
    default_module = 'operators'
    default_guard = 'anti-hermitian'


class NotHermitianError(NumericalGuardError):
    default_module = 'state-core'
    default_guard = 'hermitian'


class FactorizationError(NumericalGuardError):
    default_module = 'protocols'
    default_guard = 'factorization'


class ZeroProbabilityError(NumericalGuardError):
    default_module = 'protocols'
    default_guard = 'post-selection'


class ImpureStateError(NumericalGuardError):
    default_module = 'analysis'
    default_guard = 'purity'


class NormalizationError(NumericalGuardError):
    default_module = 'state-core'
    default_guard = 'normalization'


class LambdaDickeError(NumericalGuardError):
    default_module = 'dynamics'
    default_guard = 'lamb-dicke'


class NormDriftError(NumericalGuardError):
    default_module = 'dynamics'
    default_guard = 'norm-drift'


class StepUnderflowError(NumericalGuardError):
    default_module = 'dynamics'
    default_guard = 'step-underflow'

    def __init__(self, time, step, min_step):
        self.time = time
        super().__init__(
            "The integrator step fell below its minimum at t=%.9e s; the "
            "Hamiltonian is too stiff for the requested tolerance" % time,
            tolerance=min_step, value=step)

    def to_dict(self):
        data = super().to_dict()
        data['time'] = self.time
        return data
