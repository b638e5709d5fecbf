"""Exception types raised across the package."""


class PrefnashError(Exception):
    """Base class for all package errors."""


class LtlfSyntaxError(PrefnashError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class CapacityError(PrefnashError, RuntimeError):
    """An automaton or game grew past its configured state bound."""


class PrefSpecError(PrefnashError, ValueError):
    """Malformed PrefLTLf specification text or out-of-range index."""


class InconsistentPreferenceError(PrefnashError, ValueError):
    def __init__(self, message, constraint=None):
        super().__init__(message)
        self.constraint = constraint


class GameValidationError(PrefnashError, ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class ScenarioConfigError(PrefnashError, ValueError):
    pass


class AutomatonMismatchError(PrefnashError, ValueError):
    """The two preference automata do not share one semi-automaton."""


class NonTerminatingError(PrefnashError, ValueError):
    def __init__(self, message, cycle):
        super().__init__(message)
        self.cycle = list(cycle)


class WrongAlignmentError(PrefnashError, ValueError):
    pass


class InvalidProfileError(PrefnashError, ValueError):
    pass


class EmptyParetoError(PrefnashError, ValueError):
    pass


class SizeGuardError(PrefnashError, RuntimeError):
    pass
