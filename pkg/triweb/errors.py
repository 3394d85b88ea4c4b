# Exception hierarchy shared by every triweb module


class TriwebError(Exception):
    """Base class for all triweb errors"""


class ValidationError(TriwebError, ValueError):
    """Invalid arguments or inconsistent input data"""


class NonInvertibleError(TriwebError, ZeroDivisionError):
    """Inversion of a zero field element"""


class NoSuchLabelError(ValidationError):
    """Strand labels outside [0, n] or summing past n"""


class HypothesisError(ValidationError):
    """Functor hypotheses violated and no override given"""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("functor hypotheses violated: " + "; ".join(self.violations))


class PreconditionError(TriwebError):
    """A guarded operation was called before its preconditions held"""


class SchemaError(ValidationError):
    """JSON document does not match the presentation schema"""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__(f"{len(self.problems)} schema problem(s): " + "; ".join(self.problems))


class ReconstructionError(ValidationError):
    """Lines rebuilt from point triples are inconsistent"""

    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")
