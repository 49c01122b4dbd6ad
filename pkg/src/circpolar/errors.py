"""Exception types raised by circpolar."""


class CircPolarError(ValueError):
    pass


class InvalidInput(CircPolarError):
    pass


class DegenerateArc(CircPolarError):
    """An arc between consecutive points has zero width."""


class DegenerateConfiguration(CircPolarError):
    """A configuration has coincident points where distinct ones are required."""


class SingularPoint(CircPolarError):
    """Evaluation requested at a zero of the polynomial."""


class EmptyDomain(CircPolarError):
    pass


class MoveTooLarge(CircPolarError):
    pass
