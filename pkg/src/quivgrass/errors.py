"""Exception hierarchy."""


class QuivGrassError(Exception):
    """Base class for validation failures reported to the user."""


class InputSyntaxError(QuivGrassError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class ReferenceError_(QuivGrassError):
    """Unknown vertex or arrow."""


class NonParallelRelationError(QuivGrassError):
    pass


class NonReducingRuleError(QuivGrassError):
    pass


class CompositionError(QuivGrassError):
    """A path whose arrows do not compose, or that does not start at its top's vertex."""


class ClosureError(QuivGrassError):
    """A skeleton is not closed under initial subpaths."""


class LayerMismatchError(QuivGrassError):
    pass


class EmptyVarietyError(QuivGrassError):
    pass


class PreconditionError(QuivGrassError):
    pass
