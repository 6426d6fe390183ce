"""Exception hierarchy shared by all modules."""


class TorsionFormsError(Exception):
    """Base class for every error raised by the library."""


class ModelSyntaxError(TorsionFormsError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class UnknownGenerator(TorsionFormsError):
    pass


class SymbolTableIncomplete(TorsionFormsError):
    pass


class AxiomViolation(TorsionFormsError):
    """A model fails one of the symbol-map axioms; ``witness`` names the offending pair."""

    def __init__(self, axiom, witness, message=None):
        self.axiom = axiom
        self.witness = witness
        super().__init__(message or f"axiom {axiom!r} violated at {witness}")


class UnknownCatalogModel(TorsionFormsError):
    pass


class NonRealModel(TorsionFormsError):
    pass


class ModelMismatch(TorsionFormsError):
    pass


class EmptyForm(TorsionFormsError):
    pass


class DimensionExceeded(TorsionFormsError):
    pass


class DimensionNotPower(TorsionFormsError):
    pass


class NotPfister(TorsionFormsError):
    pass


class IsotropicInput(TorsionFormsError):
    pass


class NotTotallyPositive(TorsionFormsError):
    pass


class CapExceeded(TorsionFormsError):
    pass


class CapTooSmall(TorsionFormsError):
    pass


class SearchExhausted(TorsionFormsError):
    pass


class Unsupported(TorsionFormsError):
    pass


class NotAnExtension(TorsionFormsError):
    pass


class NameCollision(TorsionFormsError):
    pass


class ConsistencyViolation(TorsionFormsError):
    """Two independent computations of the same quantity disagree."""


class LocalGlobalViolation(ConsistencyViolation):
    """Signature-zero and finite Witt order disagree for some form."""


class SubgroupViolation(ConsistencyViolation):
    pass


class TheoremViolation(TorsionFormsError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)
