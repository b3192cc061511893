"""Exception hierarchy shared by all hyperkit modules."""


class HypergroupError(Exception):
    """Base class for all hyperkit errors."""


class StructureError(HypergroupError):
    """Malformed data: bad tensor shapes, invalid documents, non-subgroups.

    Distinct from axiom violations, which concern well-shaped but
    mathematically inconsistent data.
    """


class AxiomError(HypergroupError):
    """A well-formed object violates a required algebraic axiom.

    Carries optional machine-readable context: a ``ValidationReport`` in
    ``report`` and/or an offending index tuple in ``detail``.
    """

    def __init__(self, message, report=None, detail=None):
        super().__init__(message)
        self.report = report
        self.detail = detail


class PreconditionError(HypergroupError):
    """An operation was called on input outside its domain.

    Examples: character analysis of a non-commutative table, composing
    boundary states whose middle objects disagree, mixtures over
    different tables.
    """


class NumericalError(HypergroupError):
    """An iterative kernel failed to converge or stay non-degenerate."""
