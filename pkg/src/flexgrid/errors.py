"""Exception hierarchy shared across the package."""


class FlexgridError(Exception):
    """Base class for all package-specific errors."""


class NumericalError(FlexgridError):
    """The LP solver could not make progress (ill-conditioned input)."""


class EmptyPolyhedronError(FlexgridError):
    """Operation requires a nonempty polyhedron."""


class UnboundedRegionError(FlexgridError):
    """2-D vertex enumeration asked for an unbounded polyhedron."""


class SeedInfeasibleError(FlexgridError):
    """A region-enumeration seed produced an infeasible LP."""


class DegenerateBasisCycleError(FlexgridError):
    """Facet crossing revisited bases without progress."""


class NotCoveredError(FlexgridError):
    """Parameter point lies in a hole of the region store."""


class OutsideRegionError(FlexgridError):
    """Policy evaluated at a point outside its critical region."""


class InconsistentSegmentsError(FlexgridError):
    """Segment count of the value function does not match the problem."""


class InfeasibleAtBoundError(FlexgridError):
    """Planning LP infeasible at an extreme of the state range."""


class EmptyChartError(FlexgridError):
    """No critical region survives projection; measurement infeasible."""


class OutsideChartError(FlexgridError):
    """Requested setpoint lies outside the flexibility chart union."""


class CentralInfeasibleError(FlexgridError):
    """Central dispatch cannot satisfy network limits with offered charts."""

    def __init__(self, message, binding_node=None):
        super().__init__(message)
        self.binding_node = binding_node


class ConfigError(FlexgridError):
    """Bad configuration file, missing input file, or schema mismatch."""
