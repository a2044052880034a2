"""Exception types shared across the package.

All of them derive from ValueError so generic misuse handling keeps working,
but callers that care can tell apart geometry problems, model-domain
violations and scenario-document defects.
"""


class GeometryError(ValueError):
    """The requested fiber cross-section cannot be realized."""


class ModelValidityError(ValueError):
    """Inputs fall outside the domain of the perturbation model."""


class ScenarioError(ValueError):
    """A scenario document failed to parse or validate."""
