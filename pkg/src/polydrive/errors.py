"""Structured exceptions raised throughout the package."""


class PolydriveError(Exception):
    """Base class for all errors raised by polydrive."""


class DimensionMismatchError(PolydriveError):
    """Operands have incompatible Hilbert-space dimensions."""


class NotHermitianError(PolydriveError):
    """An operation required a Hermitian operator and got something else."""


class ValidationError(PolydriveError):
    """A domain-type invariant was violated at construction time."""


class NearSingularError(PolydriveError):
    """Dirichlet-kernel envelope evaluated too close to a removable singularity."""


class IntegrationError(PolydriveError):
    """The adaptive integrator failed (step underflow, NaN, or negativity)."""


class UnknownScenarioError(PolydriveError):
    """Requested scenario id is not a builtin."""

    def __init__(self, scenario_id, valid_ids):
        self.scenario_id = scenario_id
        self.valid_ids = tuple(valid_ids)
        super().__init__(
            f"unknown scenario {scenario_id!r}; valid ids: {', '.join(self.valid_ids)}"
        )


class UnknownLabelError(PolydriveError):
    """Requested observable label cannot be resolved in the model basis."""
