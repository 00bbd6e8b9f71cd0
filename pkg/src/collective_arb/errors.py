"""Exception types shared across the package."""


class ValidationError(ValueError):
    """A model, cone or claim violates a structural invariant.

    ``where`` names the offending field/location, ``message`` the first
    violated invariant.
    """

    def __init__(self, where: str, message: str):
        self.where = where
        self.message = message
        super().__init__(f"{where}: {message}")


class InternalInvariantError(AssertionError):
    """A certificate produced by the engine failed exact re-verification."""


class FairnessUnavailable(RuntimeError):
    """Fairness allocation preconditions fail (e.g. the exchange cone does
    not contain all deterministic zero-sum transfers, or the collective
    super-replication price is not finite)."""
