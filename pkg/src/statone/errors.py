class SignatureMismatch(ValueError):
    """Two values from different algebras were combined."""


class InvalidOperatorError(ValueError):
    """An operator, self-map or homomorphism fails its defining conditions."""


class IntertwiningError(ValueError):
    """A morphism does not commute with the internal states of its endpoints."""


class CapExceededError(RuntimeError):
    """An exhaustive sweep would exceed the configured size cap."""
