"""Exception types shared across the package."""


class SymnetError(Exception):
    """Base class for symnet-specific failures."""


class CapabilityError(SymnetError):
    """Requested problem size exceeds the brute-force design limits."""


class DivergenceError(SymnetError):
    """Training loss blew up; carries the epoch at which it happened."""

    def __init__(self, epoch, loss):
        super().__init__(f"training diverged at epoch {epoch} (loss={loss:.3e})")
        self.epoch = epoch
        self.loss = loss


class NumericError(SymnetError):
    """An iterative numerical routine failed to converge."""
