"""Exception hierarchy shared by all krystal modules."""


class KrystalError(Exception):
    """Base class for every error raised by krystal."""


class ConfigurationError(KrystalError):
    """Unsupported Cartan type or rank."""


class UsageError(KrystalError, ValueError):
    """A precondition of an operation was violated by the caller."""


class BudgetError(KrystalError):
    """A vertex or step budget was exhausted."""

    def __init__(self, budget_name, limit):
        super().__init__(f"{budget_name} exceeded (limit {limit})")
        self.budget_name = budget_name
        self.limit = limit


class ModelError(KrystalError):
    """An internal realization contradicted itself (formula or cocycle mismatch)."""


class TheoremViolation(KrystalError):
    """A computed object contradicts a statement that must hold."""
