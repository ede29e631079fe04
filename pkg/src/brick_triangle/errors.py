class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class NoSolution(RuntimeError):
    """A search or root solve found nothing satisfying its constraints."""
