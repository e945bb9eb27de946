class InputError(ValueError):
    """Malformed or inconsistent input (bad ids, shape mismatch, empty group)."""


class DegenerateInputError(InputError):
    """Input is well-formed but a quantity is undefined on it (e.g. zero variance of s)."""


class EdgeAdditionShortfall(UserWarning):
    """Fewer absent inter-group pairs exist than edge addition needs."""


class EdgeDeletionSkipped(UserWarning):
    """An intra-group edge set is empty, so its deletion probability is undefined."""
