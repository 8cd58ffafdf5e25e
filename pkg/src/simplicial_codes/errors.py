"""Exception types shared across the package."""


class UsageError(ValueError):
    """Invalid arguments: mismatched fields, malformed subsets, bad recipes."""


class CapacityError(RuntimeError):
    """An enumeration would exceed its configured budget."""

    def __init__(self, what: str, needed: int, budget: int):
        self.what = what
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what}: needs {needed}, budget is {budget}")
