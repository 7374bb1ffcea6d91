class LatticeLimitError(RuntimeError):
    """The enumeration visited more lattice points than the configured limit."""

    def __init__(self, limit):
        self.limit = limit
        super().__init__(f"lattice enumeration exceeded {limit} points")
