class GraphFormatError(ValueError):
    """Raised when an edge list or graph6 string cannot be decoded."""


class DisconnectedGraphError(ValueError):
    """Raised when an operation needs a connected graph and gets something else."""

    def __init__(self, components: int):
        self.components = components
        super().__init__(f"graph is disconnected ({components} connected components)")


class ConvergenceError(ArithmeticError):
    """An iterative numerical routine hit its iteration cap."""


class GenerationError(RuntimeError):
    """Random generation exhausted its retry budget."""
