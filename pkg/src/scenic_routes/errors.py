class ScenicError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(ScenicError, ValueError):
    """Invalid input document. ``pointer`` is a JSON pointer to the offending value."""

    def __init__(self, message: str, pointer: str = ""):
        self.pointer = pointer
        super().__init__(f"{pointer}: {message}" if pointer else message)
        self.message = message


class DegeneratePairError(ScenicError, ValueError):
    pass


class CapExceeded(ScenicError):
    """A configured size cap (curves, APSP nodes, lattice flats) was exceeded."""


class RoutingError(ScenicError):
    pass
