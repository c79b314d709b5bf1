"""twinspace - generative-space sieves for twin and cousin primes."""

__version__ = "0.1.0"


class TwinspaceError(Exception):
    """Base class for all twinspace errors."""

    pass
