"""Exception types shared across the package."""


class PrecisionError(ArithmeticError):
    """A result would carry no reliable p-adic digit."""


class UnsupportedCaseError(Exception):
    """The request is outside what the library decides (p <= 3, p | q)."""


class HenselSeedError(ValueError):
    """A lifting seed fails one of the Hensel congruences."""
