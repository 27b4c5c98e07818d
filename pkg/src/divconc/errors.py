"""Exception types shared across the package."""


class CapacityError(Exception):
    """An input exceeds a configured resource cap (memory, tuple count, range)."""


class ConfigurationError(ValueError):
    """Parameters violate a documented constraint."""


class WeightClassError(ValueError):
    """A weight value exceeds its declared prime-power growth cap."""
