"""Exception types shared across the package."""


class SimulatorError(Exception):
    """Base class for all errors raised by ssh2d."""


class LatticeError(SimulatorError):
    """Invalid lattice geometry, site, link set, or gauge data."""


class SpectrumError(SimulatorError):
    """Invalid input to an eigensolver or mode classifier."""


class SteadyStateError(SimulatorError):
    """Invalid pump/dissipation data or an undefined concentration factor."""


class HardwareRangeError(SimulatorError):
    """A frequency or modulation amplitude falls outside the hardware window."""


class ConfigError(SimulatorError):
    """Malformed or out-of-range configuration input."""
