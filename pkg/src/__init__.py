"""Free-fall feasibility toolkit for gravitational and CSL decoherence tests."""

__version__ = '0.1.0'
