"""Collar moduli, discrete extremal length, and parabolicity of flute-like surfaces."""

__version__ = "0.1.0"
