"""Exact Cardy-case boundary states and annulus amplitudes for finite CFTs."""

__version__ = "0.1.0"
