"""Simulate a switched-PID adaptive cruise controller and check LTL properties on its traces."""

__version__ = "0.1.0"
