"""Mean cycle time toolkit for stochastic 2x2 max-plus systems."""

__version__ = "1.0.0"
