"""Exact and stochastic solvers package initialization."""
