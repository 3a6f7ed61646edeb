"""Numerical building blocks package initialization."""
