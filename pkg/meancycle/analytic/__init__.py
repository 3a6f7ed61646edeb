"""Closed-form formula catalog package initialization."""
