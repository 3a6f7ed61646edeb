"""API routes package initialization."""
