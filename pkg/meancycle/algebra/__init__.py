"""Max-plus algebra package initialization."""
