"""Storage and terminal output helpers."""
