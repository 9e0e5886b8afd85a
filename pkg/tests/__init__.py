"""Test suite for boxc."""
