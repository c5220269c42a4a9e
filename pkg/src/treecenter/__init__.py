"""Weighted p-center solver for tree networks."""
