"""Exact computations with structurable tori."""
