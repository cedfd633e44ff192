"""Boundary behaviour of bicritical dynamical curves Per_{d,n}."""
