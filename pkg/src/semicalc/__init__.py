"""Exact calculus for a family of Thompson-like groups acting on [0, 1)
by piecewise linear fractional maps."""
