"""Exhaustive enumeration of pure square-free ideals and the f-ideal census."""
