"""Integral Rasmussen invariants from the filtered Bar-Natan complex."""
