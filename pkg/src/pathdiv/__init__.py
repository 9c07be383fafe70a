"""
Pathdiv - connected EF1 divisions of a path of indivisible goods.

This package computes divisions of a path of items into connected bundles
that are envy-free up to one outer item, by coloring a half-step Kuhn
triangulation of the knife simplex, locating fully-colored elementary
simplices, and rounding them into full divisions. Every division it emits
is certified by an independent checker.
"""

__version__ = "0.1.0"
__author__ = "Pathdiv Team"
