"""Exact computational toolkit for canonical bases attached to Coxeter systems
and their twisted involutions.

Everything is integer-exact: coefficients live in Z[v, v^-1] and group
elements are ShortLex-minimal reduced words.  No floats anywhere.
"""

__version__ = "0.1.0"
