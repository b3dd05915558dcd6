"""
sparsecut - strength of sparse cutting-plane closures for sparse MILPs.
"""

__version__ = "0.1.0"

__all__ = ["__version__"]
