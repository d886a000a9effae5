"""
docuscle_types: schemas, typed errors and deterministic ids shared by the
docuscle packages.
"""

__version__ = "0.1.0"
