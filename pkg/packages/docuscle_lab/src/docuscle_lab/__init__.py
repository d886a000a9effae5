"""
docuscle lab: batch studies, configuration and the ``docuscle`` CLI.
"""

__version__ = "0.1.0"
