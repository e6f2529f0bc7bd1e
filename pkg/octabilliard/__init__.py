"""
Exact outer billiard dynamics outside the regular octagon.
"""

__version__ = "0.1.0"
