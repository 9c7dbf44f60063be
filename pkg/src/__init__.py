"""
circle-rep - integral representations of functions on the circle
Main package initialization
"""

__version__ = "0.1.0"
__description__ = "Signed and non-negative integral representations on S^1"
