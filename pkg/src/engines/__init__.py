"""
Engines package initialization
"""

from .representation_engine import RepresentationEngine
from .creutz_embedding import CreutzEmbedding

__all__ = ["RepresentationEngine", "CreutzEmbedding"]
