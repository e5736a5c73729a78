"""Friendship and enmity paradoxes in signed networks."""
from .errors import (
    EmptyWorldError,
    EnmityError,
    GenerationError,
    MissingAttributeError,
    SizeCapError,
    StructuralError,
    WalkOverflowError,
)
from .graph import DegreeView, GraphView, SignedDigraph, degrees, make_view, validate
from .paradox import AttributeVector, ParadoxReport, ParadoxVariant, compute

__version__ = "0.1.0"

__all__ = [
    "AttributeVector",
    "DegreeView",
    "EmptyWorldError",
    "EnmityError",
    "GenerationError",
    "GraphView",
    "MissingAttributeError",
    "ParadoxReport",
    "ParadoxVariant",
    "SignedDigraph",
    "SizeCapError",
    "StructuralError",
    "WalkOverflowError",
    "compute",
    "degrees",
    "make_view",
    "validate",
]
