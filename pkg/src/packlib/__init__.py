"""Placements of several edge-disjoint copies of a sparse graph in a complete graph."""

from .graph import Graph
from .placement import Placement, Status, VerificationReport, verify

__version__ = "0.1.0"

__all__ = ["Graph", "Placement", "Status", "VerificationReport", "verify", "__version__"]
