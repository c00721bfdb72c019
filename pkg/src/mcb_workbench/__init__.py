"""
Matroidal Cayley-Bacharach workbench package.
"""

__version__ = "1.0.0"

from .catalog import Catalog
from .claims import run_claims
from .cover import is_mcb, matroid_profile
from .descriptors import load_descriptor, parse_descriptor
from .exporter import Exporter
from .matroid import Matroid
from .models import ClaimRecord, McbProfile, McbReport, ResultSet

__all__ = [
    "Catalog",
    "ClaimRecord",
    "Exporter",
    "Matroid",
    "McbProfile",
    "McbReport",
    "ResultSet",
    "is_mcb",
    "load_descriptor",
    "matroid_profile",
    "parse_descriptor",
    "run_claims",
]
