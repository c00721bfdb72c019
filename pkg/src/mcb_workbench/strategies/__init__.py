"""
Export strategies for different output formats.
"""

from .base import ExportStrategy
from .json_strategy import JsonExportStrategy
from .tsv_strategy import TsvExportStrategy

__all__ = [
    "ExportStrategy",
    "JsonExportStrategy",
    "TsvExportStrategy",
]
