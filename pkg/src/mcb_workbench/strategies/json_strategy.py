"""
JSON export strategy implementation.
"""

import json

from loguru import logger

from ..models import ResultSet
from .base import ExportStrategy


class JsonExportStrategy(ExportStrategy):
    """
    Exports result sets as JSON.

    Output is indented by two spaces, keeps key insertion order and carries
    no timestamps, so identical runs give identical bytes.
    """

    def render(self, result: ResultSet) -> str:
        """Serialize the payload; infinity is already None and becomes null."""
        try:
            text = json.dumps(result.payload, indent=2, ensure_ascii=False)
        except (TypeError, ValueError) as e:
            # TypeError: Object not JSON serializable
            error_msg = f"JSON encoding failed: {type(e).__name__}: {str(e)}"
            logger.error(error_msg)
            raise
        logger.debug(f"JSON rendered for '{result.command}': {len(text):,} characters")
        return text + "\n"

    def get_file_extension(self) -> str:
        """Get JSON file extension."""
        return "json"
