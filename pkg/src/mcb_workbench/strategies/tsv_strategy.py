"""
TSV export strategy implementation.
"""

import csv
import io

from loguru import logger

from ..models import ResultSet
from .base import ExportStrategy


class TsvExportStrategy(ExportStrategy):
    """
    Exports result sets as tab-separated values.

    One header row, then one row per record; the claims report writes one row
    per (claim, instance) observation.
    """

    def render(self, result: ResultSet) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, delimiter="\t", lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
        writer.writerow(result.headers)
        rows_written = 0
        for row in result.rows:
            writer.writerow(row)
            rows_written += 1

            if rows_written % 100 == 0:
                logger.debug(f"Progress: {rows_written}/{len(result.rows)} rows written")

        logger.debug(f"All {rows_written} rows of '{result.command}' rendered")
        return buffer.getvalue()

    def get_file_extension(self) -> str:
        """Get TSV file extension."""
        return "tsv"
