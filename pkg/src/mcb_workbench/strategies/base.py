"""
Abstract base class for export strategies.
Implements Strategy Pattern following Open/Closed Principle (OCP).
"""

from abc import ABC, abstractmethod
from pathlib import Path

from loguru import logger

from ..models import ResultSet


class ExportStrategy(ABC):
    """
    Abstract base class for export strategies.

    A strategy turns a format-neutral ResultSet into text. Writing to disk is
    shared: render first, then write the text in one go, so partial files are
    never left behind by a rendering error.
    """

    @abstractmethod
    def render(self, result: ResultSet) -> str:
        """
        Render a result set as text.

        Args:
            result: ResultSet produced by a command

        Returns:
            The complete document, ending with a newline
        """
        pass

    @abstractmethod
    def get_file_extension(self) -> str:
        """
        Get the file extension for this export format.

        Returns:
            File extension (e.g., 'json', 'tsv')
        """
        pass

    async def export(self, result: ResultSet, output_path: Path) -> None:
        """
        Render and write a result set.

        Args:
            result: ResultSet to export
            output_path: Path where the file should be saved

        Raises:
            ValueError: If the result set is malformed
            OSError: If the file cannot be written
        """
        self.validate_result(result)
        self.ensure_output_directory(output_path)
        text = self.render(result)
        try:
            with open(output_path, "w", newline="", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as e:
            error_msg = f"Failed to write {output_path}: {type(e).__name__}: {str(e)}"
            logger.error(error_msg)
            raise OSError(error_msg) from e
        logger.debug(f"{output_path} written: {output_path.stat().st_size:,} bytes")

    def validate_result(self, result: ResultSet) -> None:
        """
        Validate a result set before export.

        Args:
            result: ResultSet to validate

        Raises:
            ValueError: If rows do not match the header width
        """
        width = len(result.headers)
        for i, row in enumerate(result.rows):
            if len(row) != width:
                error_msg = (
                    f"Row {i + 1} of '{result.command}' has {len(row)} fields, expected {width}"
                )
                logger.error(error_msg)
                raise ValueError(error_msg)

        logger.debug(f"Validation passed: {len(result.rows)} rows of '{result.command}'")

    def ensure_output_directory(self, output_path: Path) -> None:
        """
        Ensure output directory exists.

        Args:
            output_path: Path to the output file

        Raises:
            IOError: If directory cannot be created
        """
        try:
            output_path.parent.mkdir(parents=True, exist_ok=True)
            logger.debug(f"Output directory ensured: {output_path.parent.absolute()}")
        except Exception as e:
            error_msg = f"Failed to create output directory: {type(e).__name__}: {str(e)}"
            logger.error(error_msg)
            raise OSError(error_msg) from e
