"""
Export context implementing Strategy Pattern for multi-format output.

Every command produces a format-neutral ResultSet; the Exporter picks the
strategy for the requested format and either writes a file or returns the
rendered text for standard output.
"""

from pathlib import Path

from loguru import logger

from .models import ResultSet
from .strategies.base import ExportStrategy
from .strategies.json_strategy import JsonExportStrategy
from .strategies.tsv_strategy import TsvExportStrategy


class ExporterError(ValueError):
    """Base exception for exporter errors."""

    pass


class Exporter:
    """
    Export context that delegates to format-specific strategies.

    Attributes:
        export_format: Selected export format (json, tsv)
        strategy: Concrete strategy instance for the format

    Example:
        >>> exporter = Exporter(export_format="json")
        >>> print(exporter.render(result_set), end="")
    """

    STRATEGIES: dict[str, type[ExportStrategy]] = {
        "json": JsonExportStrategy,
        "tsv": TsvExportStrategy,
    }

    def __init__(self, export_format: str = "json") -> None:
        """
        Initialize exporter with specified format.

        Args:
            export_format: Export format name (json, tsv)

        Raises:
            ExporterError: If export_format is not supported
        """
        export_format = export_format.lower()

        if export_format not in self.STRATEGIES:
            supported = ", ".join(self.STRATEGIES.keys())
            error_msg = (
                f"Unsupported export format '{export_format}'. Supported formats: {supported}"
            )
            logger.error(error_msg)
            raise ExporterError(error_msg)

        self.export_format = export_format
        self.strategy = self.STRATEGIES[export_format]()

        logger.debug("Exporter initialized successfully")
        logger.debug(f"   Format: {export_format.upper()}")
        logger.debug(f"   Strategy: {self.strategy.__class__.__name__}")

    def render(self, result: ResultSet) -> str:
        self.strategy.validate_result(result)
        return self.strategy.render(result)

    async def export(self, result: ResultSet, output_path: Path) -> Path:
        """
        Write a result set to file using the selected strategy.

        Args:
            result: ResultSet to export
            output_path: Destination file

        Returns:
            Path: Absolute path to the exported file

        Raises:
            ValueError: If the result set is malformed
            OSError: If the file cannot be written
            ExporterError: If export operation fails
        """
        logger.debug("=" * 80)
        logger.debug("EXPORT OPERATION DETAILS")
        logger.debug("=" * 80)
        logger.debug(f"Command:      {result.command}")
        logger.debug(f"Format:       {self.export_format.upper()}")
        logger.debug(f"Rows:         {len(result.rows)}")

        output_path = self.resolve_output_path(output_path)

        try:
            await self.strategy.export(result, output_path)

            if not output_path.exists():
                error_msg = f"Export completed but output file not found: {output_path}"
                logger.error(error_msg)
                raise ExporterError(error_msg)

            logger.info(f"Wrote {output_path} ({output_path.stat().st_size:,} bytes)")
            return output_path.absolute()

        except ValueError:
            # Already logged by strategy
            raise
        except OSError:
            # Already logged by strategy
            raise
        except Exception as e:
            error_msg = f"Export operation failed: {type(e).__name__}: {str(e)}"
            logger.error(error_msg)
            raise ExporterError(error_msg) from e

    def resolve_output_path(self, output_path: Path) -> Path:
        """
        Give a suffix-less output path the strategy's file extension.

        A path that already carries a different suffix is kept as given; the
        mismatch is only logged.

        Args:
            output_path: Destination requested on the command line

        Returns:
            Path: Destination the strategy will write to
        """
        extension = self.strategy.get_file_extension()
        if not output_path.suffix:
            return output_path.with_suffix(f".{extension}")
        if output_path.suffix.lower() != f".{extension}":
            logger.warning(
                f"Output {output_path.name} does not end in .{extension} "
                f"for {self.export_format.upper()} output"
            )
        return output_path

    @classmethod
    def get_supported_formats(cls) -> list[str]:
        """
        Get list of supported export format names.

        Returns:
            list[str]: List of format names (e.g., ['json', 'tsv'])
        """
        return list(cls.STRATEGIES.keys())
