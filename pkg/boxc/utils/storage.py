"""Storage utilities for configs, traces and generated text."""

import json
import logging
from pathlib import Path
from typing import Any

from boxc.core.errors import BadConfig
from boxc.sim.trace import Trace

logger = logging.getLogger(__name__)


class TraceStorage:
    """Handle config, trace and output file persistence."""

    @staticmethod
    def save_trace(trace: Trace, file_path: str | Path) -> Path:
        """
        Save a trace as JSON Lines.

        Args:
            trace: The trace to save
            file_path: Output file

        Returns:
            Path to the saved file
        """
        output_path = Path(file_path)

        try:
            output_path.write_text(trace.to_jsonl(), encoding="utf-8", newline="\n")
            logger.info(f"Trace of {len(trace)} event(s) saved to: {output_path}")
            return output_path

        except OSError as e:
            logger.error(f"Failed to save trace: {e}")
            raise

    @staticmethod
    def load_trace(file_path: str | Path) -> Trace:
        """Load a JSON Lines trace written by save_trace."""
        path = Path(file_path)
        try:
            trace = Trace.from_jsonl(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            logger.error(f"Trace file not found: {path}")
            raise
        logger.info(f"Trace loaded from: {path}")
        return trace

    @staticmethod
    def load_config(file_path: str | Path) -> dict[str, Any]:
        """
        Load a simulation config from a JSON file.

        Args:
            file_path: Path to the JSON file

        Returns:
            The decoded JSON object

        Raises:
            BadConfig: the file is not a JSON object
        """
        path = Path(file_path)

        try:
            with open(path, encoding="utf-8") as f:
                data = json.load(f)

        except FileNotFoundError:
            logger.error(f"Config file not found: {path}")
            raise
        except json.JSONDecodeError as e:
            logger.error(f"Invalid JSON in file {path}: {e}")
            raise BadConfig(f"{path}: invalid JSON: {e}") from e

        if not isinstance(data, dict):
            raise BadConfig(f"{path}: a config must be a JSON object")
        logger.info(f"Config loaded from: {path}")
        return data

    @staticmethod
    def save_text(text: str, file_path: str | Path) -> Path:
        """Write generated text (DOT, formatted diagrams) byte-for-byte."""
        output_path = Path(file_path)

        try:
            output_path.write_text(text, encoding="utf-8", newline="\n")
            logger.info(f"Wrote {len(text)} characters to: {output_path}")
            return output_path

        except OSError as e:
            logger.error(f"Failed to write {output_path}: {e}")
            raise
