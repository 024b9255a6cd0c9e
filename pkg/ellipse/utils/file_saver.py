import logging
import re
from pathlib import Path
from typing import Optional

import config

logger = logging.getLogger(__name__)


def sanitize_filename(filename: str) -> str:
    """Sanitizes a string to be a valid filename."""
    filename = re.sub(r'[<>:"/\\|?*\x00-\x1f]', '_', filename)
    filename = re.sub(r'\s+', '_', filename)
    filename = filename.strip('._ ')
    if not filename:
        filename = "scan.csv"
    return filename[:200]


def resolve_output_path(target: str, output_dir: Optional[str] = None) -> Path:
    """Bare file names land in the configured output directory; paths are used as given."""
    path = Path(target)
    if path.parent == Path("."):
        return Path(output_dir or config.OUTPUT_DIR) / sanitize_filename(path.name)
    return path


def save_text_to_file(data: str, target: str, output_dir: Optional[str] = None) -> Optional[str]:
    """Writes rendered output as UTF-8 with '\\n' line endings. Returns the path, or None on failure."""
    filepath = None
    try:
        filepath = resolve_output_path(target, output_dir)
        filepath.parent.mkdir(parents=True, exist_ok=True)
        with open(filepath, "w", encoding="utf-8", newline="\n") as f:
            f.write(data)
        logger.info(f"Output successfully saved to {filepath}")
        return str(filepath)
    except OSError as e:
        logger.error(f"Error saving output to file ({filepath or target}): {e}")
        return None
