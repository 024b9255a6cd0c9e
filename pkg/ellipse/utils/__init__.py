# ellipse/utils/__init__.py

from .file_saver import resolve_output_path, sanitize_filename, save_text_to_file
from .formatting import csv_text, format_number, format_table, repr_number

__all__ = [
    "resolve_output_path",
    "sanitize_filename",
    "save_text_to_file",
    "csv_text",
    "format_number",
    "format_table",
    "repr_number",
]
