"""CSV emission and console reports."""

from .writer import CONVENTIONS, format_value, metadata_lines, write_csv
from .reporter import FeasibilityReporter

__all__ = ['CONVENTIONS', 'format_value', 'metadata_lines', 'write_csv', 'FeasibilityReporter']
