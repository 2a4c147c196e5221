"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)

This code is part of the Coupled Mode Coherence Simulator, a project that
computes the coherence of Gaussian states of two bilinearly coupled bosonic
modes, closed or in contact with Markovian thermal baths.
"""
# components/export.py
import logging
import os

from errors import CoherenceError

logger = logging.getLogger(__name__)


class ExportInterface:
    """Writes a finished ResultTable and reports what was written."""

    def __init__(self, fmt='csv'):
        self.fmt = fmt

    def resolve_filename(self, filename):
        """None or '-' mean stdout; a bare name gets the extension of the format."""
        if filename is None or filename == '-':
            return None
        filename = filename.strip()
        if not filename:
            raise CoherenceError("Please enter a filename")
        if not os.path.splitext(filename)[1]:
            filename += f'.{self.fmt}'
        return filename

    def update_stats_preview(self, table):
        stats = table.get_statistics()
        logger.info("Rows: %d (errors: %d)", stats['total_rows'], stats['error_rows'])
        for name, (low, high) in stats['ranges'].items():
            logger.info("  %s in [%.6g, %.6g]", name, low, high)
        return stats

    def perform_export(self, table, filename=None):
        """Execute the export operation; returns the absolute path or None for stdout."""
        self.update_stats_preview(table)
        path = table.export(self.resolve_filename(filename), self.fmt)
        if path is not None:
            self.show_message(f"File saved as: {path}")
        return path

    def show_message(self, message, message_type='info'):
        level = {'error': logging.ERROR, 'warning': logging.WARNING}.get(message_type, logging.INFO)
        logger.log(level, message)
