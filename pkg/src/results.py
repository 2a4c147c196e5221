"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)

This code is part of the Coupled Mode Coherence Simulator, a project that
computes the coherence of Gaussian states of two bilinearly coupled bosonic
modes, closed or in contact with Markovian thermal baths.
"""
# results.py
import csv
import io
import json
import logging
import os
import sys

import numpy as np

from errors import EXIT_OK, CoherenceError, exit_code_for

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 12
FORMATS = ('csv', 'json')


def format_value(value):
    """Render numbers with 12 significant digits; everything else as text."""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.{SIGNIFICANT_DIGITS}g}"
    return '' if value is None else str(value)


def _json_value(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(format_value(value))
        return value if np.isfinite(value) else None
    return value


class ResultTable:
    """Ordered rows of one command, with the provenance line that produced them."""

    def __init__(self, columns, provenance=''):
        self.columns = list(columns)
        self.provenance = provenance
        self.rows = []
        self.notes = []
        self.exit_code = EXIT_OK

    def add_row(self, **values):
        unknown = set(values) - set(self.columns)
        if unknown:
            raise CoherenceError(f"Unknown result columns: {sorted(unknown)}")
        self.rows.append(values)

    def add_error(self, error, **values):
        """Record a failed point; the command exits nonzero once the table is written."""
        values['error'] = str(error)
        self.rows.append(values)
        self.exit_code = max(self.exit_code, exit_code_for(error))
        logger.warning("Point %s failed: %s", values, error)

    def add_note(self, text):
        """Trailing comment line (CSV) or 'notes' entry (JSON)."""
        self.notes.append(text)

    @property
    def has_errors(self):
        return any('error' in row for row in self.rows)

    @property
    def fieldnames(self):
        return self.columns + (['error'] if self.has_errors else [])

    def column(self, name):
        """Numeric values of one column, skipping error rows."""
        return np.array([row.get(name, np.nan) for row in self.rows if 'error' not in row], dtype=float)

    def to_csv(self):
        buffer = io.StringIO()
        if self.provenance:
            buffer.write(f"# {self.provenance}\r\n")
        writer = csv.DictWriter(buffer, fieldnames=self.fieldnames)
        writer.writeheader()
        for row in self.rows:
            writer.writerow({k: format_value(row.get(k)) for k in self.fieldnames})
        for note in self.notes:
            buffer.write(f"# {note}\r\n")
        return buffer.getvalue()

    def to_json(self):
        document = {
            'provenance': self.provenance,
            'columns': self.fieldnames,
            'rows': [{k: _json_value(row.get(k)) for k in self.fieldnames} for row in self.rows],
        }
        if self.notes:
            document['notes'] = self.notes
        return json.dumps(document, indent=2) + '\n'

    def render(self, fmt='csv'):
        if fmt not in FORMATS:
            raise CoherenceError(f"Unknown output format {fmt!r}; expected one of {FORMATS}")
        return self.to_csv() if fmt == 'csv' else self.to_json()

    def export(self, filename=None, fmt='csv'):
        """Write to filename, or to stdout when no filename is given."""
        text = self.render(fmt)
        if filename is None or filename == '-':
            sys.stdout.write(text)
            return None
        try:
            with open(filename, 'w', newline='', encoding='utf-8') as handle:
                handle.write(text)
        except OSError as e:
            raise CoherenceError(f"Error exporting data: {e}") from e
        return os.path.abspath(filename)

    def get_statistics(self):
        """Basic statistics about the table, logged after every command."""
        stats = {
            'total_rows': len(self.rows),
            'error_rows': sum('error' in row for row in self.rows),
            'ranges': {},
        }
        for name in self.columns:
            try:
                values = self.column(name)
            except (TypeError, ValueError):
                continue
            values = values[np.isfinite(values)]
            if values.size:
                stats['ranges'][name] = (float(values.min()), float(values.max()))
        return stats
