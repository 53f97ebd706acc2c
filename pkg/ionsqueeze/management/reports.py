"""
Rendering of run reports: rounded, key-sorted JSON and the sweep CSV table,
written atomically.
"""
import csv
import io
import json
import math
import os
import tempfile

import numpy as np

from ionsqueeze.conf import constants, settings


def round_significant(value, digits=None):
    if digits is None:
        digits = settings.REPORT_FLOAT_DIGITS
    if not math.isfinite(value):
        return repr(value)
    rounded = float('%.*g' % (digits, value))
    # normalize -0.0
    return rounded + 0.0


def plain(obj, digits=None):
    """
    Convert a report tree into JSON-ready values: floats rounded to
    ``digits`` significant figures, complex numbers as ``[re, im]``, numpy
    scalars and arrays as Python values, tuples as lists.
    """
    if isinstance(obj, dict):
        return {str(key): plain(value, digits) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(value, digits) for value in obj]
    if isinstance(obj, np.ndarray):
        return plain(obj.tolist(), digits)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_significant(float(obj), digits)
    if isinstance(obj, (complex, np.complexfloating)):
        return [
            round_significant(obj.real, digits),
            round_significant(obj.imag, digits),
        ]
    if hasattr(obj, 'as_dict'):
        return plain(obj.as_dict(), digits)
    return obj


def checked(value, tolerance, bound=None):
    """A reported quantity together with the tolerance it was checked
    against."""
    data = {'value': value, 'tolerance': tolerance}
    if bound is not None:
        data['bound'] = bound
    return data


class RunReport:
    """
    The machine-readable outcome of one run: the resolved configuration, the
    computed sections and, for sweeps, the CSV rows.
    """

    def __init__(self, config_echo, sections=None, rows=None, timings=None):
        self.config = config_echo
        self.sections = dict(sections or {})
        self.rows = rows
        self.timings = timings

    def __repr__(self):
        return '<RunReport: %s>' % self.config.get('command')

    def __getitem__(self, key):
        return self.sections[key]

    def as_dict(self):
        data = {'config': self.config}
        data.update(self.sections)
        if self.timings is not None:
            data['timings'] = self.timings
        return data

    def to_json(self):
        return json.dumps(
            plain(self.as_dict()), indent=2, sort_keys=True) + '\n'

    def to_csv(self):
        return render_csv(self.rows or [])


def render_csv(rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(constants.SWEEP_CSV_HEADER)
    for row in rows:
        writer.writerow([
            plain(row[column]) for column in constants.SWEEP_CSV_HEADER])
    return buffer.getvalue()


def error_json(error):
    return json.dumps(
        {'error': plain(error.to_dict())}, indent=2, sort_keys=True) + '\n'


def write_atomic(path, text):
    """Write ``text`` to ``path`` through a temporary file in the same
    directory, then rename it into place."""
    path = os.path.abspath(path)
    directory = os.path.dirname(path)
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(
        prefix='.%s.' % os.path.basename(path), suffix='.tmp', dir=directory)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    return path
