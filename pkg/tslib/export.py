"""CSV and JSON record writers with deterministic value rendering."""

import csv
import json
from fractions import Fraction
from typing import Iterable, Optional, Sequence, TextIO

from tslib.config import OutputFormat


# CSV headers (bit-exact)
SURVIVOR_FIELDS = ("k", "small", "large")
DENSITY_FIELDS = (
    "step", "p5", "form", "alpha", "p5r",
    "c_num", "c_den", "c_float", "true_num", "true_den", "true_float",
)
BOUND_FIELDS = ("n", "pi", "bound9", "bound11", "bound20", "ok9", "ok11", "ok20")
GAP_FIELDS = ("p", "next")

SIGNIFICANT_DIGITS = 10


def round_float(value: float) -> float:
    """Round to SIGNIFICANT_DIGITS significant digits."""
    return float(format(value, f".{SIGNIFICANT_DIGITS}g"))


def render_csv(value) -> str:
    """Render one cell: booleans as true/false, None as empty, floats rounded."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(round_float(value))
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def _json_value(value):
    if isinstance(value, float):
        return round_float(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return value


class RecordWriter:
    """Write a stream of records with a fixed field order as CSV or JSON."""

    def __init__(self, stream: TextIO, fields: Sequence[str], fmt: OutputFormat):
        """Initialize RecordWriter.

        Args:
            stream: Open text stream to write to
            fields: Field names, in output order
            fmt: OutputFormat.CSV or OutputFormat.JSON
        """
        self.stream = stream
        self.fields = tuple(fields)
        self.fmt = fmt
        self.count = 0

    def write_all(self, records: Iterable[dict]) -> int:
        """Write every record and return how many were written."""
        if self.fmt is OutputFormat.CSV:
            writer = csv.writer(self.stream, lineterminator="\n")
            writer.writerow(self.fields)
            for record in records:
                writer.writerow([render_csv(record.get(f)) for f in self.fields])
                self.count += 1
        else:
            rows = [{f: _json_value(record.get(f)) for f in self.fields} for record in records]
            self.count = len(rows)
            json.dump(rows, self.stream, indent=2)
            self.stream.write("\n")
        return self.count


def write_records(
    config, fields: Sequence[str], records: Iterable[dict], stream: Optional[TextIO] = None
) -> int:
    """Open the configured output, write records, and close it if it is a file.

    Args:
        config: RunConfig naming the format and destination
        fields: Field names, in output order
        records: Iterable of dicts keyed by field name
        stream: Write here instead of the configured destination
    """
    own = stream is None
    out = config.open_output() if own else stream
    try:
        return RecordWriter(out, fields, config.format).write_all(records)
    finally:
        if own and not config.writes_stdout():
            out.close()
