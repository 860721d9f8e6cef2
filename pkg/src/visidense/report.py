"""Report container serialized as JSON or CSV.

Exact integers travel as decimal strings so sphere counts survive any
JSON consumer; fractions are floats computed at this boundary only.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import __version__

SCHEMA = "visidense/1"

DENSITY_COLUMNS = [
    "n", "sphere_or_ball_size", "visible_count", "fraction",
    "annular_estimate", "theoretical_even", "theoretical_odd",
    "theoretical_annular",
]


@dataclass
class Report:
    command: str
    parameters: dict
    columns: list
    rows: list = field(default_factory=list)
    timestamp: str = ""

    def __post_init__(self):
        if not self.timestamp:
            self.timestamp = datetime.now(timezone.utc).isoformat()

    def to_dict(self):
        return {
            "schema": SCHEMA,
            "metadata": {
                "command": self.command,
                "parameters": self.parameters,
                "version": __version__,
                "timestamp": self.timestamp,
            },
            "columns": self.columns,
            "rows": self.rows,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=self.columns,
                                extrasaction="ignore")
        writer.writeheader()
        for row in self.rows:
            writer.writerow(row)
        return buf.getvalue()

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unexpected schema {data.get('schema')!r}")
        meta = data["metadata"]
        return cls(meta["command"], meta["parameters"], data["columns"],
                   data["rows"], meta["timestamp"])


def density_rows(censuses, limits, visible_fraction, annular_estimate):
    """Build DENSITY_COLUMNS rows from a census sequence."""
    rows = []
    prev = None
    for census in censuses:
        fraction = visible_fraction(census)
        annular = None
        if prev is not None and census.n == prev.n + 1:
            annular = annular_estimate(prev, census)
        rows.append({
            "n": census.n,
            "sphere_or_ball_size": str(census.total),
            "visible_count": str(census.visible_count()),
            "fraction": fraction,
            "annular_estimate": annular,
            "theoretical_even": limits.even,
            "theoretical_odd": limits.odd,
            "theoretical_annular": limits.annular,
        })
        prev = census
    return rows
