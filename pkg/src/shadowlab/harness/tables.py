"""CSV emission with provenance columns and reproducible formatting."""
from __future__ import annotations

import csv
import io
import os
from pathlib import Path


def fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_table(path, header: list[str], rows: list[list], provenance: dict) -> None:
    """CSV with seed/config-hash provenance columns; atomic replace."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(list(header) + ["seed", "config_hash"])
    seed = provenance.get("seed", "")
    config_hash = provenance.get("config_hash", "")
    for row in rows:
        writer.writerow([fmt(v) for v in row] + [seed, config_hash])
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(buf.getvalue())
    os.replace(tmp, path)


def read_table(path) -> tuple[list[str], list[list[str]]]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]
