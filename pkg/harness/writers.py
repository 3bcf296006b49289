"""CSV and JSON emission for sweep results."""
from __future__ import annotations

import csv
import io
import json
import math
import os

from common.logger_config import setup_logger

logger = setup_logger(__name__)

ROW_HEADER = ('n', 'seed', 'metric', 'raw', 'normalized', 'failed', 'wall_ms')


def fmt(value) -> str:
    if isinstance(value, bool):
        return '1' if value else '0'
    if isinstance(value, int):
        return str(value)
    value = float(value)
    if math.isnan(value):
        return 'nan'
    return f"{value:.12g}"


def rows_to_csv(rows, header=ROW_HEADER) -> str:
    """The header, then one line per row (values already ordered)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    return buf.getvalue()


def strip_wall_time(csv_text: str) -> str:
    """Drop the trailing wall_ms column so two runs can be compared byte for byte."""
    out = []
    for line in csv_text.splitlines(keepends=True):
        body = line.rstrip('\n')
        head, sep, _ = body.rpartition(',')
        out.append((head if sep else body) + '\n')
    return ''.join(out)


def write_text(path: str, text: str):
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='') as f:
        f.write(text)
    logger.info(f"[Harness] wrote {path}")


def write_json(path: str, obj):
    write_text(path, json.dumps(obj, indent=2) + '\n')


def sidecar_path(path: str) -> str:
    return f"{path}.meta.json"


def write_sidecar(path: str, meta: dict):
    """Run description next to a CSV, which itself carries only the header and rows."""
    write_json(sidecar_path(path), meta)
