"""Report containers and CSV/JSON emission.

Every emitted file starts with the line
    # graphtik v1, config-hash=<hex>
where the hash is over the canonical JSON encoding of the generating
configuration, so outputs can be traced back to their exact inputs.
Floats are printed with 9 significant digits.
"""
from __future__ import annotations

import hashlib
import json
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone

FORMAT_VERSION = "graphtik v1"

__all__ = [
    "FORMAT_VERSION",
    "ExperimentReport",
    "config_hash",
    "format_float",
    "write_csv",
    "report_to_json",
    "write_report_json",
]


def config_hash(config: dict) -> str:
    """First 12 hex chars of sha256 over sorted-key JSON."""
    canon = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:12]


def format_float(v) -> str:
    if isinstance(v, float):
        return f"{v:.9g}"
    return str(v)


@dataclass
class ExperimentReport:
    """Cells plus enough context to regenerate them."""

    config: dict
    cells: list
    seeds: list
    config_hash: str
    roundtrip: dict | None = None
    format_version: str = FORMAT_VERSION
    created: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w"), True


def write_csv(path, header: list, rows: list, cfg_hash: str, comments: list = ()):
    """rows are sequences; floats get 9 significant digits."""
    out, close = _open_out(path)
    try:
        out.write(f"# {FORMAT_VERSION}, config-hash={cfg_hash}\n")
        for c in comments:
            out.write(f"# {c}\n")
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(format_float(v) for v in row) + "\n")
    finally:
        if close:
            out.close()


def report_to_json(report: ExperimentReport) -> str:
    payload = {
        "format_version": report.format_version,
        "config_hash": report.config_hash,
        "created": report.created,
        "config": report.config,
        "seeds": report.seeds,
        "cells": report.cells,
        "roundtrip": report.roundtrip,
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def write_report_json(path, report: ExperimentReport):
    out, close = _open_out(path)
    try:
        out.write(report_to_json(report) + "\n")
    finally:
        if close:
            out.close()
