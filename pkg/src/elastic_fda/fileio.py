"""CSV/JSON ingestion and emission for the CLI.

Function CSV format: two columns ``t,value``, optional header, UTF-8,
``.`` decimal separator.  Parse failures report 1-based line numbers.
All writes are atomic (temp file + rename) so concurrent batch runs never
observe half-written outputs.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import InputError
from .fnspace import SampledFunction, sampled_from_points

SCHEMA_VERSION = 1

__all__ = [
    "SCHEMA_VERSION",
    "read_points_csv",
    "read_function_csv",
    "atomic_write_text",
    "write_function_csv",
    "write_pairs_csv",
    "write_json",
]


def read_points_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Parse a two-column CSV into (t, value) arrays, header optional."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputError(f"{path}: file not found") from None
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not valid UTF-8 ({exc})") from None
    ts: list[float] = []
    vs: list[float] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise InputError(f"{path}:{lineno}: expected two comma-separated columns, got {len(parts)}")
        try:
            t, v = float(parts[0]), float(parts[1])
        except ValueError:
            if lineno == 1 and not ts:
                continue  # header row
            raise InputError(f"{path}:{lineno}: could not parse numbers from {line!r}") from None
        ts.append(t)
        vs.append(v)
    if len(ts) < 2:
        raise InputError(f"{path}: need at least two data rows")
    return np.asarray(ts), np.asarray(vs)


def read_function_csv(path, rescale_domain: bool = False) -> SampledFunction:
    t, v = read_points_csv(path)
    try:
        return sampled_from_points(t, v, rescale_domain=rescale_domain)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def atomic_write_text(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def write_pairs_csv(path, xs, ys, header: tuple[str, str]) -> None:
    lines = [f"{header[0]},{header[1]}"]
    lines += [f"{float(x)!r},{float(y)!r}" for x, y in zip(xs, ys)]
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_function_csv(path, f: SampledFunction) -> None:
    write_pairs_csv(path, f.grid.nodes, f.values, ("t", "value"))


def write_json(path, payload: dict) -> None:
    atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
