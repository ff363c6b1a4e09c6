"""File formats: curve CSV, surface OBJ meshes and JSON verification reports.

All writers go through :func:`atomic_write`, which writes a temporary file in
the destination directory and renames it into place.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .curves import CurveSample
from .surfaces import SurfaceGrid

SCHEMA_VERSION = 1
CSV_COLUMNS = ("t", "re1", "im1", "re2", "im2", "residual_conserved", "residual_line")
PROJECTIONS = ("re1-im1-re2", "re1-re2-im2", "moduli-phase")

#: JSON schema (draft 2020-12) every verification report validates against.
REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "slagkit verification report",
    "type": "object",
    "required": ["schema_version", "check", "parameters", "tolerance", "max_residual", "passed", "details"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "check": {"type": "string"},
        "parameters": {"type": "object"},
        "tolerance": {"type": "number", "exclusiveMinimum": 0},
        "max_residual": {"type": ["number", "null"]},
        "passed": {"type": "boolean"},
        "details": {"type": "object"},
    },
    "additionalProperties": False,
}


def atomic_write(path, text: str) -> Path:
    """Write ``text`` to ``path`` via a temporary file and rename."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    try:
        directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=f".{path.name}.", suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def _fmt(x: float) -> str:
    return repr(float(x)) if not math.isfinite(x) else f"{x:.17g}"


# -- CSV ---------------------------------------------------------------------

def csv_text(sample: CurveSample | None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    if sample is not None:
        pts = sample.points
        for k, t in enumerate(sample.ts):
            z1, z2 = pts[k]
            row = (t, z1.real, z1.imag, z2.real, z2.imag, sample.residual_conserved[k], sample.residual_line[k])
            writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def export_csv(sample: CurveSample | None, path) -> Path:
    """One row per sample with 17 significant digits; ``None`` writes the header only."""
    return atomic_write(path, csv_text(sample))


def parse_csv(path) -> dict[str, np.ndarray]:
    """Read a file written by :func:`export_csv` back into column arrays."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != CSV_COLUMNS:
        raise ValueError(f"{path}: header does not match {','.join(CSV_COLUMNS)}")
    data = np.array([[float(v) for v in r] for r in rows[1:]], dtype=float).reshape(-1, len(CSV_COLUMNS))
    return {name: data[:, k] for k, name in enumerate(CSV_COLUMNS)}


# -- OBJ ---------------------------------------------------------------------

def project(points: np.ndarray, projection: str) -> np.ndarray:
    """Three real coordinates out of C^2 points according to a catalog entry."""
    z1, z2 = points[..., 0], points[..., 1]
    if projection == "re1-im1-re2":
        return np.stack([z1.real, z1.imag, z2.real], axis=-1)
    if projection == "re1-re2-im2":
        return np.stack([z1.real, z2.real, z2.imag], axis=-1)
    if projection == "moduli-phase":
        return np.stack([np.abs(z1), np.abs(z2), np.angle(z1 * z2)], axis=-1)
    raise ValueError(f"unknown projection {projection!r}; expected one of {', '.join(PROJECTIONS)}")


def obj_text(surface: SurfaceGrid, projection: str = "re1-im1-re2") -> str:
    nt, ns = surface.shape
    if nt < 2 or ns < 2:
        raise ValueError(f"need at least a 2x2 grid for a mesh, got {nt}x{ns}")
    xyz = project(surface.points, projection).reshape(-1, 3)
    lines = [f"# slagkit surface {nt}x{ns}, projection {projection}"]
    lines += [f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}" for x, y, z in xyz]
    idx = lambda i, j: i * ns + j + 1
    for i in range(nt - 1):
        for j in range(ns - 1):
            lines.append(f"f {idx(i, j)} {idx(i + 1, j)} {idx(i + 1, j + 1)} {idx(i, j + 1)}")
    return "\n".join(lines) + "\n"


def export_obj(surface: SurfaceGrid, path, projection: str = "re1-im1-re2") -> Path:
    """Vertices in grid order, then quads (i,j) (i+1,j) (i+1,j+1) (i,j+1)."""
    return atomic_write(path, obj_text(surface, projection))


# -- JSON reports ------------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj if obj is None or isinstance(obj, str) else str(obj)


def make_report(check: str, parameters: dict, tolerance: float, max_residual, details: dict | None = None,
                passed: bool | None = None) -> dict:
    """Assemble a report; ``passed`` defaults to ``max_residual < tolerance``."""
    if passed is None:
        passed = max_residual is not None and math.isfinite(max_residual) and max_residual < tolerance
    return _jsonable({
        "schema_version": SCHEMA_VERSION,
        "check": check,
        "parameters": parameters,
        "tolerance": tolerance,
        "max_residual": max_residual,
        "passed": bool(passed),
        "details": details or {},
    })


def report_text(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def write_report(report: dict, path) -> Path:
    return atomic_write(path, report_text(report))


def validate_report(report: dict) -> None:
    """Raise jsonschema.ValidationError when ``report`` does not follow the schema."""
    import jsonschema

    jsonschema.validate(report, REPORT_SCHEMA)
