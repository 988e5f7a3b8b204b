"""Readers for the operator toolkit's CSV output contract.

The producing command writes ``# key=value`` metadata lines, one header
line, and comma-separated data rows; the ``converge`` command appends
its fitted slope and r-squared as trailing metadata.  Readers here
parse that shape, validate it, and never write anything back.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

CONVERGENCE_HEADER = "n,sup_error"
VORONOVSKAJA_HEADER = "n,scaled_residual,limit,abs_gap"


class SchemaError(Exception):
    """An input CSV does not match the declared contract."""


def _scan(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    metadata, header, rows = {}, None, []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line.lstrip("#").strip().partition("=")
            if sep:
                metadata[key.strip()] = value
            continue
        if header is None:
            header = line
        else:
            rows.append(line)
    if header is None:
        raise SchemaError(f"{path}: no header line")
    return metadata, header, rows


def _fields(path, row, count):
    parts = row.split(",")
    if len(parts) != count:
        raise SchemaError(f"{path}: expected {count} fields, got {row!r}")
    return parts


def _to_int(path, text):
    try:
        value = int(text)
    except ValueError as exc:
        raise SchemaError(f"{path}: bad integer {text!r}") from exc
    if value < 1:
        raise SchemaError(f"{path}: n must be positive, got {value}")
    return value


def _to_float(path, text):
    try:
        return float(text)
    except ValueError as exc:
        raise SchemaError(f"{path}: bad number {text!r}") from exc


def _operator_label(metadata: Mapping[str, str], path) -> str:
    op = metadata.get("op", Path(path).stem)
    if "a0" in metadata and "a1" in metadata:
        op += f"({metadata['a0']},{metadata['a1']})"
    return op


@dataclass(frozen=True)
class ConvergenceSeries:
    """One sup-error decay curve plus the metadata that produced it."""

    path: str
    metadata: Mapping[str, str]
    ns: tuple
    errors: tuple
    slope: float
    r_squared: float | None

    def label(self) -> str:
        op = _operator_label(self.metadata, self.path)
        f = self.metadata.get("f")
        return f"{op} on {f}" if f else op


@dataclass(frozen=True)
class VoronovskajaSeries:
    """Scaled residuals against their limit value for one study."""

    path: str
    metadata: Mapping[str, str]
    ns: tuple
    residuals: tuple
    gaps: tuple
    limit: float

    def label(self) -> str:
        op = _operator_label(self.metadata, self.path)
        f = self.metadata.get("f")
        text = f"{op} on {f}" if f else op
        if "x" in self.metadata:
            text += f" at x={self.metadata['x']}"
        return text


def read_convergence(path) -> ConvergenceSeries:
    """Parse one ``converge`` CSV; the slope footer is mandatory."""
    metadata, header, rows = _scan(path)
    if header != CONVERGENCE_HEADER:
        raise SchemaError(f"{path}: header {header!r}, "
                          f"want {CONVERGENCE_HEADER!r}")
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    ns, errors = [], []
    for row in rows:
        n_text, err_text = _fields(path, row, 2)
        ns.append(_to_int(path, n_text))
        errors.append(_to_float(path, err_text))
    if "slope" not in metadata:
        raise SchemaError(f"{path}: missing slope footer")
    r2 = metadata.get("r2")
    return ConvergenceSeries(path=str(path), metadata=metadata,
                             ns=tuple(ns), errors=tuple(errors),
                             slope=_to_float(path, metadata["slope"]),
                             r_squared=None if r2 is None
                             else _to_float(path, r2))


def read_voronovskaja(path) -> VoronovskajaSeries:
    metadata, header, rows = _scan(path)
    if header != VORONOVSKAJA_HEADER:
        raise SchemaError(f"{path}: header {header!r}, "
                          f"want {VORONOVSKAJA_HEADER!r}")
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    ns, residuals, limits, gaps = [], [], [], []
    for row in rows:
        n_text, res_text, lim_text, gap_text = _fields(path, row, 4)
        ns.append(_to_int(path, n_text))
        residuals.append(_to_float(path, res_text))
        limits.append(_to_float(path, lim_text))
        gaps.append(_to_float(path, gap_text))
    # the producer repeats the limit on every row; keep the last one
    return VoronovskajaSeries(path=str(path), metadata=metadata,
                              ns=tuple(ns), residuals=tuple(residuals),
                              gaps=tuple(gaps), limit=limits[-1])
