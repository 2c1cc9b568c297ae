"""Column-table container and its CSV wire format.

Layout: '# key=value' metadata lines in insertion order, one header line,
then comma-separated rows.  Floats are rendered with %.17g, which
round-trips float64 exactly, so parse(emit(table)) reproduces the table
bit for bit and identical runs emit identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GridError, ParameterError

__all__ = ["FLOAT_FORMAT", "SeriesTable", "format_float"]

FLOAT_FORMAT = "%.17g"


def format_float(value: float) -> str:
    return FLOAT_FORMAT % float(value)


@dataclass
class SeriesTable:
    columns: list[tuple[str, np.ndarray]]
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.columns:
            raise ParameterError("a table needs at least one column")
        normalized = []
        for name, values in self.columns:
            arr = np.asarray(values, dtype=float)
            if arr.ndim != 1:
                raise GridError(f"column {name!r} must be one-dimensional")
            normalized.append((str(name), arr))
        lengths = {len(arr) for _, arr in normalized}
        if len(lengths) != 1:
            raise GridError("all columns must share one length")
        names = [name for name, _ in normalized]
        if len(set(names)) != len(names):
            raise ParameterError("duplicate column name")
        self.columns = normalized
        self.metadata = {str(k): str(v) for k, v in self.metadata.items()}

    @property
    def n_rows(self) -> int:
        return len(self.columns[0][1])

    @property
    def column_names(self) -> list[str]:
        return [name for name, _ in self.columns]

    def column(self, name: str) -> np.ndarray:
        for col_name, values in self.columns:
            if col_name == name:
                return values
        raise ParameterError(f"no column named {name!r}")

    def to_csv(self) -> str:
        lines = [f"# {key}={value}" for key, value in self.metadata.items()]
        lines.append(",".join(self.column_names))
        arrays = [values for _, values in self.columns]
        for row in zip(*arrays):
            lines.append(",".join(format_float(v) for v in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "SeriesTable":
        metadata: dict[str, str] = {}
        header: list[str] | None = None
        rows: list[list[float]] = []
        for line in text.splitlines():
            if not line.strip():
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    metadata[key.strip()] = value.strip()
                continue
            parts = line.split(",")
            if header is None:
                header = [p.strip() for p in parts]
                continue
            if len(parts) != len(header):
                raise GridError("row width does not match the header")
            try:
                rows.append([float(p) for p in parts])
            except ValueError as exc:
                raise GridError(f"non-numeric cell in row: {line!r}") from exc
        if header is None:
            raise GridError("no header line found")
        if rows:
            data = np.asarray(rows, dtype=float)
        else:
            data = np.zeros((0, len(header)))
        columns = [(name, data[:, idx].copy()) for idx, name in enumerate(header)]
        return cls(columns=columns, metadata=metadata)
