"""Request and response models for the HTTP service.

Requests mirror the CLI flags one-to-one; `n` and `N` keep their short
operator-order names rather than the library's depth/trunc spelling so the
wire format matches the command line.  Responses carry tables as column
names plus row-major float rows, which JSON round-trips exactly.
"""

from __future__ import annotations

from typing import Literal

import numpy as np
from pydantic import BaseModel

from ..series import SeriesTable

__all__ = [
    "ApproxRequest",
    "CompareRequest",
    "CompareResponse",
    "FdeRequest",
    "FdeResponse",
    "HealthResponse",
    "SweepRequest",
    "TableResponse",
]

Kind = Literal["integral", "derivative"]
Side = Literal["left", "right"]
Lift = Literal["power_substitution", "none"]
Reference = Literal["auto", "closed", "quad"]


class ApproxRequest(BaseModel):
    kind: Kind
    side: Side = "left"
    alpha: float
    a: float = 1.0
    b: float = 10.0
    n: int
    N: int
    fn: str | None = None
    table: str | None = None
    points: int = 200
    panels: int = 64
    nodes_per_panel: int = 8
    lift: Lift = "power_substitution"


class CompareRequest(ApproxRequest):
    reference: Reference = "auto"


class SweepRequest(BaseModel):
    kind: Kind
    side: Side = "left"
    alpha: float
    a: float = 1.0
    b: float = 10.0
    n_list: list[int]
    N_list: list[int]
    fn: str | None = None
    table: str | None = None
    points: int = 200
    panels: int = 64
    nodes_per_panel: int = 8
    lift: Lift = "power_substitution"
    reference: Reference = "auto"


class FdeRequest(BaseModel):
    N: int = 2
    steps: int = 10_000
    delta: float = 1e-4
    t_end: float = 3.0
    c: float = 1.0
    x0: float = 0.0
    dump_states: bool = False


class TableResponse(BaseModel):
    metadata: dict[str, str]
    columns: list[str]
    rows: list[list[float]]

    @classmethod
    def from_table(cls, table: SeriesTable, **extra):
        names = table.column_names
        arrays = [table.column(name) for name in names]
        rows = [
            [float(arr[i]) for arr in arrays] for i in range(table.n_rows)
        ]
        return cls(metadata=dict(table.metadata), columns=names, rows=rows, **extra)

    def to_table(self) -> SeriesTable:
        cols = [
            (name, np.asarray([row[j] for row in self.rows], dtype=float))
            for j, name in enumerate(self.columns)
        ]
        return SeriesTable(columns=cols, metadata=dict(self.metadata))


class CompareResponse(TableResponse):
    dist: float
    violations: int


class FdeResponse(TableResponse):
    dist: float


class HealthResponse(BaseModel):
    status: str = "ok"
