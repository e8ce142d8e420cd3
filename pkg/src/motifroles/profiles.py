"""Per-node motif participation profiles.

A node's positioned profile is its 104-vector of motif-position counts
normalized to sum to one; the positionless variant first sums positions
within each motif, giving 36 entries. Nodes whose total participation
falls below the filter threshold (or is zero) are dropped and reported.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import catalog
from .counting import PositionCountMatrix

PROFILE_KINDS = ("positioned", "positionless")


@dataclass(frozen=True)
class ProfileMatrix:
    kind: str
    node_names: tuple[str, ...]
    vectors: np.ndarray  # (n, 104) positioned or (n, 36) positionless
    totals: np.ndarray  # raw participation count per kept node
    dropped: tuple[tuple[str, int], ...]  # (name, total) for filtered nodes

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise ValueError(f"bad profile kind {self.kind!r}")
        width = catalog.N_POSITIONED_CELLS if self.kind == "positioned" else catalog.N_MOTIFS
        if self.vectors.shape != (len(self.node_names), width):
            raise ValueError(f"bad vectors shape {self.vectors.shape}")
        if np.any(self.vectors < 0.0):
            raise ValueError("profile entries must be non-negative")
        if self.n_profiled and not np.allclose(
            self.vectors.sum(axis=1), 1.0, rtol=0.0, atol=1e-9
        ):
            raise ValueError("every profile must sum to 1")
        self.vectors.setflags(write=False)
        self.totals.setflags(write=False)

    @property
    def n_profiled(self) -> int:
        return len(self.node_names)

    @property
    def width(self) -> int:
        return self.vectors.shape[1]

    def value_of(self, name: str, column: str) -> float:
        cols = (
            catalog.POSITIONED_CELL_NAMES
            if self.kind == "positioned"
            else catalog.MOTIF_COLUMNS
        )
        if column not in cols:
            raise KeyError(f"no {self.kind} column {column!r}")
        return float(self.vectors[self.node_names.index(name), cols.index(column)])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if self.kind == "positioned":
            writer.writerow(("node",) + catalog.CSV_COLUMNS)
            wide = np.zeros((self.n_profiled, catalog.N_CSV_CELLS))
            wide[:, catalog.LIVE_FLAT] = self.vectors
        else:
            writer.writerow(("node",) + catalog.MOTIF_COLUMNS)
            wide = self.vectors
        for i, name in enumerate(self.node_names):
            writer.writerow([name] + [repr(float(x)) for x in wide[i]])
        return buf.getvalue()

    def write_csv(self, path) -> None:
        Path(path).write_text(self.to_csv(), encoding="utf-8")

    def dropped_csv(self) -> str:
        lines = ["node,total_participation"]
        for name, total in self.dropped:
            lines.append(f"{name},{total}")
        return "\n".join(lines) + "\n"

    def write_dropped_csv(self, path) -> None:
        Path(path).write_text(self.dropped_csv(), encoding="utf-8")


def _build(counts: PositionCountMatrix, min_motifs: int, kind: str) -> ProfileMatrix:
    if min_motifs < 0:
        raise ValueError(f"min_motifs must be non-negative, got {min_motifs}")
    totals = counts.node_totals()
    keep = totals >= max(int(min_motifs), 1)  # zero-participation always drops
    if kind == "positioned":
        raw = counts.counts.reshape(counts.n_nodes, catalog.N_CSV_CELLS)
        raw = raw[:, catalog.LIVE_FLAT]
    else:
        raw = counts.counts.sum(axis=2)
    kept = np.flatnonzero(keep)
    vectors = raw[kept].astype(np.float64) / totals[kept, None]
    dropped = tuple(
        (counts.node_names[i], int(totals[i])) for i in np.flatnonzero(~keep)
    )
    return ProfileMatrix(
        kind=kind,
        node_names=tuple(counts.node_names[i] for i in kept),
        vectors=vectors,
        totals=totals[kept].copy(),
        dropped=dropped,
    )


def build_positioned(counts: PositionCountMatrix, min_motifs: int = 0) -> ProfileMatrix:
    return _build(counts, min_motifs, "positioned")


def build_positionless(counts: PositionCountMatrix, min_motifs: int = 0) -> ProfileMatrix:
    return _build(counts, min_motifs, "positionless")


def read_profile_csv(source) -> ProfileMatrix:
    """Load a profile CSV; the kind is recovered from the header."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            return read_profile_csv(fh)
    reader = csv.reader(source)
    try:
        header = tuple(next(reader))
    except StopIteration:
        raise ValueError("profile CSV: missing header") from None
    if header == ("node",) + catalog.CSV_COLUMNS:
        kind = "positioned"
    elif header == ("node",) + catalog.MOTIF_COLUMNS:
        kind = "positionless"
    else:
        raise ValueError("profile CSV: unexpected header layout")
    names: list[str] = []
    rows: list[list[float]] = []
    for row in reader:
        if len(row) != len(header):
            raise ValueError(f"profile CSV: row {reader.line_num}: wrong width")
        names.append(row[0])
        try:
            rows.append([float(x) for x in row[1:]])
        except ValueError:
            raise ValueError(
                f"profile CSV: row {reader.line_num}: non-numeric cell"
            ) from None
    wide = np.array(rows, dtype=np.float64)
    if wide.size == 0:
        wide = wide.reshape(0, len(header) - 1)
    if kind == "positioned":
        dead = np.setdiff1d(np.arange(catalog.N_CSV_CELLS), catalog.LIVE_FLAT)
        if wide.size and wide[:, dead].any():
            raise ValueError("profile CSV: nonzero value in a structurally dead column")
        vectors = wide[:, catalog.LIVE_FLAT]
    else:
        vectors = wide
    if vectors.size:
        if vectors.min() < 0:
            raise ValueError("profile CSV: negative value")
        sums = vectors.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > 1e-9):
            raise ValueError("profile CSV: row does not sum to one")
    return ProfileMatrix(
        kind=kind,
        node_names=tuple(names),
        vectors=vectors,
        totals=np.zeros(len(names), dtype=np.int64),
        dropped=(),
    )
