"""Directed continuous-time edge lists and static-graph preprocessing."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

EDGE_LIST_HEADER = ("source", "target", "timestamp")


class EdgeListError(ValueError):
    """Malformed edge-list input; the message carries the 1-based line number."""


@dataclass(frozen=True)
class TemporalEdge:
    source: int
    target: int
    time: float
    seq: int


class TemporalGraph:
    """Immutable directed temporal network.

    Nodes are dense integer indices backed by a string name table. Edges
    are stored sorted by (time, seq); seq is the input-order index, which
    makes the ordering total even when timestamps tie.

    Equality compares the node-name set and the name-level edge sequence
    in sorted order. Internal indices and seq values are representation
    details: re-parsing a serialized graph renumbers both without
    changing the network.
    """

    __slots__ = ("node_names", "src", "tgt", "time", "seq", "_index")

    def __init__(self, node_names: Sequence[str], src, tgt, time, seq=None):
        names = tuple(str(x) for x in node_names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate node names")
        src = np.asarray(src, dtype=np.int64)
        tgt = np.asarray(tgt, dtype=np.int64)
        time = np.asarray(time, dtype=np.float64)
        m = src.shape[0]
        if seq is None:
            seq = np.arange(m, dtype=np.int64)
        else:
            seq = np.asarray(seq, dtype=np.int64)
        if not (tgt.shape[0] == time.shape[0] == seq.shape[0] == m):
            raise ValueError("edge arrays must have equal length")
        n = len(names)
        if m:
            if src.min(initial=0) < 0 or tgt.min(initial=0) < 0:
                raise ValueError("negative node index")
            if src.max(initial=-1) >= n or tgt.max(initial=-1) >= n:
                raise ValueError("edge endpoint outside node table")
            if np.any(src == tgt):
                raise ValueError("self-loops are not allowed")
            if not np.all(np.isfinite(time)):
                raise ValueError("non-finite timestamp")
            if np.unique(seq).shape[0] != m:
                raise ValueError("seq indices must be unique")
        order = np.lexsort((seq, time))
        self.node_names = names
        self.src = src[order]
        self.tgt = tgt[order]
        self.time = time[order]
        self.seq = seq[order]
        for arr in (self.src, self.tgt, self.time, self.seq):
            arr.setflags(write=False)
        self._index = {name: i for i, name in enumerate(names)}

    @classmethod
    def from_named_edges(
        cls,
        edges: Iterable[tuple[str, str, float]],
        extra_nodes: Iterable[str] = (),
    ) -> "TemporalGraph":
        """Build from (source, target, time) triples, interning names in
        order of first appearance. seq follows the input order."""
        names: dict[str, int] = {}
        src, tgt, time = [], [], []
        for s, t, ts in edges:
            for name in (s, t):
                if name not in names:
                    names[name] = len(names)
            src.append(names[s])
            tgt.append(names[t])
            time.append(ts)
        for name in extra_nodes:
            if name not in names:
                names[name] = len(names)
        return cls(tuple(names), src, tgt, time)

    @property
    def n_nodes(self) -> int:
        return len(self.node_names)

    @property
    def n_edges(self) -> int:
        return int(self.src.shape[0])

    def index_of(self, name: str) -> int:
        return self._index[name]

    def name_of(self, index: int) -> str:
        return self.node_names[index]

    def edge(self, i: int) -> TemporalEdge:
        return TemporalEdge(
            int(self.src[i]), int(self.tgt[i]), float(self.time[i]), int(self.seq[i])
        )

    def edges(self) -> Iterator[TemporalEdge]:
        for i in range(self.n_edges):
            yield self.edge(i)

    def named_edges(self) -> list[tuple[str, str, float]]:
        return [
            (self.node_names[int(u)], self.node_names[int(v)], float(t))
            for u, v, t in zip(self.src, self.tgt, self.time)
        ]

    def time_span(self) -> tuple[float, float]:
        if not self.n_edges:
            raise ValueError("empty graph has no time span")
        return float(self.time[0]), float(self.time[-1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TemporalGraph):
            return NotImplemented
        return (
            set(self.node_names) == set(other.node_names)
            and self.named_edges() == other.named_edges()
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"TemporalGraph(n_nodes={self.n_nodes}, n_edges={self.n_edges})"


def _parse_row(row: list[str], line: int) -> tuple[str, str, float]:
    if len(row) != 3:
        raise EdgeListError(f"line {line}: expected 3 fields, got {len(row)}")
    s, t, raw_ts = (field.strip() for field in row)
    if not s or not t:
        raise EdgeListError(f"line {line}: empty node name")
    try:
        ts = float(raw_ts)
    except ValueError:
        raise EdgeListError(f"line {line}: bad timestamp {raw_ts!r}") from None
    if not math.isfinite(ts):
        raise EdgeListError(f"line {line}: non-finite timestamp {raw_ts!r}")
    if s == t:
        raise EdgeListError(f"line {line}: self-loop on node {s!r}")
    return s, t, ts


def parse_edge_list(source, delimiter: str = ",") -> TemporalGraph:
    """Parse a delimited edge list with header source,target,timestamp.

    `source` may be a path or an open text stream. Node names are interned
    in order of first appearance; edge seq is the data-row order.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            return parse_edge_list(fh, delimiter=delimiter)
    reader = csv.reader(source, delimiter=delimiter)
    try:
        header = next(reader)
    except StopIteration:
        raise EdgeListError("line 1: missing header") from None
    if tuple(h.strip().lower() for h in header) != EDGE_LIST_HEADER:
        raise EdgeListError(
            f"line 1: expected header {','.join(EDGE_LIST_HEADER)!r}"
        )
    triples = []
    for row in reader:
        triples.append(_parse_row(row, reader.line_num))
    return TemporalGraph.from_named_edges(triples)


def serialize_edge_list(g: TemporalGraph, delimiter: str = ",") -> str:
    """Edge list in sorted order; timestamps keep full precision."""
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    writer.writerow(EDGE_LIST_HEADER)
    for u, v, t in zip(g.src, g.tgt, g.time):
        writer.writerow([g.node_names[int(u)], g.node_names[int(v)], repr(float(t))])
    return buf.getvalue()


def write_edge_list(g: TemporalGraph, path, delimiter: str = ",") -> None:
    Path(path).write_text(serialize_edge_list(g, delimiter), encoding="utf-8")


@dataclass(frozen=True)
class StaticDigraph:
    """Aggregation of a temporal graph: unique directed arcs, no weights."""

    node_names: tuple[str, ...]
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self):
        n = len(self.node_names)
        for u, v in self.arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc endpoint out of range: {(u, v)}")
            if u == v:
                raise ValueError(f"self-loop arc: {(u, v)}")

    @property
    def n_nodes(self) -> int:
        return len(self.node_names)

    def named_arcs(self) -> set[tuple[str, str]]:
        return {(self.node_names[u], self.node_names[v]) for u, v in self.arcs}


def aggregate_static(g: TemporalGraph) -> StaticDigraph:
    arcs = frozenset(zip(g.src.tolist(), g.tgt.tolist()))
    return StaticDigraph(g.node_names, arcs)


def strongly_connected_components(s: StaticDigraph) -> list[list[int]]:
    """All SCCs via iterative Tarjan; singletons included."""
    n = s.n_nodes
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in sorted(s.arcs):
        adj[u].append(v)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for i in range(pi, len(adj[v])):
                w = adj[v][i]
                if index[w] == -1:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def largest_scc(s: StaticDigraph) -> frozenset[int]:
    """Node set of the largest SCC; ties broken by smallest minimum index."""
    comps = strongly_connected_components(s)
    if not comps:
        return frozenset()
    best = max(comps, key=lambda c: (len(c), -min(c)))
    return frozenset(best)


def filter_nodes(g: TemporalGraph, keep: Iterable[int]) -> TemporalGraph:
    """Restrict to edges with both endpoints in `keep`.

    The result's node set is exactly the kept nodes that still appear as
    endpoints; names re-intern in order of first appearance in the
    retained edge sequence. seq values carry over, preserving tie order.
    """
    keep_set = {int(k) for k in keep}
    for k in keep_set:
        if not (0 <= k < g.n_nodes):
            raise ValueError(f"keep contains unknown node index {k}")
    names: dict[str, int] = {}
    src, tgt, time, seq = [], [], [], []
    for i in range(g.n_edges):
        u, v = int(g.src[i]), int(g.tgt[i])
        if u not in keep_set or v not in keep_set:
            continue
        for name in (g.node_names[u], g.node_names[v]):
            if name not in names:
                names[name] = len(names)
        src.append(names[g.node_names[u]])
        tgt.append(names[g.node_names[v]])
        time.append(float(g.time[i]))
        seq.append(int(g.seq[i]))
    return TemporalGraph(tuple(names), src, tgt, time, seq)
