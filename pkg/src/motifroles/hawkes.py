"""Block-structured multivariate Hawkes simulator for directed networks.

Each ordered node pair (u, v) is a point process whose intensity is a
block-pair baseline plus exponentially decaying kernels triggered by past
events. Which events excite a pair is set by the excitation kind:

    self             events on (u, v) itself
    reciprocal       events on (v, u)
    shared-receiver  events (x, v) for any third node x
    broadcast        events (w, u) for any w != v, so receiving makes u
                     more likely to send onward

An excitation entry attaches to the excited pair's block pair. Each
matching trigger adds alpha * beta * exp(-beta * (t - t_event)) to the
intensity, so alpha is the expected number of directly spawned events.
Sampling uses thinning on the summed intensity, which only decays between
events; runs are fully determined by (params, seed).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graph import TemporalGraph

EXCITATION_KINDS = ("self", "reciprocal", "shared-receiver", "broadcast")


@dataclass(frozen=True)
class Excitation:
    kind: str
    block_pair: tuple[int, int]  # blocks of the excited pair (sender, receiver)
    alpha: float
    beta: float

    def __post_init__(self):
        if self.kind not in EXCITATION_KINDS:
            raise ValueError(f"unknown excitation kind {self.kind!r}")
        if self.alpha < 0:
            raise ValueError("alpha must be non-negative")
        if not self.beta > 0:
            raise ValueError("beta must be positive")


@dataclass(frozen=True)
class BlockHawkesParams:
    n_nodes: int
    block_probs: tuple[float, ...]
    horizon: float
    baseline: tuple[tuple[float, ...], ...]  # (n_blocks, n_blocks) rates
    excitations: tuple[Excitation, ...] = ()
    block_assignment: tuple[int, ...] | None = None  # overrides random labels
    max_events: int = 500_000

    @property
    def n_blocks(self) -> int:
        return len(self.block_probs)

    def baseline_array(self) -> np.ndarray:
        return np.asarray(self.baseline, dtype=np.float64)

    def validate(self) -> None:
        if self.n_nodes < 2:
            raise ValueError("need at least two nodes")
        if not self.horizon > 0:
            raise ValueError("horizon must be positive")
        probs = np.asarray(self.block_probs, dtype=np.float64)
        if probs.ndim != 1 or probs.size == 0 or probs.min() < 0:
            raise ValueError("block_probs must be non-negative")
        if abs(probs.sum() - 1.0) > 1e-9:
            raise ValueError("block_probs must sum to one")
        mu = self.baseline_array()
        if mu.shape != (self.n_blocks, self.n_blocks):
            raise ValueError("baseline must be square over blocks")
        if mu.min() < 0 or not np.all(np.isfinite(mu)):
            raise ValueError("baseline rates must be finite and non-negative")
        for e in self.excitations:
            b1, b2 = e.block_pair
            if not (0 <= b1 < self.n_blocks and 0 <= b2 < self.n_blocks):
                raise ValueError(f"excitation block pair out of range: {e.block_pair}")
        if self.block_assignment is not None:
            if len(self.block_assignment) != self.n_nodes:
                raise ValueError("block_assignment length must equal n_nodes")
            if any(not (0 <= b < self.n_blocks) for b in self.block_assignment):
                raise ValueError("block_assignment label out of range")
        margin = self.stability_margin()
        if margin <= 0:
            raise ValueError(
                "unstable parameters: some pair process can receive kernel mass "
                f">= 1 (margin {margin:.4f})"
            )

    def received_mass(self, block_pair: tuple[int, int]) -> float:
        """Total kernel mass a pair with this block pair can receive.

        shared-receiver and broadcast triggers fan in from up to n-2
        third nodes, so their alphas scale accordingly.
        """
        fan = self.n_nodes - 2
        mass = 0.0
        for e in self.excitations:
            if e.block_pair != block_pair:
                continue
            if e.kind in ("self", "reciprocal"):
                mass += e.alpha
            else:
                mass += fan * e.alpha
        return mass

    def stability_margin(self) -> float:
        """1 - max received mass over block pairs; positive means stable."""
        worst = 0.0
        for b1 in range(self.n_blocks):
            for b2 in range(self.n_blocks):
                worst = max(worst, self.received_mass((b1, b2)))
        return 1.0 - worst

    def to_json(self) -> str:
        payload = {
            "n_nodes": self.n_nodes,
            "block_probs": list(self.block_probs),
            "horizon": self.horizon,
            "baseline": [list(row) for row in self.baseline],
            "excitations": [
                {
                    "kind": e.kind,
                    "block_pair": list(e.block_pair),
                    "alpha": e.alpha,
                    "beta": e.beta,
                }
                for e in self.excitations
            ],
            "block_assignment": (
                list(self.block_assignment) if self.block_assignment else None
            ),
            "max_events": self.max_events,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "BlockHawkesParams":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"params file is not valid JSON: {exc}") from None
        try:
            params = cls(
                n_nodes=int(payload["n_nodes"]),
                block_probs=tuple(float(p) for p in payload["block_probs"]),
                horizon=float(payload["horizon"]),
                baseline=tuple(
                    tuple(float(x) for x in row) for row in payload["baseline"]
                ),
                excitations=tuple(
                    Excitation(
                        kind=str(e["kind"]),
                        block_pair=(int(e["block_pair"][0]), int(e["block_pair"][1])),
                        alpha=float(e["alpha"]),
                        beta=float(e["beta"]),
                    )
                    for e in payload.get("excitations", ())
                ),
                block_assignment=(
                    tuple(int(b) for b in payload["block_assignment"])
                    if payload.get("block_assignment")
                    else None
                ),
                max_events=int(payload.get("max_events", 500_000)),
            )
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"params file is missing or malforms a field: {exc}") from None
        params.validate()
        return params


def write_params(params: BlockHawkesParams, path) -> None:
    Path(path).write_text(params.to_json(), encoding="utf-8")


def read_params(path) -> BlockHawkesParams:
    return BlockHawkesParams.from_json(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class SimulatedNetwork:
    graph: TemporalGraph
    labels: np.ndarray  # block per node, aligned with graph.node_names

    def __post_init__(self):
        self.labels.setflags(write=False)


def intensity(
    params: BlockHawkesParams,
    history,
    pair: tuple[int, int],
    t: float,
    labels=None,
) -> float:
    """Direct evaluation of lambda_(u,v)(t) by scanning the full history.

    The reference formula, independent of the simulator's incremental
    state; history holds (source, target, time) triples with time < t
    contributing. labels defaults to params.block_assignment.
    """
    if labels is None:
        if params.block_assignment is None:
            raise ValueError("labels required when params carry no block_assignment")
        labels = params.block_assignment
    labels = [int(b) for b in labels]
    u, v = pair
    if u == v:
        raise ValueError("pair must join two distinct nodes")
    mu = params.baseline_array()
    lam = float(mu[labels[u], labels[v]])
    pair_blocks = (labels[u], labels[v])
    for e in params.excitations:
        if e.block_pair != pair_blocks:
            continue
        for src, tgt, ts in history:
            if not ts < t:
                continue
            src, tgt = int(src), int(tgt)
            if e.kind == "self":
                match = (src, tgt) == (u, v)
            elif e.kind == "reciprocal":
                match = (src, tgt) == (v, u)
            elif e.kind == "shared-receiver":
                match = tgt == v and src not in (u, v)
            else:  # broadcast
                match = tgt == u and src != v and src != u
            if match:
                lam += e.alpha * e.beta * np.exp(-e.beta * (t - ts))
    return lam


def simulate(params: BlockHawkesParams, seed: int) -> SimulatedNetwork:
    """Sample one network on [0, horizon] by thinning the summed intensity.

    Blocks are drawn first (unless fixed in params), then events. The
    upper bound is refreshed after every accepted or rejected candidate;
    validity of the bound is asserted at each candidate.
    """
    params.validate()
    rng = np.random.default_rng(np.random.PCG64(seed))
    n = params.n_nodes
    if params.block_assignment is not None:
        labels = np.array(params.block_assignment, dtype=np.int64)
    else:
        labels = rng.choice(params.n_blocks, size=n, p=np.asarray(params.block_probs))
        labels = labels.astype(np.int64)
    mu = params.baseline_array()[np.ix_(labels, labels)]
    np.fill_diagonal(mu, 0.0)
    mu_sum = float(mu.sum())

    entries = params.excitations
    states = [np.zeros((n, n)) for _ in entries]
    # per-entry boolean masks: which pairs the entry can ever excite
    masks = []
    for e in entries:
        pair_mask = np.logical_and.outer(labels == e.block_pair[0], labels == e.block_pair[1])
        np.fill_diagonal(pair_mask, False)
        masks.append(pair_mask)

    def total_excitation() -> float:
        return float(sum(s.sum() for s in states))

    events_src: list[int] = []
    events_tgt: list[int] = []
    events_time: list[float] = []
    t = 0.0
    bound = mu_sum + total_excitation()
    horizon = params.horizon
    while True:
        if bound <= 0.0:
            break
        wait = rng.exponential(1.0 / bound)
        t_cand = t + wait
        if t_cand > horizon:
            break
        dt = t_cand - t
        for e, s in zip(entries, states):
            s *= np.exp(-e.beta * dt)
        lam = mu_sum + total_excitation()
        assert lam <= bound * (1.0 + 1e-9), "thinning bound violated"
        accept = rng.random()
        if accept * bound <= lam:
            rates = mu.copy()
            for s in states:
                rates += s
            cum = np.cumsum(rates.reshape(-1))
            pick = rng.random() * cum[-1]
            idx = int(np.searchsorted(cum, pick, side="right"))
            idx = min(idx, rates.size - 1)
            p, q = divmod(idx, n)
            events_src.append(p)
            events_tgt.append(q)
            events_time.append(t_cand)
            if len(events_time) > params.max_events:
                raise RuntimeError("simulation exceeded max_events")
            for e, s, mask in zip(entries, states, masks):
                jump = e.alpha * e.beta
                if e.kind == "self":
                    if mask[p, q]:
                        s[p, q] += jump
                elif e.kind == "reciprocal":
                    if mask[q, p]:
                        s[q, p] += jump
                elif e.kind == "shared-receiver":
                    col = mask[:, q].copy()
                    col[p] = False
                    col[q] = False
                    s[col, q] += jump
                else:  # broadcast: receiving node q sends onward
                    row = mask[q, :].copy()
                    row[p] = False
                    row[q] = False
                    s[q, row] += jump
            t = t_cand
            bound = mu_sum + total_excitation()
        else:
            t = t_cand
            bound = lam
    names = tuple(str(i) for i in range(n))
    graph = TemporalGraph(names, events_src, events_tgt, events_time)
    return SimulatedNetwork(graph=graph, labels=labels)


# Shipped scenario parameter sets for the two-block role-recovery study.
# Values were tuned with scripts/tune_scenarios.py over 100 seeds until
# positioned clustering recovered blocks with a wide margin, positionless
# clustering stayed far behind, and the cluster centroids were dominated
# by the intended motif cells. SCENARIO_DELTAS gives the matching
# counting windows. Event density is kept low relative to the window so
# that windowed triples are mostly single bursts rather than unrelated
# coincidences.

SCENARIO_DELTAS = {1: 3.0, 2: 5.0}


def scenario_params(which: int, n_nodes: int = 20) -> BlockHawkesParams:
    """Parameter sets for the two simulation scenarios.

    Scenario 1: symmetric baselines with uniform self-excitation, plus
    strong reciprocal excitation of block-1 replies to block-0 edges.
    Repeated-contact bursts put both blocks in repeat motifs equally,
    while reply bursts separate the blocks only by position.

    Scenario 2: block-0 senders pile onto a block-1 receiver that was
    just contacted (shared-receiver), and a contacted block-1 node then
    relays to distinct block-0 targets (broadcast), so block-1 nodes sit
    at star centers and block-0 nodes at star leaves.
    """
    if which == 1:
        params = BlockHawkesParams(
            n_nodes=n_nodes,
            block_probs=(0.5, 0.5),
            horizon=12000.0,
            baseline=((0.0002, 0.0002), (0.0002, 0.0002)),
            excitations=(
                Excitation("self", (0, 0), alpha=0.25, beta=1.0),
                Excitation("self", (0, 1), alpha=0.25, beta=1.0),
                Excitation("self", (1, 1), alpha=0.25, beta=1.0),
                Excitation("self", (1, 0), alpha=0.25, beta=1.0),
                Excitation("reciprocal", (1, 0), alpha=0.70, beta=1.0),
            ),
        )
    elif which == 2:
        params = BlockHawkesParams(
            n_nodes=n_nodes,
            block_probs=(0.5, 0.5),
            horizon=1600.0,
            baseline=((0.0, 0.004), (0.0, 0.0)),
            excitations=(
                Excitation("shared-receiver", (0, 1), alpha=0.05, beta=1.0),
                Excitation("broadcast", (1, 0), alpha=0.05, beta=1.0),
            ),
        )
    else:
        raise ValueError(f"unknown scenario {which!r}; defined scenarios are 1 and 2")
    params.validate()
    return params


def scenario_delta(which: int) -> float:
    if which not in SCENARIO_DELTAS:
        raise ValueError(f"unknown scenario {which!r}; defined scenarios are 1 and 2")
    return SCENARIO_DELTAS[which]


def write_labels_csv(net: SimulatedNetwork, path) -> None:
    lines = ["node,block"]
    for name, block in zip(net.graph.node_names, net.labels):
        lines.append(f"{name},{int(block)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
