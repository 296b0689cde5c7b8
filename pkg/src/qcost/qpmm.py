"""Quantum pairwise-merger machine (QPMM) construction.

The QPMM tracks how pairs of distinct state paths that emit the same word
can merge into a common state.  Its nodes are unordered state pairs plus a
terminal SINK reached the moment a merger happens; its weighted transition
matrix ``zeta`` generates every quantum overlap between codeword signal
states, so it is the single object the rest of the package works from.

Construction, given a unifilar machine:

1. enumerate all unordered pairs of distinct states, plus SINK;
2. for each pair ``(i, j)`` and symbol ``x``: no edge when either state
   lacks an ``x``-transition; an edge to SINK when both transition to the
   same state (a merger); otherwise an edge to the successor pair (which
   may equal ``(i, j)`` itself);
3. drop every pair-state, and with it every edge, that has no directed
   path to SINK;
4. weight each surviving edge ``sqrt(Pr(x|i) * Pr(x|j))``.

Pair-states are ordered lexicographically by index pair with SINK last, so
matrices are reproducible.  Parallel edges for different symbols stay
separate in ``zeta_by_symbol`` and sum into ``zeta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from .machines import EDGE_EPS, EpsilonMachine

SINK = "SINK"


@dataclass(frozen=True)
class Qpmm:
    machine: EpsilonMachine
    pairs: tuple[tuple[int, int], ...]
    zeta_by_symbol: Mapping[str, np.ndarray]
    zeta: np.ndarray
    depth: float  # positive integer, or math.inf when the pair graph has a cycle

    def __post_init__(self):
        for m in self.zeta_by_symbol.values():
            m.setflags(write=False)
        self.zeta.setflags(write=False)
        object.__setattr__(self, "_index",
                           {p: k for k, p in enumerate(self.pairs)})

    @property
    def nodes(self) -> tuple:
        return self.pairs + (SINK,)

    @property
    def size(self) -> int:
        return len(self.pairs) + 1

    @property
    def sink_index(self) -> int:
        return len(self.pairs)

    def pair_index(self, i: int, j: int):
        """Position of the unordered pair in the node ordering, or None if
        the pair was pruned (its overlap is identically zero)."""
        key = (i, j) if i < j else (j, i)
        return self._index.get(key)

    def pair_label(self, node) -> str:
        if node == SINK:
            return SINK
        labels = self.machine.labels
        a, b = labels[node[0]], labels[node[1]]
        if all(len(s) == 1 for s in labels):
            return a + b
        return f"{a},{b}"


def _prune_to_sink(n_nodes: int, sink: int, adjacency: np.ndarray) -> list[int]:
    """Indices of nodes with a directed path to the sink (sink included)."""
    keep = np.zeros(n_nodes, dtype=bool)
    keep[sink] = True
    stack = [sink]
    incoming = adjacency.T > 0
    while stack:
        v = stack.pop()
        for u in np.nonzero(incoming[v])[0]:
            if not keep[u]:
                keep[u] = True
                stack.append(int(u))
    return [int(i) for i in np.nonzero(keep)[0]]


def _depth(zeta: np.ndarray, sink: int) -> float:
    """Number of nodes on the longest path ending at SINK, or inf.

    Equals the nilpotency index of ``zeta`` when the pair graph is acyclic;
    computed by longest-path dynamic programming after cycle detection, not
    by iterating matrix powers.
    """
    n = zeta.shape[0]
    adj = [list(np.nonzero(zeta[u] > 0)[0]) for u in range(n)]
    # Kahn's algorithm detects cycles and yields a topological order
    indeg = np.zeros(n, dtype=int)
    for u in range(n):
        for v in adj[u]:
            indeg[v] += 1
    order = [u for u in range(n) if indeg[u] == 0]
    head = 0
    while head < len(order):
        u = order[head]
        head += 1
        for v in adj[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                order.append(v)
    if len(order) < n:
        return math.inf
    # After pruning, every edge lies on a path to the sink, so the longest
    # path ending at the sink is just the longest path overall.
    dist = np.zeros(n, dtype=int)
    for u in reversed(order):
        if adj[u]:
            dist[u] = 1 + max(dist[v] for v in adj[u])
    return int(dist.max()) + 1


def build_qpmm(machine: EpsilonMachine) -> Qpmm:
    """Construct the pairwise-merger machine of a validated machine.

    Counifilar machines have no mergers at all, so every pair is pruned and
    the result contains only SINK with a 1x1 zero ``zeta``.
    """
    n = machine.state_count
    all_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    nodes = all_pairs + [SINK]
    pos = {u: k for k, u in enumerate(nodes)}
    m = len(nodes)
    per_symbol = {x: np.zeros((m, m)) for x in machine.alphabet}
    for (i, j) in all_pairs:
        for x in machine.alphabet:
            a = machine.successor(i, x)
            b = machine.successor(j, x)
            if a is None or b is None:
                continue
            w = math.sqrt(machine.symbol_probability(i, x)
                          * machine.symbol_probability(j, x))
            if w <= EDGE_EPS:
                continue
            if a == b:
                target = SINK
            else:
                target = (a, b) if a < b else (b, a)
            per_symbol[x][pos[(i, j)], pos[target]] += w

    total = sum(per_symbol.values())
    kept = _prune_to_sink(m, pos[SINK], total)
    pairs = tuple(nodes[k] for k in kept if nodes[k] != SINK)
    order = [pos[p] for p in pairs] + [pos[SINK]]
    zeta_by_symbol = {x: per_symbol[x][np.ix_(order, order)]
                      for x in machine.alphabet}
    zeta = sum(zeta_by_symbol.values())
    if not isinstance(zeta, np.ndarray):  # defensive: empty alphabet
        zeta = np.zeros((1, 1))
    return Qpmm(machine=machine, pairs=pairs, zeta_by_symbol=zeta_by_symbol,
                zeta=zeta, depth=_depth(zeta, len(pairs)))


def depth(qpmm: Qpmm) -> float:
    """Longest state-path through the QPMM that ends in SINK, counted in
    nodes; math.inf when the pair graph contains a cycle.  For acyclic
    QPMMs this is the nilpotency index of ``zeta``."""
    return qpmm.depth


def cryptic_order(qpmm: Qpmm) -> float:
    """Smallest codeword length after which no new overlap accumulates:
    ``depth - 1`` for acyclic QPMMs (0 for counifilar machines), math.inf
    when the pair graph has a cycle."""
    if qpmm.depth is math.inf:
        return math.inf
    return int(qpmm.depth) - 1


def _fmt(x: float) -> str:
    return format(x, ".17g")


def to_dot(obj: Union[EpsilonMachine, Qpmm]) -> str:
    """Graphviz DOT text for a machine or a QPMM.

    Edge labels read ``symbol|weight`` (for machines the weight is the
    transition probability).  Node and edge order are deterministic, so the
    output is byte-stable for a fixed input.
    """
    lines = []
    if isinstance(obj, EpsilonMachine):
        lines.append("digraph machine {")
        lines.append("  rankdir=LR;")
        for s in obj.labels:
            lines.append(f'  "{s}";')
        for i in range(obj.state_count):
            for x in obj.alphabet:
                j = obj.successor(i, x)
                if j is None:
                    continue
                p = obj.matrices[x][i, j]
                lines.append(f'  "{obj.labels[i]}" -> "{obj.labels[j]}" '
                             f'[label="{x}|{_fmt(p)}"];')
    elif isinstance(obj, Qpmm):
        lines.append("digraph qpmm {")
        lines.append("  rankdir=LR;")
        names = [obj.pair_label(u) for u in obj.nodes]
        for s in names:
            lines.append(f'  "{s}";')
        for u in range(obj.size):
            for x in obj.machine.alphabet:
                row = obj.zeta_by_symbol[x][u]
                for v in np.nonzero(row > 0)[0]:
                    lines.append(f'  "{names[u]}" -> "{names[v]}" '
                                 f'[label="{x}|{_fmt(row[v])}"];')
    else:
        raise TypeError(f"cannot render {type(obj).__name__} as DOT")
    lines.append("}")
    return "\n".join(lines) + "\n"
