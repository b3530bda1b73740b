"""De Bruijn graphs of local rules, parity certificates and pre-image cycles.

Nodes are the 2r-bit words, edges the (2r+1)-bit neighbourhoods: edge ``k``
runs from node ``k >> 1`` to node ``k & (4**r - 1)``, appending the last bit
of ``k``. A circular configuration of length n is a closed walk of length n
and its successor is read off the edge outputs along that walk.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .core import Configuration, LocalRule, neighbourhood_codes


@dataclass(frozen=True, eq=False)
class DeBruijnGraph:
    radius: int
    output: np.ndarray
    active: np.ndarray

    @property
    def node_count(self) -> int:
        return 1 << (2 * self.radius)

    @property
    def edge_count(self) -> int:
        return self.output.size

    def source(self, k: int) -> int:
        return k >> 1

    def target(self, k: int) -> int:
        return k & (self.node_count - 1)

    def edge(self, u: int, bit: int) -> int:
        return (u << 1) | bit

    def successors(self, u: int) -> tuple[int, int]:
        mask = self.node_count - 1
        return ((u << 1) & mask, ((u << 1) | 1) & mask)

    def predecessors(self, v: int) -> tuple[int, int]:
        high = 2 * self.radius - 1
        return (v >> 1, (v >> 1) | (1 << high))

    def label(self, u: int) -> str:
        return format(u, f"0{2 * self.radius}b")

    def subgraph(self, output: int) -> np.ndarray:
        """Edge codes of B0 (``output=0``) or B1 (``output=1``)."""
        return np.flatnonzero(self.output == output)

    def edges(self) -> Iterator[tuple[int, int, int, int]]:
        for k in range(self.edge_count):
            yield self.source(k), self.target(k), int(self.output[k]), int(self.active[k])

    def edge_list(self) -> str:
        """``u v output active`` per line, nodes written as bit strings."""
        return "".join(f"{self.label(u)} {self.label(v)} {o} {a}\n" for u, v, o, a in self.edges())


def build_debruijn(rule: LocalRule) -> DeBruijnGraph:
    if rule.radius < 1:
        raise ValueError("de Bruijn graphs need radius >= 1")
    output = rule.table.copy()
    active = rule.active_mask().astype(np.uint8)
    output.flags.writeable = False
    active.flags.writeable = False
    return DeBruijnGraph(rule.radius, output, active)


@dataclass(frozen=True)
class CycleWitness:
    """A closed walk; ``weight`` counts edges carrying ``weight_kind``."""

    radius: int
    nodes: tuple[int, ...]
    weight: int
    weight_kind: str = "active"

    @property
    def length(self) -> int:
        return len(self.nodes)

    def edge_codes(self) -> list[int]:
        mask = (1 << (2 * self.radius)) - 1
        codes = []
        for i, u in enumerate(self.nodes):
            v = self.nodes[(i + 1) % len(self.nodes)]
            if (u << 1) & mask != v & ~1 & mask:
                raise ValueError(f"no edge between consecutive nodes {u} and {v}")
            codes.append((u << 1) | (v & 1))
        return codes

    def configuration(self) -> Configuration:
        """The circular configuration spelled by the appended bits of the walk."""
        return Configuration(tuple(v & 1 for v in self.nodes[1:] + self.nodes[:1]))

    def node_labels(self) -> list[str]:
        return [format(u, f"0{2 * self.radius}b") for u in self.nodes]


@dataclass(frozen=True)
class ParityCertificate:
    """Either a node potential proving every cycle has even active weight,
    or a closed walk with odd active weight."""

    potential: Optional[np.ndarray] = None
    witness: Optional[CycleWitness] = None

    @property
    def certified(self) -> bool:
        return self.potential is not None


def _out_tree(graph: DeBruijnGraph, root: int = 0) -> np.ndarray:
    """BFS parent edge of every node, following edge directions."""
    parent = np.full(graph.node_count, -1, dtype=np.int64)
    seen = np.zeros(graph.node_count, dtype=bool)
    seen[root] = True
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for bit in (0, 1):
            k = graph.edge(u, bit)
            v = graph.target(k)
            if not seen[v]:
                seen[v] = True
                parent[v] = k
                queue.append(v)
    return parent


def _path_to(graph: DeBruijnGraph, parent: np.ndarray, v: int) -> list[int]:
    """Edge codes of the tree path root -> v."""
    path = []
    while parent[v] >= 0:
        k = int(parent[v])
        path.append(k)
        v = graph.source(k)
    return path[::-1]


def _path_back(graph: DeBruijnGraph, v: int, root: int = 0) -> list[int]:
    """Edge codes of a shortest directed path v -> root."""
    nxt = {root: None}
    queue = deque([root])
    while queue and v not in nxt:
        w = queue.popleft()
        for u in graph.predecessors(w):
            if u not in nxt:
                nxt[u] = w
                queue.append(u)
    path, u = [], v
    while u != root:
        w = nxt[u]
        path.append((u << 1) | (w & 1))
        u = w
    return path


def _walk(graph: DeBruijnGraph, codes: list[int], weights: np.ndarray, kind: str) -> CycleWitness:
    nodes = tuple(graph.source(k) for k in codes)
    return CycleWitness(graph.radius, nodes, int(sum(int(weights[k]) for k in codes)), kind)


def certify_pairwise_parity(graph: DeBruijnGraph) -> ParityCertificate:
    """Decide whether every closed walk uses an even number of active edges.

    That holds exactly when some g: nodes -> {0, 1} satisfies
    ``active(u -> v) == g(u) ^ g(v)`` on every edge. g is propagated along
    a BFS out-tree from node 0 and every other edge is checked against it.
    A failing edge u -> v closes one of two walks, root -> u -> v -> root
    or root -> v -> root, whose active weights differ by one; the odd one
    is returned.
    """
    active = graph.active
    parent = _out_tree(graph)
    potential = np.zeros(graph.node_count, dtype=np.uint8)
    order = deque([0])
    while order:
        u = order.popleft()
        for bit in (0, 1):
            k = graph.edge(u, bit)
            v = graph.target(k)
            if parent[v] == k:
                potential[v] = potential[u] ^ active[k]
                order.append(v)
    for k in range(graph.edge_count):
        u, v = graph.source(k), graph.target(k)
        if potential[u] ^ potential[v] != active[k]:
            back = _path_back(graph, v)
            through = _path_to(graph, parent, u) + [k] + back
            direct = _path_to(graph, parent, v) + back
            for codes in (through, direct):
                witness = _walk(graph, codes, active, "active")
                if witness.weight % 2:
                    return ParityCertificate(witness=witness)
            raise AssertionError("walk weights must differ in parity")  # pragma: no cover
    potential.flags.writeable = False
    return ParityCertificate(potential=potential)


def window_outputs(graph: DeBruijnGraph, cells: np.ndarray) -> np.ndarray:
    return graph.output[neighbourhood_codes(cells, graph.radius)]


def _all_cells(n: int) -> np.ndarray:
    values = np.arange(1 << n, dtype=np.int64)
    return ((values[:, None] >> np.arange(n - 1, -1, -1)) & 1).astype(np.uint8)


def _walk_of(config: Configuration, radius: int) -> tuple[int, ...]:
    """Nodes of the closed walk spelled by ``config``; the edge leaving node i
    appends cell i."""
    n = config.n
    width = 2 * radius
    return tuple(int("".join(str(config[i - width + j]) for j in range(width)), 2)
                 for i in range(n))


def necklaces(n: int) -> Iterator[str]:
    """Binary necklaces of length ``n`` as lexicographically least rotations,
    in lexicographic order (Fredricksen-Kessler-Maiorana)."""
    a = [0] * (n + 1)

    def gen(t: int, p: int) -> Iterator[str]:
        if t > n:
            if n % p == 0:
                yield "".join(map(str, a[1:]))
            return
        a[t] = a[t - p]
        yield from gen(t + 1, p)
        if a[t - p] == 0:
            a[t] = 1
            yield from gen(t + 1, t)

    yield from gen(1, 1)


def preimage_necklaces(rule: LocalRule | DeBruijnGraph, target: int, n: int) -> set[Configuration]:
    """Rotation classes of length-n configurations mapped to all-``target``.

    Each class is represented by its least rotation; equivalently, these
    are the closed walks of length n that stay inside B_target.
    """
    graph = rule if isinstance(rule, DeBruijnGraph) else build_debruijn(rule)
    if n < 1:
        raise ValueError("length must be at least 1")
    found = set()
    for word in necklaces(n):
        cells = np.frombuffer(word.encode(), dtype=np.uint8) - ord("0")
        if (window_outputs(graph, cells) == target).all():
            found.add(Configuration.from_string(word))
    return found


def find_even_length_odd_parity_cycle(graph: DeBruijnGraph, target: int,
                                      max_length: int) -> Optional[CycleWitness]:
    """Shortest (then smallest-valued) even-length configuration with an odd
    number of ones all of whose windows output ``target``.

    Such a configuration is a closed walk in B_target whose length is even
    and whose bit content is odd; its witness weight counts ones.
    """
    if max_length < 2:
        raise ValueError("max_length must be at least 2")
    for length in range(2, max_length + 1, 2):
        cells = _all_cells(length)
        odd = (cells.sum(axis=1) & 1) == 1
        hits = np.flatnonzero(odd & (window_outputs(graph, cells) == target).all(axis=1))
        if hits.size:
            config = Configuration.from_int(int(hits[0]), length)
            return CycleWitness(graph.radius, _walk_of(config, graph.radius),
                                config.count_ones(), "ones")
    return None
