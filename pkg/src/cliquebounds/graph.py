"""Simple undirected graphs stored as bit rows.

Row ``u`` of a :class:`Graph` is a Python int whose bit ``v`` is set iff
``uv`` is an edge. Everything else here (parsing, generators, enumeration,
triangle counts, multipartite recognition) works directly on those rows.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_ENUMERATION_ORDER = 7


class GraphError(ValueError):
    pass


class ParseError(GraphError):
    """Base class for edge-list parse failures; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class MalformedLineError(ParseError):
    pass


class VertexRangeError(ParseError):
    pass


class SelfLoopError(ParseError):
    pass


class DuplicateEdgeError(ParseError):
    pass


class EdgeCountError(ParseError):
    pass


class InfeasibleParametersError(GraphError):
    pass


class GenerationFailedError(RuntimeError):
    pass


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise GraphError(f"expected {self.n} rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full or row < 0:
                raise GraphError(f"row {u} has bits outside [0, {self.n})")
            if row >> u & 1:
                raise GraphError(f"self-loop at {u}")
            for v in _iter_bits(row):
                if not self.adj[v] >> u & 1:
                    raise GraphError(f"asymmetric pair ({u}, {v})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_edge_mask(cls, n: int, mask: int) -> "Graph":
        """Graph whose edges are the set bits of ``mask`` over :func:`vertex_pairs` order."""
        rows = [0] * n
        for k, (u, v) in enumerate(vertex_pairs(n)):
            if mask >> k & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adj)

    @cached_property
    def m(self) -> int:
        return sum(self.degrees) // 2

    @property
    def max_degree(self) -> int:
        return max(self.degrees)

    @property
    def average_degree(self) -> float:
        return 2 * self.m / self.n

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, u: int) -> list[int]:
        return list(_iter_bits(self.adj[u]))

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in _iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_mask(self) -> int:
        mask = 0
        for k, (u, v) in enumerate(vertex_pairs(self.n)):
            if self.adj[u] >> v & 1:
                mask |= 1 << k
        return mask

    def is_regular(self) -> bool:
        return len(set(self.degrees)) == 1

    def has_isolated_vertices(self) -> bool:
        return 0 in self.degrees

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def is_independent(self, vertices: Iterable[int]) -> bool:
        mask = _to_mask(vertices)
        return all(self.adj[u] & mask == 0 for u in _iter_bits(mask))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        mask = _to_mask(vertices)
        return all((self.adj[u] | 1 << u) & mask == mask for u in _iter_bits(mask))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabelled ``0..k-1`` in the given vertex order."""
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            row = 0
            for w in _iter_bits(self.adj[v]):
                if w in index:
                    row |= 1 << index[w]
            rows.append(row)
        return Graph(len(vertices), tuple(rows))

    def adjacency_matrix(self) -> np.ndarray:
        n = self.n
        a = np.zeros((n, n))
        for u, row in enumerate(self.adj):
            for v in _iter_bits(row):
                a[u, v] = 1.0
        return a

    def laplacian_matrix(self) -> np.ndarray:
        a = self.adjacency_matrix()
        return np.diag(a.sum(axis=1)) - a

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


_PAIRS_CACHE: dict[int, tuple[tuple[int, int], ...]] = {}


def vertex_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """All pairs ``u < v`` in lexicographic order; bit ``k`` of an edge mask is pair ``k``."""
    pairs = _PAIRS_CACHE.get(n)
    if pairs is None:
        pairs = _PAIRS_CACHE[n] = tuple(combinations(range(n), 2))
    return pairs


# --- edge-list text format ------------------------------------------------------


def _parse_ints(line: str, lineno: int) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise MalformedLineError(f"expected two integers, got {line!r}", lineno)
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise MalformedLineError(f"expected two integers, got {line!r}", lineno) from None


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"`` (0-indexed).

    Blank lines are ignored. Every kind of defect raises its own
    :class:`ParseError` subclass.
    """
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise MalformedLineError("missing header line", 1)
    lineno, header = lines[0]
    n, m = _parse_ints(header, lineno)
    if n < 1 or m < 0:
        raise MalformedLineError(f"invalid header {header!r}", lineno)
    body = lines[1:]
    if len(body) != m:
        raise EdgeCountError(f"header announces {m} edges, found {len(body)}", lineno)
    rows = [0] * n
    for lineno, line in body:
        u, v = _parse_ints(line, lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"vertex out of range [0, {n}) in {line!r}", lineno)
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}", lineno)
        if rows[u] >> v & 1:
            raise DuplicateEdgeError(f"duplicate edge {min(u, v)} {max(u, v)}", lineno)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def write_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


# --- operations -------------------------------------------------------------------


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph(g.n, tuple(full & ~row & ~(1 << u) for u, row in enumerate(g.adj)))


def triangles_per_vertex(g: Graph) -> list[int]:
    """Number of triangles through each vertex (edges among its neighbours)."""
    counts = []
    for u, row in enumerate(g.adj):
        twice = sum((g.adj[v] & row).bit_count() for v in _iter_bits(row))
        counts.append(twice // 2)
    return counts


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    offset = 0
    for h in graphs:
        rows.extend(row << offset for row in h.adj)
        offset += h.n
    return Graph(offset, tuple(rows))


# --- generators ---------------------------------------------------------------------


def gen_complete_multipartite(part_sizes: Sequence[int]) -> Graph:
    if not part_sizes:
        raise InfeasibleParametersError("need at least one part")
    if any(s < 1 for s in part_sizes):
        raise InfeasibleParametersError(f"part sizes must be positive: {list(part_sizes)}")
    n = sum(part_sizes)
    full = (1 << n) - 1
    rows = []
    start = 0
    for s in part_sizes:
        block = ((1 << s) - 1) << start
        rows.extend([full & ~block] * s)
        start += s
    return Graph(n, tuple(rows))


def turan_part_sizes(n: int, r: int) -> list[int]:
    if n < 1 or r < 1:
        raise InfeasibleParametersError(f"need n >= 1 and r >= 1, got n={n}, r={r}")
    r = min(r, n)
    q, extra = divmod(n, r)
    return [q + 1] * extra + [q] * (r - extra)


def gen_turan(n: int, r: int) -> Graph:
    """Turán graph T_r(n); for r >= n this is K_n."""
    return gen_complete_multipartite(turan_part_sizes(n, r))


def turan_edge_count(n: int, r: int) -> int:
    sizes = turan_part_sizes(n, r)
    return (n * n - sum(s * s for s in sizes)) // 2


def gen_union_of_cliques(count: int, size: int) -> Graph:
    if count < 1 or size < 1:
        raise InfeasibleParametersError(f"need count >= 1 and size >= 1, got {count}, {size}")
    return disjoint_union(*[gen_complete(size)] * count)


def gen_complete(n: int) -> Graph:
    return gen_complete_multipartite([1] * n)


def gen_empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise InfeasibleParametersError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def gen_path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def gen_star(leaves: int) -> Graph:
    return gen_complete_multipartite([1, leaves])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise InfeasibleParametersError(f"edge probability must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    return Graph.from_edges(n, [(u, v) for u, v in vertex_pairs(n) if rng.random() < p])


def _try_pairing(n: int, d: int, rng: random.Random) -> list[tuple[int, int]] | None:
    # Pair stubs at random; stubs whose pairing would create a loop or a
    # repeated edge go back into the pool. Returns None once stuck.
    edges: set[tuple[int, int]] = set()
    stubs = [v for v in range(n) for _ in range(d)]
    while stubs:
        rng.shuffle(stubs)
        leftover = []
        added = False
        for a, b in zip(stubs[::2], stubs[1::2]):
            if a > b:
                a, b = b, a
            if a != b and (a, b) not in edges:
                edges.add((a, b))
                added = True
            else:
                leftover.extend((a, b))
        stubs = leftover
        if stubs and not added:
            pool = sorted(set(stubs))
            if not any((a, b) not in edges for a, b in combinations(pool, 2)):
                return None
    return sorted(edges)


def gen_random_regular(n: int, d: int, seed: int) -> Graph:
    """Random simple d-regular graph from the pairing model, deterministic in ``seed``."""
    if not 0 <= d < n or (n * d) % 2:
        raise InfeasibleParametersError(f"no simple {d}-regular graph on {n} vertices")
    rng = random.Random(seed)
    for _ in range(max(1, 10 * n * d)):
        edges = _try_pairing(n, d, rng)
        if edges is not None:
            return Graph.from_edges(n, edges)
    raise GenerationFailedError(f"pairing model failed for n={n}, d={d} within the retry budget")


def enumerate_labeled_graphs(n: int, start: int = 0, stop: int | None = None) -> Iterator[Graph]:
    """All labelled graphs on ``n`` vertices in edge-mask order.

    ``start``/``stop`` restrict to a half-open mask range so the stream can be
    split into chunks.
    """
    if not 1 <= n <= MAX_ENUMERATION_ORDER:
        raise InfeasibleParametersError(f"enumeration supports 1 <= n <= {MAX_ENUMERATION_ORDER}, got {n}")
    total = 1 << (n * (n - 1) // 2)
    stop = total if stop is None else min(stop, total)
    pairs = vertex_pairs(n)
    bits = [(1 << v, 1 << u) for u, v in pairs]
    for mask in range(start, stop):
        rows = [0] * n
        k = 0
        rest = mask
        while rest:
            if rest & 1:
                u, v = pairs[k]
                bu, bv = bits[k]
                rows[u] |= bu
                rows[v] |= bv
            rest >>= 1
            k += 1
        yield _trusted_graph(n, tuple(rows))


def _trusted_graph(n: int, rows: tuple[int, ...]) -> Graph:
    # Skips validation; only for rows built symmetric by construction.
    g = object.__new__(Graph)
    object.__setattr__(g, "n", n)
    object.__setattr__(g, "adj", rows)
    return g


def labeled_graph_count(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


# --- complete multipartite recognition -----------------------------------------------


@dataclass(frozen=True)
class MultipartiteCertificate:
    parts: tuple[frozenset[int], ...]
    regular: bool

    @property
    def sizes(self) -> list[int]:
        return sorted(len(p) for p in self.parts)


@dataclass(frozen=True)
class Refutation:
    """Why a graph is not complete multipartite.

    ``triple`` is ``(u, v, w)`` with ``u, v`` non-adjacent and ``w`` adjacent
    to exactly one of them; ``None`` for edgeless graphs (a single class).
    """

    reason: str
    triple: tuple[int, int, int] | None = None


def classify_complete_multipartite(g: Graph) -> MultipartiteCertificate | Refutation:
    full = g.full_mask
    classes = [full & ~row for row in g.adj]  # u together with its non-neighbours
    for u in range(g.n):
        cu = classes[u]
        for v in _iter_bits(cu & ~(1 << u)):
            diff = cu ^ classes[v]
            if diff:
                w = (diff & -diff).bit_length() - 1
                return Refutation("non-adjacency is not transitive", (u, v, w))
    parts = []
    seen = 0
    for u in range(g.n):
        if not seen >> u & 1:
            parts.append(frozenset(_iter_bits(classes[u])))
            seen |= classes[u]
    if len(parts) < 2:
        return Refutation("edgeless graph has a single class")
    sizes = {len(p) for p in parts}
    return MultipartiteCertificate(tuple(parts), regular=len(sizes) == 1)
