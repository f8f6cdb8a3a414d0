"""Exact clique and independence numbers, plus the Motzkin-Straus program.

``max_clique`` is a branch and bound over bit rows with greedy colouring
bounds. ``motzkin_straus_maximize`` runs replicator dynamics on the simplex
and always includes a start seeded uniformly on a maximum clique, so its
value certifies ``1 - 1/omega`` rather than merely approximating it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .graph import Graph, _iter_bits, classify_complete_multipartite, complement, MultipartiteCertificate

REPLICATOR_TOLERANCE = 1e-13
REPLICATOR_MAX_ITER = 100_000
SUPPORT_CUTOFF = 1e-7
MASS_TOLERANCE = 1e-6


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class CliqueResult:
    size: int
    witness: frozenset[int]


def _relabel_by_degree(g: Graph) -> tuple[list[int], list[int]]:
    # new label i -> old vertex order[i]; descending degree, ties by index
    order = sorted(range(g.n), key=lambda v: (-g.degrees[v], v))
    position = [0] * g.n
    for i, v in enumerate(order):
        position[v] = i
    rows = []
    for v in order:
        row = 0
        for w in _iter_bits(g.adj[v]):
            row |= 1 << position[w]
        rows.append(row)
    return order, rows


def _color_sort(candidates: int, adj: list[int]) -> tuple[list[int], list[int]]:
    # Greedy colouring in label order; returns vertices with non-decreasing colour.
    vertices = []
    colors = []
    color = 0
    uncolored = candidates
    while uncolored:
        color += 1
        available = uncolored
        while available:
            low = available & -available
            v = low.bit_length() - 1
            vertices.append(v)
            colors.append(color)
            uncolored ^= low
            available &= ~adj[v] & ~low
    return vertices, colors


def max_clique(g: Graph) -> CliqueResult:
    order, adj = _relabel_by_degree(g)
    best_size = 1
    best_mask = 1
    if g.m == 0:
        return CliqueResult(1, frozenset([order[0]]))

    def expand(size: int, clique: int, candidates: int) -> None:
        nonlocal best_size, best_mask
        vertices, colors = _color_sort(candidates, adj)
        for i in range(len(vertices) - 1, -1, -1):
            if size + colors[i] <= best_size:
                return
            v = vertices[i]
            bit = 1 << v
            inner = candidates & adj[v]
            if inner:
                expand(size + 1, clique | bit, inner)
            elif size + 1 > best_size:
                best_size = size + 1
                best_mask = clique | bit
            candidates &= ~bit

    expand(0, 0, (1 << g.n) - 1)
    return CliqueResult(best_size, frozenset(order[i] for i in _iter_bits(best_mask)))


def max_independent_set(g: Graph) -> CliqueResult:
    return max_clique(complement(g))


def clique_number_brute_force(g: Graph) -> int:
    """Largest vertex subset that is pairwise adjacent, by scanning all subsets."""
    best = 1
    for subset in range(1, 1 << g.n):
        k = subset.bit_count()
        if k > best and all((g.adj[v] | 1 << v) & subset == subset for v in _iter_bits(subset)):
            best = k
    return best


_SUBSET_PAIR_MASKS: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def clique_numbers_by_subset_scan(n: int, edge_masks: np.ndarray) -> np.ndarray:
    """Clique numbers of many n-vertex graphs given as edge masks, by subset scan.

    A subset is a clique iff the mask contains every pair inside it; the scan
    is vectorised across masks.
    """
    if n not in _SUBSET_PAIR_MASKS:
        pair_index = {}
        k = 0
        for u in range(n):
            for v in range(u + 1, n):
                pair_index[u, v] = k
                k += 1
        required = []
        sizes = []
        for subset in range(1, 1 << n):
            verts = [v for v in range(n) if subset >> v & 1]
            req = 0
            for i, u in enumerate(verts):
                for v in verts[i + 1:]:
                    req |= 1 << pair_index[u, v]
            required.append(req)
            sizes.append(len(verts))
        _SUBSET_PAIR_MASKS[n] = (np.array(required, dtype=np.int64), np.array(sizes, dtype=np.int64))
    required, sizes = _SUBSET_PAIR_MASKS[n]
    masks = np.asarray(edge_masks, dtype=np.int64)
    omega = np.ones(masks.shape, dtype=np.int64)
    for req, size in zip(required, sizes):
        if size < 2:
            continue
        hit = (masks & req) == req
        omega = np.where(hit & (size > omega), size, omega)
    return omega


# --- Motzkin-Straus -----------------------------------------------------------------


@dataclass(frozen=True)
class SimplexPoint:
    coords: tuple[float, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.coords):
            raise ValueError("simplex coordinates must be nonnegative")
        if abs(sum(self.coords) - 1.0) > 1e-12:
            raise ValueError(f"simplex coordinates sum to {sum(self.coords)!r}, not 1")

    def as_array(self) -> np.ndarray:
        return np.array(self.coords)


@dataclass(frozen=True)
class MotzkinStrausResult:
    value: float
    point: SimplexPoint
    restart: int
    iterations: int
    monotone: bool
    values: tuple[float, ...] = field(repr=False, default=())


@njit(cache=True)
def _replicator(a, x0, tol, max_iter):
    n = x0.shape[0]
    x = x0.copy()
    ax = np.empty(n)
    for i in range(n):
        s = 0.0
        for j in range(n):
            s += a[i, j] * x[j]
        ax[i] = s
    f = 0.0
    for i in range(n):
        f += x[i] * ax[i]
    monotone = True
    it = 0
    while it < max_iter and f > 0.0:
        it += 1
        total = 0.0
        for i in range(n):
            total += x[i] * ax[i] / f
        change = 0.0
        xn = np.empty(n)
        for i in range(n):
            xn[i] = x[i] * ax[i] / f / total
            d = abs(xn[i] - x[i])
            if d > change:
                change = d
        for i in range(n):
            s = 0.0
            for j in range(n):
                s += a[i, j] * xn[j]
            ax[i] = s
        fn = 0.0
        for i in range(n):
            fn += xn[i] * ax[i]
        if fn < f - 1e-14:
            monotone = False
        x = xn
        f = fn
        if change < tol:
            break
    return x, f, it, monotone


def replicator_dynamics(g: Graph, start: np.ndarray, tol: float = REPLICATOR_TOLERANCE,
                        max_iter: int = REPLICATOR_MAX_ITER) -> tuple[np.ndarray, float, int, bool]:
    """Iterate x_i <- x_i (Ax)_i / <Ax, x> from ``start``.

    Returns ``(point, value, iterations, monotone)`` where ``monotone`` records
    whether the objective never decreased (beyond 1e-14) along the run.
    """
    a = g.adjacency_matrix()
    x = np.asarray(start, dtype=np.float64)
    if g.m and float(x @ a @ x) == 0.0:
        # support is independent: nudge towards the barycentre
        x = 0.5 * x + 0.5 / g.n
    return _replicator(a, x, tol, max_iter)


def _snap_to_simplex(x: np.ndarray) -> SimplexPoint:
    x = np.clip(x, 0.0, None)
    x = x / x.sum()
    coords = tuple(float(c) for c in x)
    drift = 1.0 - sum(coords)
    if abs(drift) > 1e-12:
        i = int(np.argmax(x))
        coords = coords[:i] + (coords[i] + drift,) + coords[i + 1:]
    return SimplexPoint(coords)


def motzkin_straus_maximize(g: Graph, restarts: int = 1, seed: int = 0,
                            clique_seeded: bool = True) -> MotzkinStrausResult:
    """Best replicator fixed point of <Ax, x> over the simplex.

    Starts, in restart-index order: the barycentre, ``restarts`` random points
    (uniform on the simplex, from ``seed``), then uniform weight on a maximum
    clique. Ties go to the lowest index.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    n = g.n
    if g.m == 0:
        return MotzkinStrausResult(0.0, SimplexPoint(tuple([1.0 / n] * n)), 0, 0, True, (0.0,))
    rng = np.random.default_rng(seed)
    starts = [np.full(n, 1.0 / n)]
    for _ in range(restarts):
        e = rng.exponential(size=n)
        starts.append(e / e.sum())
    if clique_seeded:
        witness = max_clique(g).witness
        x = np.zeros(n)
        x[list(witness)] = 1.0 / len(witness)
        starts.append(x)
    best = None
    values = []
    monotone = True
    for index, start in enumerate(starts):
        point, value, iterations, mono = replicator_dynamics(g, start)
        monotone &= mono
        values.append(float(value))
        if best is None or value > best[1] + 1e-12:
            best = (point, float(value), index, iterations)
    point, value, index, iterations = best
    return MotzkinStrausResult(value, _snap_to_simplex(point), index, iterations, monotone, tuple(values))


@dataclass(frozen=True)
class MSPartitionReport:
    support: frozenset[int]
    parts: tuple[frozenset[int], ...]
    masses: tuple[float, ...]
    consistent: bool
    reason: str = ""


def ms_equality_structure(g: Graph, point: SimplexPoint, omega: int | None = None) -> MSPartitionReport:
    """Read off the complete multipartite structure of a Motzkin-Straus optimum.

    The support must induce a complete omega-partite graph whose parts each
    carry mass 1/omega. Raises :class:`OracleError` if the point is not
    optimal to within 1e-6.
    """
    if omega is None:
        omega = max_clique(g).size
    x = point.as_array()
    a = g.adjacency_matrix()
    value = float(x @ a @ x)
    if abs(value - (1.0 - 1.0 / omega)) > 1e-6:
        raise OracleError(f"point value {value:.9g} is not within 1e-6 of 1 - 1/{omega}")
    support = [i for i in range(g.n) if x[i] > SUPPORT_CUTOFF]
    sub = g.induced(support)
    if sub.m == 0:
        parts = (frozenset(support),)
    else:
        cert = classify_complete_multipartite(sub)
        if not isinstance(cert, MultipartiteCertificate):
            return MSPartitionReport(frozenset(support), (), (), False,
                                     "support does not induce a complete multipartite graph")
        parts = tuple(frozenset(support[i] for i in p) for p in cert.parts)
    parts = tuple(sorted(parts, key=min))
    masses = tuple(float(sum(x[i] for i in p)) for p in parts)
    if len(parts) != omega:
        return MSPartitionReport(frozenset(support), parts, masses, False,
                                 f"support has {len(parts)} parts, expected {omega}")
    if any(abs(mass - 1.0 / omega) > MASS_TOLERANCE for mass in masses):
        return MSPartitionReport(frozenset(support), parts, masses, False, "part masses differ from 1/omega")
    return MSPartitionReport(frozenset(support), parts, masses, True)
