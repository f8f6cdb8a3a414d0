"""Dense symmetric eigensolver and graph spectra.

Small matrices (n <= 64) go through a cyclic Jacobi solver compiled with
numba. Larger ones fall back to LAPACK, since a Jacobi sweep is O(n^3) and
the tightness experiments run at n = 1000.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numba import njit

from .config import DEFAULT_TOLERANCES, Tolerances
from .graph import Graph, complement

JACOBI_MAX_ORDER = 64
JACOBI_REL_THRESHOLD = 1e-12
JACOBI_MAX_SWEEPS = 64
SYMMETRY_TOLERANCE = 1e-12


class NotSymmetricError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


@njit(cache=True)
def _jacobi_kernel(matrix, threshold, max_sweeps):
    n = matrix.shape[0]
    a = matrix.copy()
    v = np.eye(n)
    total = 0.0
    for i in range(n):
        for j in range(n):
            total += a[i, j] * a[i, j]
    limit = threshold * (1.0 + math.sqrt(total))
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        if math.sqrt(2.0 * off) < limit:
            return np.diag(a).copy(), v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return np.diag(a).copy(), v, -1


def _check_symmetric(matrix: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetricError(f"expected a square matrix, got shape {a.shape}")
    if a.size and np.max(np.abs(a - a.T)) > SYMMETRY_TOLERANCE:
        raise NotSymmetricError("matrix is not symmetric")
    return a


def jacobi_eigh(matrix: np.ndarray, threshold: float = JACOBI_REL_THRESHOLD,
                max_sweeps: int = JACOBI_MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigendecomposition; eigenvalues ascending, eigenvectors as columns.

    Stops once the off-diagonal Frobenius norm drops below
    ``threshold * (1 + ||A||_F)``.
    """
    a = _check_symmetric(matrix)
    if a.shape[0] == 0:
        return np.zeros(0), np.zeros((0, 0))
    values, vectors, sweeps = _jacobi_kernel(a, threshold, max_sweeps)
    if sweeps < 0:
        raise ConvergenceError(f"Jacobi did not converge within {max_sweeps} sweeps")
    order = np.argsort(values, kind="stable")
    return values[order], vectors[:, order]


def symmetric_eigh(matrix: np.ndarray, method: Literal["auto", "jacobi", "lapack"] = "auto",
                   threshold: float = JACOBI_REL_THRESHOLD) -> tuple[np.ndarray, np.ndarray]:
    a = _check_symmetric(matrix)
    if method == "auto":
        method = "jacobi" if a.shape[0] <= JACOBI_MAX_ORDER else "lapack"
    if method == "jacobi":
        return jacobi_eigh(a, threshold)
    if method == "lapack":
        return np.linalg.eigh(a)
    raise ValueError(f"unknown method {method!r}")


def symmetric_eigenvalues(matrix: np.ndarray, method: Literal["auto", "jacobi", "lapack"] = "auto",
                          threshold: float = JACOBI_REL_THRESHOLD) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix in ascending order."""
    a = _check_symmetric(matrix)
    if method == "lapack" or (method == "auto" and a.shape[0] > JACOBI_MAX_ORDER):
        return np.linalg.eigvalsh(a)
    return symmetric_eigh(a, method, threshold)[0]


@dataclass(frozen=True)
class Spectrum:
    """Graph eigenvalues: adjacency sorted descending, Laplacian ascending."""

    kind: Literal["adjacency", "laplacian"]
    values: tuple[float, ...]

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    @property
    def largest(self) -> float:
        return max(self.values)

    @property
    def smallest(self) -> float:
        return min(self.values)

    def check_invariants(self, g: Graph, tol: Tolerances = DEFAULT_TOLERANCES) -> list[str]:
        """Trace identities; returns the list of failures (empty when all hold)."""
        eps = tol.eps_spec
        vals = np.asarray(self.values)
        two_m = 2 * g.m
        problems = []
        if self.kind == "adjacency":
            if abs(vals.sum()) > eps:
                problems.append(f"trace {vals.sum():.3e} != 0")
            if abs((vals ** 2).sum() - two_m) > eps * max(1, two_m):
                problems.append(f"trace of square {(vals ** 2).sum():.12g} != 2m = {two_m}")
            if any(x < y for x, y in zip(self.values, self.values[1:])):
                problems.append("adjacency values not descending")
        else:
            if abs(vals[0]) > eps:
                problems.append(f"lambda_1 = {vals[0]:.3e} != 0")
            if abs(vals.sum() - two_m) > eps * max(1, two_m):
                problems.append(f"trace {vals.sum():.12g} != 2m = {two_m}")
            if vals.min() < -eps or vals.max() > g.n + eps:
                problems.append("laplacian eigenvalue outside [0, n]")
            if any(x > y for x, y in zip(self.values, self.values[1:])):
                problems.append("laplacian values not ascending")
        return problems


def adjacency_spectrum(g: Graph) -> Spectrum:
    values = symmetric_eigenvalues(g.adjacency_matrix())
    return Spectrum("adjacency", tuple(float(x) for x in values[::-1]))


def laplacian_spectrum(g: Graph) -> Spectrum:
    values = symmetric_eigenvalues(g.laplacian_matrix())
    return Spectrum("laplacian", tuple(float(x) for x in values))


def smallest_adjacency_eigenpair(g: Graph) -> tuple[float, np.ndarray]:
    """Smallest adjacency eigenvalue and a unit eigenvector for it."""
    if g.n < 2:
        raise ValueError("need at least two vertices")
    a = g.adjacency_matrix()
    values, vectors = symmetric_eigh(a)
    vec = vectors[:, 0]
    vec = vec / np.linalg.norm(vec)
    return float(values[0]), vec


@dataclass(frozen=True)
class GraphSpectra:
    """Spectral data of a graph and its complement, computed once per graph."""

    adjacency: Spectrum
    laplacian: Spectrum
    complement_adjacency: Spectrum
    smallest_vector: np.ndarray | None

    @property
    def mu(self) -> float:
        return self.adjacency.values[0]

    @property
    def mu_min(self) -> float:
        return self.adjacency.values[-1]

    @property
    def lam(self) -> float:
        return self.laplacian.values[-1]

    @property
    def lam2(self) -> float:
        vals = self.laplacian.values
        return vals[1] if len(vals) > 1 else 0.0

    @property
    def complement_mu(self) -> float:
        return self.complement_adjacency.values[0]

    @property
    def tau(self) -> float:
        return abs(self.complement_adjacency.values[-1])


def graph_spectra(g: Graph) -> GraphSpectra:
    a = g.adjacency_matrix()
    values, vectors = symmetric_eigh(a)
    adjacency = Spectrum("adjacency", tuple(float(x) for x in values[::-1]))
    vec = vectors[:, 0] / np.linalg.norm(vectors[:, 0]) if g.n >= 2 else None
    lap = np.diag(a.sum(axis=1)) - a
    laplacian = Spectrum("laplacian", tuple(float(x) for x in symmetric_eigenvalues(lap)))
    ca = 1.0 - np.eye(g.n) - a
    comp = Spectrum("adjacency", tuple(float(x) for x in symmetric_eigenvalues(ca)[::-1]))
    return GraphSpectra(adjacency, laplacian, comp, vec)


@dataclass(frozen=True)
class ComplementRelationReport:
    lambda_max_complement: float
    n_minus_lambda2: float
    laplacian_relation_holds: bool
    mu_sum: float
    regular: bool
    mu_sum_equality: bool
    mu_sum_holds: bool

    @property
    def holds(self) -> bool:
        return self.laplacian_relation_holds and self.mu_sum_holds and self.mu_sum_equality == self.regular


def complement_relation_check(g: Graph, tol: Tolerances = DEFAULT_TOLERANCES) -> ComplementRelationReport:
    """Check lambda_n(complement) = n - lambda_2 and mu + mu(complement) >= n - 1.

    The second relation is an equality exactly for regular graphs; the report
    records whether the numerics agree with that.
    """
    eps = tol.eps_spec
    h = complement(g)
    lap_g = laplacian_spectrum(g).values
    lap_h = laplacian_spectrum(h).values
    lam2 = lap_g[1] if g.n > 1 else 0.0
    target = g.n - lam2 if g.n > 1 else 0.0
    mu_sum = adjacency_spectrum(g).largest + adjacency_spectrum(h).largest
    return ComplementRelationReport(
        lambda_max_complement=lap_h[-1],
        n_minus_lambda2=target,
        laplacian_relation_holds=abs(lap_h[-1] - target) <= eps,
        mu_sum=mu_sum,
        regular=g.is_regular(),
        mu_sum_equality=abs(mu_sum - (g.n - 1)) <= eps,
        mu_sum_holds=mu_sum >= g.n - 1 - eps,
    )
