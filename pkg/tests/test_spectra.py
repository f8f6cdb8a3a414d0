from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from cliquebounds.graph import (
    complement,
    enumerate_labeled_graphs,
    gen_complete,
    gen_complete_multipartite,
    gen_cycle,
    gen_empty,
    gen_star,
    gen_union_of_cliques,
)
from cliquebounds.spectra import (
    ConvergenceError,
    NotSymmetricError,
    Spectrum,
    adjacency_spectrum,
    complement_relation_check,
    graph_spectra,
    jacobi_eigh,
    laplacian_spectrum,
    smallest_adjacency_eigenpair,
    symmetric_eigenvalues,
)

from conftest import graphs

EPS = 1e-9


def count_below(a, x: Fraction) -> int:
    """Number of eigenvalues of integer matrix ``a`` below ``x``, exactly.

    Sylvester's law of inertia on A - xI via rational LDL^T; a zero pivot
    means x is an eigenvalue, so shift x down past it and recount.
    """
    n = len(a)
    m = [[Fraction(int(a[i][j])) - (x if i == j else 0) for j in range(n)] for i in range(n)]
    negatives = 0
    for k in range(n):
        pivot = m[k][k]
        if pivot == 0:
            return count_below(a, x - Fraction(1, 10 ** 30))
        if pivot < 0:
            negatives += 1
        for i in range(k + 1, n):
            factor = m[i][k] / pivot
            for j in range(k + 1, n):
                m[i][j] -= factor * m[k][j]
    return negatives


def bisection_eigenvalues(a) -> list[float]:
    n = len(a)
    radius = int(max(sum(abs(v) for v in row) for row in a)) + 1
    values = []
    for k in range(n):
        lo, hi = Fraction(-radius), Fraction(radius)
        # k-th smallest eigenvalue: the least x with more than k eigenvalues below it
        for _ in range(45):
            mid = (lo + hi) / 2
            if count_below(a, mid) > k:
                hi = mid
            else:
                lo = mid
        values.append(float((lo + hi) / 2))
    return values


def assert_close(actual, expected, tol=EPS):
    assert len(actual) == len(expected)
    for x, y in zip(actual, expected):
        assert abs(x - y) <= tol, (actual, expected)


class TestSolver:
    def test_two_by_two(self):
        assert_close(symmetric_eigenvalues(np.array([[0.0, 1.0], [1.0, 0.0]])), [-1, 1])

    def test_triangle(self):
        assert_close(symmetric_eigenvalues(np.ones((3, 3)) - np.eye(3)), [-1, -1, 2])

    def test_pentagon_circulant(self):
        expected = sorted(2 * math.cos(2 * math.pi * k / 5) for k in range(5))
        assert_close(symmetric_eigenvalues(gen_cycle(5).adjacency_matrix()), expected)

    def test_rejects_non_symmetric(self):
        with pytest.raises(NotSymmetricError):
            symmetric_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))
        with pytest.raises(NotSymmetricError):
            symmetric_eigenvalues(np.zeros((2, 3)))

    def test_sweep_cap(self):
        a = np.random.default_rng(0).normal(size=(12, 12))
        with pytest.raises(ConvergenceError):
            jacobi_eigh(a + a.T, max_sweeps=1)

    def test_inertia_oracle_on_all_small_graphs(self):
        for n in range(1, 5):
            for g in enumerate_labeled_graphs(n):
                for matrix in (g.adjacency_matrix(), g.laplacian_matrix()):
                    assert_close(symmetric_eigenvalues(matrix, method="jacobi"), bisection_eigenvalues(matrix))

    @given(arrays(np.float64, (6, 6), elements=st.floats(-10, 10)))
    def test_matches_lapack(self, raw):
        a = raw + raw.T
        ours = symmetric_eigenvalues(a, method="jacobi")
        scale = 1 + np.linalg.norm(a)
        assert np.max(np.abs(ours - np.linalg.eigvalsh(a))) <= EPS * scale

    @given(arrays(np.float64, (7, 7), elements=st.floats(-5, 5)))
    def test_eigenvectors_orthonormal(self, raw):
        a = raw + raw.T
        values, vectors = jacobi_eigh(a)
        assert np.allclose(vectors.T @ vectors, np.eye(7), atol=1e-10)
        assert np.allclose(a @ vectors, vectors * values, atol=1e-8 * (1 + np.linalg.norm(a)))


class TestGraphSpectra:
    def test_petersen(self, petersen_graph):
        assert_close(adjacency_spectrum(petersen_graph).values, [3] + [1] * 5 + [-2] * 4)
        assert_close(laplacian_spectrum(petersen_graph).values, [0] + [2] * 5 + [5] * 4)

    def test_octahedron(self):
        assert_close(adjacency_spectrum(gen_complete_multipartite([2, 2, 2])).values, [4, 0, 0, 0, -2, -2])

    def test_empty(self):
        assert_close(adjacency_spectrum(gen_empty(4)).values, [0, 0, 0, 0])

    @pytest.mark.parametrize("g, expected", [
        (gen_complete(4), [0, 4, 4, 4]),
        (gen_union_of_cliques(2, 3), [0, 0, 3, 3, 3, 3]),
        (gen_star(3), [0, 1, 1, 4]),
    ])
    def test_laplacian_examples(self, g, expected):
        assert_close(laplacian_spectrum(g).values, expected)

    def test_order_tags(self):
        s = adjacency_spectrum(gen_star(4))
        assert s.kind == "adjacency" and list(s.values) == sorted(s.values, reverse=True)
        s = laplacian_spectrum(gen_star(4))
        assert s.kind == "laplacian" and list(s.values) == sorted(s.values)

    def test_invariant_checker_catches_bad_spectrum(self):
        assert Spectrum("adjacency", (1.0, 0.0)).check_invariants(gen_complete(2))
        assert Spectrum("laplacian", (0.5, 1.5)).check_invariants(gen_complete(2))

    @given(graphs())
    def test_trace_identities(self, g):
        assert adjacency_spectrum(g).check_invariants(g) == []
        assert laplacian_spectrum(g).check_invariants(g) == []

    @given(graphs(min_n=2))
    def test_degree_sandwich_and_edge_facts(self, g):
        s = graph_spectra(g)
        if g.m:
            assert s.mu >= 2 * g.m / g.n - EPS >= s.mu_min - 2 * EPS
            assert s.mu_min <= -1 + EPS
        assert s.lam + s.mu_min <= g.max_degree + EPS


class TestEigenpair:
    def test_four_cycle(self):
        value, vec = smallest_adjacency_eigenpair(gen_cycle(4))
        assert abs(value + 2) <= EPS
        assert_close(np.abs(vec), [0.5] * 4)
        assert vec[0] * vec[1] < 0

    def test_edge(self):
        value, vec = smallest_adjacency_eigenpair(gen_complete(2))
        assert abs(value + 1) <= EPS
        assert abs(abs(vec[0]) - 1 / math.sqrt(2)) <= EPS and vec[0] == pytest.approx(-vec[1])

    def test_triangle_degenerate(self):
        value, vec = smallest_adjacency_eigenpair(gen_complete(3))
        assert abs(value + 1) <= EPS and abs(vec.sum()) <= 1e-9

    def test_needs_two_vertices(self):
        with pytest.raises(ValueError):
            smallest_adjacency_eigenpair(gen_empty(1))

    @given(graphs(min_n=2, max_n=9))
    def test_residual(self, g):
        value, vec = smallest_adjacency_eigenpair(g)
        a = g.adjacency_matrix()
        assert np.linalg.norm(a @ vec - value * vec) <= 1e-8
        assert abs(np.linalg.norm(vec) - 1) <= 1e-12
        assert abs(value - adjacency_spectrum(g).values[-1]) <= EPS


class TestComplementRelation:
    def test_petersen(self, petersen_graph):
        report = complement_relation_check(petersen_graph)
        assert report.holds and report.mu_sum_equality
        assert abs(report.mu_sum - 9) <= EPS

    def test_star(self):
        report = complement_relation_check(gen_star(3))
        assert report.holds and not report.mu_sum_equality
        assert abs(report.mu_sum - (math.sqrt(3) + 2)) <= EPS

    @pytest.mark.parametrize("n", [2, 5, 7])
    def test_complete(self, n):
        report = complement_relation_check(gen_complete(n))
        assert report.holds
        assert abs(report.lambda_max_complement) <= EPS and abs(report.n_minus_lambda2) <= EPS

    @given(graphs())
    def test_holds_everywhere(self, g):
        assert complement_relation_check(g).holds

    def test_tau_is_complement_smallest_magnitude(self, petersen_graph):
        s = graph_spectra(petersen_graph)
        assert abs(s.tau - 2) <= EPS
        assert abs(s.complement_mu - adjacency_spectrum(complement(petersen_graph)).largest) <= EPS
