"""Acceptance gate.

Each test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion. Tolerances are the ones the criteria state.
"""

from __future__ import annotations

import contextlib
import io
import json
import math
import time
from functools import lru_cache

import numpy as np
import pytest

from cliquebounds.bounds import (
    BoundId,
    Status,
    clique_power_smallest_eigenvalue_check,
    concise_turan_check,
    edwards_elphick_clique_bound,
    full_report,
    laplacian_clique_bound,
    laplacian_degree_clique_bound,
    laplacian_independence_bound,
    log_independence_bound,
    mu_independence_bound,
    regular_alpha_identity_check,
    smallest_eigenvalue_clique_bound,
    spectral_radius_equality_certificate,
    triangle_free_smallest_eigenvalue_check,
    triangle_smallest_eigenvalue_bound,
    turan_spectral_dominance,
    wilf_clique_bound,
    wilf_theta_bound,
)
from cliquebounds.cli import run
from cliquebounds.experiments import (
    conjecture_search,
    identity_sweep,
    oracle_sweep,
    tightness_regular,
)
from cliquebounds.graph import (
    complement,
    enumerate_labeled_graphs,
    gen_complete,
    gen_complete_multipartite,
    gen_cycle,
    gen_empty,
    gen_path,
    gen_random_regular,
    gen_star,
    gen_turan,
    gen_union_of_cliques,
    petersen,
    triangles_per_vertex,
)
from cliquebounds.oracle import max_clique, max_independent_set, motzkin_straus_maximize
from cliquebounds.spectra import adjacency_spectrum, graph_spectra, laplacian_spectrum

EPS_EQ = 1e-7
IDENTITY_TOL = 1e-9


def cli_json(*argv) -> tuple[int, dict, float]:
    out = io.StringIO()
    started = time.perf_counter()
    with contextlib.redirect_stdout(out):
        code = run([*argv, "--format", "json"])
    return code, json.loads(out.getvalue()), time.perf_counter() - started


def integer_partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield []
        return
    for first in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - first, first):
            yield [first] + rest


# --- 1 ---------------------------------------------------------------------------------


@pytest.mark.criterion(1, "exhaustive soundness: verify --nmax 6 < 2 min, --nmax 7 < 1 h")
def test_exhaustive_soundness_order_six():
    code, data, elapsed = cli_json("verify", "--nmax", "6")
    print(f"verify --nmax 6: {data['stats']['graphs']} graphs, {len(data['violations'])} violations, {elapsed:.1f}s")
    assert data["stats"]["graphs_per_order"]["6"] == 32768
    assert code == 0 and data["passed"], data["violations"][:5]
    assert elapsed < 120


@pytest.mark.criterion(1, "exhaustive soundness: verify --nmax 6 < 2 min, --nmax 7 < 1 h")
def test_exhaustive_soundness_order_seven():
    code, data, elapsed = cli_json("verify", "--nmax", "7")
    print(f"verify --nmax 7: {data['stats']['graphs']} graphs, {len(data['violations'])} violations, {elapsed:.1f}s")
    assert data["stats"]["graphs_per_order"]["7"] == 2_097_152
    assert code == 0 and data["passed"], data["violations"][:5]
    assert elapsed < 3600


# --- 2 ---------------------------------------------------------------------------------

CERTIFIED = (
    BoundId.SPECTRAL_RADIUS_EQUALITY,
    BoundId.SMALLEST_EIGENVALUE_CLIQUE,
    BoundId.LAPLACIAN_CLIQUE,
    BoundId.LAPLACIAN_INDEPENDENCE,
    BoundId.SPECTRAL_RADIUS_INDEPENDENCE,
)


def certificate_mismatches(graphs) -> tuple[list[str], dict]:
    mismatches = []
    equalities = {bid.value: 0 for bid in CERTIFIED}
    for g in graphs:
        report = full_report(g)
        for bid in CERTIFIED:
            cert = report.certificate(bid)
            if cert is None:
                continue
            equalities[bid.value] += cert.numeric_equality
            if not cert.consistent:
                mismatches.append(f"{bid.value} on {g.edges()}: numeric {cert.numeric_equality}, "
                                  f"structure {cert.structure.value}")
    return mismatches, equalities


@pytest.mark.criterion(2, "equality biconditionals agree with structural certificates")
def test_equality_biconditionals_exhaustive():
    graphs = (g for n in range(1, 7) for g in enumerate_labeled_graphs(n))
    mismatches, equalities = certificate_mismatches(graphs)
    print(f"n <= 6 equality counts: {equalities}")
    assert not mismatches, mismatches[:5]
    assert all(equalities.values())


@pytest.mark.criterion(2, "equality biconditionals agree with structural certificates")
def test_equality_biconditionals_complete_multipartite():
    graphs = [gen_complete_multipartite(p) for n in range(2, 11) for p in integer_partitions(n) if len(p) >= 2]
    mismatches, equalities = certificate_mismatches(graphs)
    print(f"complete multipartite n <= 10 ({len(graphs)} graphs): {equalities}")
    assert not mismatches, mismatches[:5]


@pytest.mark.criterion(2, "equality biconditionals agree with structural certificates")
def test_equality_biconditionals_unions_of_cliques():
    graphs = [gen_union_of_cliques(c, s) for c in range(1, 13) for s in range(1, 13) if c * s <= 12]
    mismatches, equalities = certificate_mismatches(graphs)
    print(f"unions of equal cliques n <= 12 ({len(graphs)} graphs): {equalities}")
    assert not mismatches, mismatches[:5]


# --- 3 ---------------------------------------------------------------------------------


@pytest.mark.criterion(3, "named values reproduced")
def test_petersen_named_values():
    report = full_report(petersen())
    s = report.summary
    values = {e.bound_id: e.value for e in report.evaluations}
    assert (s["omega"], s["alpha"]) == (2, 4)
    assert abs(s["mu_n"] + 2) <= 1e-9 and abs(s["tau"] - 2) <= 1e-9
    assert abs(values[BoundId.LOG_INDEPENDENCE] - 0.5498) <= 1e-4
    assert abs(values[BoundId.SPECTRAL_RADIUS_INDEPENDENCE] - 2.5) <= EPS_EQ
    assert abs(values[BoundId.LAPLACIAN_INDEPENDENCE] - 2.875) <= EPS_EQ
    assert abs(values[BoundId.SMALLEST_EIGENVALUE_CLIQUE] - 1.8571) <= 1e-4
    assert report.passed


@pytest.mark.criterion(3, "named values reproduced")
def test_octahedron_equality_set():
    report = full_report(gen_complete_multipartite([2, 2, 2]))
    expected = {
        BoundId.CONCISE_TURAN.value,
        BoundId.EDWARDS_ELPHICK_CLIQUE.value,
        BoundId.SPECTRAL_RADIUS_EQUALITY.value,
        BoundId.SMALLEST_EIGENVALUE_CLIQUE.value,
        BoundId.LAPLACIAN_CLIQUE.value,
    }
    observed = {bid.value for bid in report.equality_ids()}
    print(f"K2,2,2 equality ids: {sorted(observed)}")
    assert observed == expected, f"extra {sorted(observed - expected)}, missing {sorted(expected - observed)}"


def _value(result):
    evaluation = result[0] if isinstance(result, tuple) else result
    return evaluation.value


def _derived_examples():
    pet, k222, k33 = petersen(), gen_complete_multipartite([2, 2, 2]), gen_complete_multipartite([3, 3])
    c5, c4 = gen_cycle(5), gen_cycle(4)
    sp = lru_cache(maxsize=None)(graph_spectra)
    mu5 = 2 * math.cos(4 * math.pi / 5)
    lam2_c5 = 2 - 2 * math.cos(2 * math.pi / 5)
    return [
        ("complement(Petersen).m", lambda: complement(pet).m, 30, 0),
        ("triangles(K4)", lambda: triangles_per_vertex(gen_complete(4)), [3, 3, 3, 3], 0),
        ("K2,2,2 edges", lambda: k222.m, 12, 0),
        ("random regular (10,3) edges", lambda: gen_random_regular(10, 3, 1).m, 15, 0),
        ("spectrum(Petersen)", lambda: list(adjacency_spectrum(pet).values), [3] + [1] * 5 + [-2] * 4, 1e-9),
        ("spectrum(K2,2,2)", lambda: list(adjacency_spectrum(k222).values), [4, 0, 0, 0, -2, -2], 1e-9),
        ("laplacian(2K3)", lambda: list(laplacian_spectrum(gen_union_of_cliques(2, 3)).values),
         [0, 0, 3, 3, 3, 3], 1e-9),
        ("laplacian(K1,3)", lambda: list(laplacian_spectrum(gen_star(3)).values), [0, 1, 1, 4], 1e-9),
        ("omega(T3(7))", lambda: max_clique(gen_turan(7, 3)).size, 3, 0),
        ("alpha(Petersen)", lambda: max_independent_set(pet).size, 4, 0),
        ("MS(C5)", lambda: motzkin_straus_maximize(c5).value, 0.5, 1e-9),
        ("MS(K2,2,2)", lambda: motzkin_straus_maximize(k222).value, 2 / 3, 1e-9),
        ("wilf(K3,3)", lambda: _value(wilf_clique_bound(k33, sp(k33), 2)), 2, EPS_EQ),
        ("wilf(Petersen)", lambda: _value(wilf_clique_bound(pet, sp(pet), 2)), 10 / 7, EPS_EQ),
        ("concise Turan(C5)", lambda: _value(concise_turan_check(c5, 2)), 6.25, EPS_EQ),
        ("edwards-elphick(K2,2,2)", lambda: _value(edwards_elphick_clique_bound(k222, sp(k222), 3)), 3, EPS_EQ),
        ("edwards-elphick(Petersen)", lambda: _value(edwards_elphick_clique_bound(pet, sp(pet), 2)), 30 / 21,
         EPS_EQ),
        ("mu independence(2K2)", lambda: _value(mu_independence_bound(
            gen_union_of_cliques(2, 2), sp(gen_union_of_cliques(2, 2)), 2)), 2, EPS_EQ),
        ("mu^2 certificate(K2,3) equality", lambda: spectral_radius_equality_certificate(
            gen_complete_multipartite([2, 3]), sp(gen_complete_multipartite([2, 3])), 2)[1].numeric_equality,
         True, 0),
        ("smallest-eigenvalue clique(C5)", lambda: _value(smallest_eigenvalue_clique_bound(c5, sp(c5), 2)),
         1 + 10 / (3 * (2 - mu5)), EPS_EQ),
        ("triangle-free(K3,3)", lambda: _value(triangle_free_smallest_eigenvalue_check(k33, sp(k33))), -3, EPS_EQ),
        ("triangle-free(Petersen)", lambda: _value(triangle_free_smallest_eigenvalue_check(pet, sp(pet))), -9 / 7,
         EPS_EQ),
        ("triangle bound(C4)", lambda: _value(triangle_smallest_eigenvalue_bound(c4, sp(c4))), -2, EPS_EQ),
        ("laplacian clique(K1,3)", lambda: _value(laplacian_clique_bound(gen_star(3), sp(gen_star(3)), 2)), 1.6,
         EPS_EQ),
        ("laplacian clique(Petersen)", lambda: _value(laplacian_clique_bound(pet, sp(pet), 2)), 1 + 30 / 35, EPS_EQ),
        ("laplacian independence(C5)", lambda: _value(laplacian_independence_bound(c5, sp(c5), 2)),
         1 + 10 / ((5 - lam2_c5) * 3), EPS_EQ),
        ("laplacian degree(K1,3)", lambda: _value(laplacian_degree_clique_bound(gen_star(3), sp(gen_star(3)))), 1.2,
         EPS_EQ),
        ("laplacian degree(C4)", lambda: _value(laplacian_degree_clique_bound(c4, sp(c4))), 2, EPS_EQ),
        ("clique power(K3)", lambda: _value(clique_power_smallest_eigenvalue_check(
            gen_complete(3), sp(gen_complete(3)), 3)), -16 / 27, EPS_EQ),
        ("clique power(Petersen)", lambda: _value(clique_power_smallest_eigenvalue_check(pet, sp(pet), 2)), -0.9,
         EPS_EQ),
        ("log independence(K5,5)", lambda: _value(log_independence_bound(
            gen_complete_multipartite([5, 5]), sp(gen_complete_multipartite([5, 5])), 5)), 0.8057, 1e-4),
        ("spectral Turan(P4)", lambda: _value(turan_spectral_dominance(gen_path(4), 2)), 2, EPS_EQ),
        ("spectral Turan(C5)", lambda: _value(turan_spectral_dominance(c5, 2)), math.sqrt(6), EPS_EQ),
        ("wilf theta(C4)", lambda: _value(wilf_theta_bound(c4, sp(c4), 2, vector=np.array([.5, -.5, .5, -.5]))), 2,
         EPS_EQ),
        ("wilf theta(K4)", lambda: _value(wilf_theta_bound(gen_complete(4), sp(gen_complete(4)), 1)), 1, EPS_EQ),
        ("regular identity(Petersen) min term",
         lambda: regular_alpha_identity_check(pet, max_independent_set(pet).witness).min_term, -15, 1e-9),
        ("regular identity(C4) formula", lambda: regular_alpha_identity_check(c4, {0, 2}).formula_value, 2, 1e-9),
        ("full report(Petersen) evaluation count", lambda: len(full_report(pet).evaluations), 13, 0),
        ("full report(K1) edge bounds not applicable", lambda: full_report(gen_empty(1)).evaluation(
            BoundId.LAPLACIAN_CLIQUE).status, Status.NOT_APPLICABLE, 0),
        ("conjecture(2,4) Turan edges", lambda: conjecture_search(2, 4).stats["turan_edges"], 4, 0),
    ]


def _matches(actual, expected, tol) -> bool:
    if isinstance(expected, list):
        return len(actual) == len(expected) and all(_matches(a, e, tol) for a, e in zip(actual, expected))
    if tol and isinstance(expected, (int, float)) and not isinstance(expected, bool):
        return abs(actual - expected) <= tol
    return actual == expected


@pytest.mark.criterion(3, "named values reproduced")
def test_derived_examples():
    misses = []
    for label, compute, expected, tol in _derived_examples():
        actual = compute()
        if not _matches(actual, expected, tol):
            misses.append(f"{label}: got {actual!r}, expected {expected!r}")
    for miss in misses:
        print(miss)
    assert not misses, "; ".join(misses)


# --- 4 ---------------------------------------------------------------------------------


def regular_corpus():
    yield from (gen_cycle(n) for n in range(3, 13))
    yield from (gen_complete(n) for n in range(2, 9))
    for n in range(2, 13):
        for size in range(1, n // 2 + 1):
            if n % size == 0:
                yield gen_complete_multipartite([size] * (n // size))
    yield petersen()
    for i in range(100):
        n = 4 + 2 * (i % 14)  # even orders 4..30
        yield gen_random_regular(n, 3, 1000 + i)


@pytest.mark.criterion(4, "exact alpha identity on regular graphs")
def test_regular_alpha_identity():
    failures = []
    count = 0
    worst = 0.0
    for g in regular_corpus():
        assert g.is_regular()
        witness = max_independent_set(g).witness
        report = regular_alpha_identity_check(g, witness, graph_spectra(g))
        count += 1
        worst = max(worst, abs(report.quadratic_residual), abs(report.scaling_residual))
        if not (abs(report.quadratic_residual) <= IDENTITY_TOL and abs(report.scaling_residual) <= IDENTITY_TOL
                and round(report.formula_value) == len(witness) and report.holds):
            failures.append(f"{g.n} vertices, {g.m} edges: {report.problems}")
    print(f"{count} regular graphs, worst residual {worst:.2e}")
    assert not failures, failures[:5]


# --- 5 ---------------------------------------------------------------------------------


@pytest.mark.criterion(5, "laplacian-degree clique bound is vacuous")
def test_laplacian_degree_vacuity():
    failures = []
    largest = 0.0
    for n in range(2, 7):
        for g in enumerate_labeled_graphs(n):
            if g.m == 0:
                continue
            spectra = graph_spectra(g)
            e = laplacian_degree_clique_bound(g, spectra, max_clique(g).size)
            gap_sq = dict(e.details)["gap_squared"]
            largest = max(largest, e.value)
            if gap_sq > g.m + EPS_EQ or e.value > 2 + EPS_EQ or e.problems:
                failures.append(f"{g.edges()}: gap^2 {gap_sq}, ratio {e.value}")
    print(f"largest ratio {largest:.12g}")
    assert not failures, failures[:5]


# --- 6 ---------------------------------------------------------------------------------


@pytest.mark.criterion(6, "Motzkin-Straus oracle equivalence")
def test_motzkin_straus_equivalence():
    result = oracle_sweep(7, full_restarts_max=6)
    print(f"{result.stats['graphs']} graphs, max seeded deviation {result.stats['max_seeded_deviation']:.2e}")
    assert result.passed, result.violations[:5]
    assert result.stats["max_seeded_deviation"] <= 1e-9


# --- 7 ---------------------------------------------------------------------------------


@pytest.mark.criterion(7, "no r = 2 counterexamples for N <= 7")
@pytest.mark.parametrize("n", range(3, 8))
def test_conjecture_bipartite(n):
    code, data, _ = cli_json("conjecture", "--r", "2", "--n", str(n))
    print(f"N={n}: examined {data['stats']['examined']}, counterexamples {data['stats']['counterexamples']}")
    assert code == 0 and data["stats"]["counterexamples"] == 0


# --- 8 ---------------------------------------------------------------------------------


@pytest.mark.criterion(8, "tightness experiment on random regular graphs (n = 1000)")
@pytest.mark.parametrize("d", [10, 20, 50])
def test_tightness(d):
    first = tightness_regular(1000, d, 20, seed=2024)
    second = tightness_regular(1000, d, 20, seed=2024)
    assert first.to_json() == second.to_json() and first.to_csv() == second.to_csv()
    stats = first.stats
    print(f"d={d}: ratio min/mean/max {stats['ratio_min']:.4g}/{stats['ratio_mean']:.4g}/{stats['ratio_max']:.4g}, "
          f"positive {stats['rhs_positive']}/{len(first.rows)}, expected positive {stats['positive_expected']}")
    for row in first.rows:
        if row["positive_expected"]:
            assert row["rhs"] > 0, row
        assert row["rhs"] < row["alpha_reference"], row


# --- 9 ---------------------------------------------------------------------------------


@pytest.mark.criterion(9, "spectral identities over n <= 6")
def test_spectral_identities():
    result = identity_sweep(6)
    print(f"{result.stats['graphs']} graphs, {len(result.violations)} violations")
    assert result.passed, result.violations[:5]
