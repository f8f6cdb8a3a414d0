"""Verification campaigns built on the bound evaluations.

* :func:`exhaustive_verify` runs :func:`~cliquebounds.bounds.full_report` on
  every labelled graph up to a given order.
* :func:`tightness_regular` measures the logarithmic independence bound on
  random regular graphs.
* :func:`conjecture_search` looks for graphs with smaller spectral radius
  than the Turán graph but at least as many edges.
* :func:`oracle_sweep` and :func:`identity_sweep` audit the exact oracles and
  the spectral identities over whole populations.

Every campaign returns an :class:`ExperimentResult`, which is reproducible
from its descriptor and serialises to JSON and CSV.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from math import factorial
from multiprocessing import Pool

import numpy as np

from .bounds import (
    BoundId,
    Status,
    _r12,
    full_report,
    turan_spectral_radius,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .graph import (
    Graph,
    MAX_ENUMERATION_ORDER,
    complement,
    enumerate_labeled_graphs,
    gen_random_regular,
    labeled_graph_count,
    turan_edge_count,
    write_edge_list,
)
from .oracle import (
    clique_numbers_by_subset_scan,
    max_clique,
    motzkin_straus_maximize,
    replicator_dynamics,
)
from .spectra import (
    adjacency_spectrum,
    jacobi_eigh,
    laplacian_spectrum,
    symmetric_eigenvalues,
)

log = logging.getLogger(__name__)

CHUNK_SIZE = 4096
EXACT_ALPHA_LIMIT = 60
CSV_COLUMNS = {
    "exhaustive": ["n", "edge_mask", "problem", "edge_list"],
    "tightness": ["trial", "graph_seed", "tau", "rhs", "alpha_reference", "reference_exact",
                  "ratio", "positive_expected", "rhs_positive", "exceeds_reference"],
    "conjecture": ["n", "edge_mask", "m", "mu", "turan_mu", "turan_edges", "edge_list"],
    "oracle": ["n", "edge_mask", "problem", "edge_list"],
    "identities": ["n", "edge_mask", "problem", "edge_list"],
}


@dataclass
class ExperimentResult:
    kind: str
    descriptor: dict
    violations: list[dict] = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    rows: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "descriptor": self.descriptor,
            "passed": self.passed,
            "violations": self.violations,
            "stats": _round_tree(self.stats),
            "rows": _round_tree(self.rows),
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def to_csv(self) -> str:
        """One row per trial (tightness) or per violation/finding, columns in ``CSV_COLUMNS`` order."""
        columns = CSV_COLUMNS[self.kind]
        records = self.rows if self.kind in ("tightness", "conjecture") else self.violations
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow({k: _round_tree(record.get(k)) for k in columns})
        return buf.getvalue()


def _round_tree(obj):
    if isinstance(obj, float):
        return _r12(obj)
    if isinstance(obj, dict):
        return {k: _round_tree(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_tree(v) for v in obj]
    return obj


def _violation(g: Graph, mask: int, problem: str) -> dict:
    return {"n": g.n, "edge_mask": mask, "problem": problem, "edge_list": write_edge_list(g)}


# --- exhaustive verification -----------------------------------------------------------


def regular_multipartite_count(n: int) -> int:
    """Labelled complete multipartite graphs on n vertices with >= 2 equal parts."""
    total = 0
    for size in range(1, n // 2 + 1):
        if n % size == 0:
            parts = n // size
            total += factorial(n) // (factorial(size) ** parts * factorial(parts))
    return total


@dataclass
class _BoundTally:
    applicable: int = 0
    vacuous: int = 0
    not_applicable: int = 0
    errored: int = 0
    equality: int = 0
    margin_min: float = math.inf
    margin_max: float = -math.inf
    margin_sum: float = 0.0

    def add(self, status: Status, margin: float | None, equality: bool) -> None:
        if status is Status.APPLICABLE:
            self.applicable += 1
        elif status is Status.VACUOUS:
            self.vacuous += 1
        elif status is Status.NOT_APPLICABLE:
            self.not_applicable += 1
        else:
            self.errored += 1
        if margin is not None:
            self.margin_min = min(self.margin_min, margin)
            self.margin_max = max(self.margin_max, margin)
            self.margin_sum += margin
        self.equality += equality

    def merge(self, other: "_BoundTally") -> None:
        self.applicable += other.applicable
        self.vacuous += other.vacuous
        self.not_applicable += other.not_applicable
        self.errored += other.errored
        self.equality += other.equality
        self.margin_min = min(self.margin_min, other.margin_min)
        self.margin_max = max(self.margin_max, other.margin_max)
        self.margin_sum += other.margin_sum

    def summary(self) -> dict:
        checked = self.applicable + self.vacuous
        return {
            "applicable": self.applicable,
            "vacuous": self.vacuous,
            "not_applicable": self.not_applicable,
            "errored": self.errored,
            "equality": self.equality,
            "margin_min": self.margin_min if checked else None,
            "margin_mean": self.margin_sum / checked if checked else None,
            "margin_max": self.margin_max if checked else None,
        }


def _verify_chunk(args) -> tuple[dict, list[dict], Counter]:
    n, start, stop, tol = args
    tallies = {bid: _BoundTally() for bid in BoundId}
    violations = []
    structures: Counter = Counter()
    for offset, g in enumerate(enumerate_labeled_graphs(n, start, stop)):
        report = full_report(g, tol)
        for e in report.evaluations:
            tallies[e.bound_id].add(e.status, e.margin, e.equality)
        for c in report.certificates:
            structures[c.bound_id.value, c.structure.value] += 1
        for problem in report.violations:
            violations.append(_violation(g, start + offset, problem))
    return tallies, violations, structures


def exhaustive_verify(n_max: int, workers: int = 1, tol: Tolerances = DEFAULT_TOLERANCES,
                      n_min: int = 1, chunk_size: int = CHUNK_SIZE) -> ExperimentResult:
    """Full bound report on every labelled graph with n_min <= n <= n_max vertices.

    Work is cut into fixed edge-mask chunks and merged in mask order, so the
    result does not depend on ``workers``.
    """
    if not 1 <= n_min <= n_max <= MAX_ENUMERATION_ORDER:
        raise ValueError(f"need 1 <= n_min <= n_max <= {MAX_ENUMERATION_ORDER}")
    tallies = {bid: _BoundTally() for bid in BoundId}
    structures: Counter = Counter()
    violations: list[dict] = []
    per_order = {}
    census = {}
    started = time.perf_counter()
    for n in range(n_min, n_max + 1):
        total = labeled_graph_count(n)
        tasks = [(n, s, min(s + chunk_size, total), tol) for s in range(0, total, chunk_size)]
        order_tallies = {bid: _BoundTally() for bid in BoundId}
        if workers > 1:
            with Pool(workers) as pool:
                parts = pool.map(_verify_chunk, tasks, chunksize=1)
        else:
            parts = map(_verify_chunk, tasks)
        for part_tallies, part_violations, part_structures in parts:
            for bid, t in part_tallies.items():
                order_tallies[bid].merge(t)
            violations.extend(part_violations)
            structures.update(part_structures)
        for bid, t in order_tallies.items():
            tallies[bid].merge(t)
        expected = regular_multipartite_count(n)
        census[n] = {
            "regular_multipartite_expected": expected,
            "smallest_eigenvalue_clique_equalities": order_tallies[BoundId.SMALLEST_EIGENVALUE_CLIQUE].equality,
            "laplacian_clique_equalities": order_tallies[BoundId.LAPLACIAN_CLIQUE].equality,
            "laplacian_independence_equalities": order_tallies[BoundId.LAPLACIAN_INDEPENDENCE].equality,
            "spectral_radius_independence_equalities":
                order_tallies[BoundId.SPECTRAL_RADIUS_INDEPENDENCE].equality,
        }
        for key, count in census[n].items():
            if key != "regular_multipartite_expected" and count != expected:
                violations.append({"n": n, "edge_mask": None,
                                   "problem": f"census: {key} = {count}, expected {expected}",
                                   "edge_list": ""})
        per_order[n] = total
        log.info("n=%d: %d graphs, %d violations so far", n, total, len(violations))
    stats = {
        "graphs": sum(per_order.values()),
        "graphs_per_order": per_order,
        "bounds": {bid.value: t.summary() for bid, t in tallies.items()},
        "structures": {f"{b}:{s}": c for (b, s), c in sorted(structures.items())},
        "equality_census": census,
    }
    descriptor = {"n_min": n_min, "n_max": n_max, "chunk_size": chunk_size,
                  "eps_spec": tol.eps_spec, "eps_eq": tol.eps_eq}
    log.info("exhaustive verification took %.1fs", time.perf_counter() - started)
    return ExperimentResult("exhaustive", descriptor, violations, stats)


# --- tightness on random regular graphs ---------------------------------------------


def greedy_independent_set(g: Graph) -> list[int]:
    """Repeatedly take a minimum-degree vertex (lowest index on ties) and delete its closed neighbourhood."""
    alive = g.full_mask
    degree = list(g.degrees)
    chosen = []
    while alive:
        best = min((v for v in range(g.n) if alive >> v & 1), key=lambda v: (degree[v], v))
        chosen.append(best)
        removed = (g.adj[best] | 1 << best) & alive
        alive &= ~removed
        r = removed
        while r:
            low = r & -r
            w = low.bit_length() - 1
            r ^= low
            nb = g.adj[w] & alive
            while nb:
                lowb = nb & -nb
                degree[lowb.bit_length() - 1] -= 1
                nb ^= lowb
    return chosen


def log_independence_rhs(n: int, d: float, tau: float) -> float:
    return (n / (d + 1) - 1) * (math.log((d + 1) / tau) - math.log(math.log(d + 1)))


def tightness_regular(n: int, d: int, trials: int, seed: int,
                      exact_limit: int = EXACT_ALPHA_LIMIT) -> ExperimentResult:
    """Compare the logarithmic independence bound with alpha on random d-regular graphs.

    alpha is exact for n <= ``exact_limit`` and otherwise a greedy independent
    set (a lower bound on alpha). Only exact references are asserted against.
    """
    if (n * d) % 2 or d < 3 or n > 2000 or trials < 1 or d >= n:
        raise ValueError(f"invalid tightness parameters n={n}, d={d}, trials={trials}")
    rng = random.Random(seed)
    rows = []
    violations = []
    for trial in range(trials):
        graph_seed = rng.getrandbits(63)
        g = gen_random_regular(n, d, graph_seed)
        comp = complement(g)
        tau = abs(float(symmetric_eigenvalues(comp.adjacency_matrix())[0]))
        rhs = log_independence_rhs(n, d, tau)
        exact = n <= exact_limit
        alpha_ref = max_clique(comp).size if exact else len(greedy_independent_set(g))
        positive_expected = (d + 1) / tau > math.log(d + 1)
        row = {
            "trial": trial, "graph_seed": graph_seed, "tau": tau, "rhs": rhs,
            "alpha_reference": alpha_ref, "reference_exact": exact,
            "ratio": rhs / alpha_ref, "positive_expected": positive_expected,
            "rhs_positive": rhs > 0, "exceeds_reference": rhs >= alpha_ref,
        }
        rows.append(row)
        if exact and rhs >= alpha_ref:
            violations.append({"trial": trial, "problem": f"rhs {rhs:.12g} >= alpha {alpha_ref}",
                               "edge_list": write_edge_list(g)})
        if positive_expected != (rhs > 0):
            violations.append({"trial": trial, "problem": "rhs sign disagrees with (d+1)/tau > ln(d+1)",
                               "edge_list": write_edge_list(g)})
    ratios = [r["ratio"] for r in rows]
    stats = {
        "ratio_min": min(ratios), "ratio_mean": sum(ratios) / len(ratios), "ratio_max": max(ratios),
        "tau_mean": sum(r["tau"] for r in rows) / len(rows),
        "rhs_positive": sum(r["rhs_positive"] for r in rows),
        "positive_expected": sum(r["positive_expected"] for r in rows),
        "exceeds_reference": sum(r["exceeds_reference"] for r in rows),
        "reference": "exact" if n <= exact_limit else "greedy",
    }
    descriptor = {"n": n, "d": d, "trials": trials, "seed": seed, "exact_limit": exact_limit}
    return ExperimentResult("tightness", descriptor, violations, stats, rows)


# --- spectral Turán question ---------------------------------------------------------


def _spectral_radius(g: Graph, threshold: float = 1e-12) -> float:
    if g.m == 0:
        return 0.0
    return float(jacobi_eigh(g.adjacency_matrix(), threshold)[0][-1])


def _sample_graphs(n: int, count: int, seed: int):
    # uniform labelled graphs: each pair present with probability 1/2
    rng = random.Random(seed)
    pairs = n * (n - 1) // 2
    for _ in range(count):
        mask = rng.getrandbits(pairs) if pairs else 0
        yield mask, Graph.from_edge_mask(n, mask)


def conjecture_search(r: int, n: int, mode: str = "exhaustive", count: int = 0, seed: int = 0,
                      tol: Tolerances = DEFAULT_TOLERANCES) -> ExperimentResult:
    """Search for G with mu(G) < mu(T_r(n)) but e(G) >= e(T_r(n)).

    Candidates are re-checked with a tighter Jacobi threshold before being
    reported. For r = 2 any finding is a violation; for larger r findings are
    data.
    """
    if not 2 <= r < n:
        raise ValueError(f"need 2 <= r < n, got r={r}, n={n}")
    if mode == "exhaustive":
        if n > MAX_ENUMERATION_ORDER:
            raise ValueError(f"exhaustive mode supports n <= {MAX_ENUMERATION_ORDER}")
        population = ((mask, g) for mask, g in enumerate(enumerate_labeled_graphs(n)))
    elif mode == "sample":
        if count < 1:
            raise ValueError("sample mode needs count >= 1")
        population = _sample_graphs(n, count, seed)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    turan_edges = turan_edge_count(n, r)
    turan_mu = turan_spectral_radius(n, r)
    guard = tol.slack(turan_mu)
    examined = candidates = 0
    findings = []
    for mask, g in population:
        if g.m < turan_edges:
            continue
        examined += 1
        if _spectral_radius(g) < turan_mu - guard:
            candidates += 1
            mu = _spectral_radius(g, threshold=1e-14)
            if mu < turan_mu - guard:
                findings.append({"n": n, "edge_mask": mask, "m": g.m, "mu": mu, "turan_mu": turan_mu,
                                 "turan_edges": turan_edges, "edge_list": write_edge_list(g)})
    violations = [dict(f, problem="counterexample for r = 2") for f in findings] if r == 2 else []
    stats = {"examined": examined, "candidates": candidates, "counterexamples": len(findings),
             "turan_edges": turan_edges, "turan_mu": turan_mu}
    descriptor = {"r": r, "n": n, "mode": mode, "count": count if mode == "sample" else None,
                  "seed": seed if mode == "sample" else None, "eps_eq": tol.eps_eq}
    return ExperimentResult("conjecture", descriptor, violations, stats, findings)


# --- oracle and identity audits ----------------------------------------------------


def clique_seeded_value(g: Graph, witness) -> tuple[float, bool]:
    """Replicator value from uniform weight on ``witness``, with the monotonicity flag."""
    if g.m == 0:
        return 0.0, True
    x = np.zeros(g.n)
    x[list(witness)] = 1.0 / len(witness)
    _, value, _, monotone = replicator_dynamics(g, x)
    return float(value), bool(monotone)


def oracle_sweep(n_max: int, full_restarts_max: int = 6, restarts: int = 1, seed: int = 0,
                 n_min: int = 1) -> ExperimentResult:
    """Audit the exact oracles on every labelled graph up to ``n_max`` vertices.

    Checks branch and bound against a vectorised subset scan (for omega and,
    through complements, alpha) and the clique-seeded Motzkin-Straus value
    against 1 - 1/omega to 1e-9. For n <= ``full_restarts_max`` the full
    restart schedule is also run and audited for the upper bound and
    monotonicity.
    """
    violations = []
    counts = {}
    full_runs = 0
    worst_seeded = 0.0
    for n in range(n_min, n_max + 1):
        total = labeled_graph_count(n)
        full = (1 << (n * (n - 1) // 2)) - 1
        masks = np.arange(total, dtype=np.int64)
        brute_omega = clique_numbers_by_subset_scan(n, masks)
        brute_alpha = clique_numbers_by_subset_scan(n, full ^ masks)
        for mask, g in enumerate(enumerate_labeled_graphs(n)):
            clique = max_clique(g)
            omega = clique.size
            alpha = max_clique(complement(g)).size
            problems = []
            if omega != brute_omega[mask] or not g.is_clique(clique.witness):
                problems.append(f"omega {omega} != subset scan {brute_omega[mask]}")
            if alpha != brute_alpha[mask]:
                problems.append(f"alpha {alpha} != subset scan {brute_alpha[mask]}")
            optimum = 1.0 - 1.0 / omega
            value, monotone = clique_seeded_value(g, clique.witness)
            worst_seeded = max(worst_seeded, abs(value - optimum))
            if abs(value - optimum) > 1e-9:
                problems.append(f"seeded replicator value {value!r} != 1 - 1/{omega}")
            if not monotone:
                problems.append("seeded replicator decreased the objective")
            if n <= full_restarts_max:
                full_runs += 1
                result = motzkin_straus_maximize(g, restarts=restarts, seed=seed)
                if any(v > optimum + 1e-9 for v in result.values):
                    problems.append("replicator value exceeds 1 - 1/omega")
                if abs(result.value - optimum) > 1e-9:
                    problems.append(f"best replicator value {result.value!r} != 1 - 1/{omega}")
                if not result.monotone:
                    problems.append("replicator decreased the objective")
            violations.extend(_violation(g, mask, p) for p in problems)
        counts[n] = total
    stats = {"graphs": sum(counts.values()), "graphs_per_order": counts,
             "full_restart_runs": full_runs, "max_seeded_deviation": worst_seeded}
    descriptor = {"n_min": n_min, "n_max": n_max, "full_restarts_max": full_restarts_max,
                  "restarts": restarts, "seed": seed}
    return ExperimentResult("oracle", descriptor, violations, stats)


def spectral_identity_problems(g: Graph, tol: Tolerances = DEFAULT_TOLERANCES) -> list[str]:
    """Trace, Laplacian, complement and Laplacian-degree identities on one graph."""
    eps = tol.eps_spec
    h = complement(g)
    adj, lap = adjacency_spectrum(g), laplacian_spectrum(g)
    cadj, clap = adjacency_spectrum(h), laplacian_spectrum(h)
    problems = []
    for label, spectrum, graph in (("A", adj, g), ("L", lap, g), ("A(comp)", cadj, h), ("L(comp)", clap, h)):
        problems.extend(f"{label}: {p}" for p in spectrum.check_invariants(graph, tol))
    n, m, delta = g.n, g.m, g.max_degree
    mu, mu_n, lam = adj.values[0], adj.values[-1], lap.values[-1]
    if n > 1 and abs(clap.values[-1] - (n - lap.values[1])) > eps:
        problems.append(f"lambda_n(comp) = {clap.values[-1]:.12g} != n - lambda_2 = {n - lap.values[1]:.12g}")
    if lam + mu_n > delta + eps:
        problems.append(f"lambda + mu_n = {lam + mu_n:.12g} > Delta = {delta}")
    mu_sum = mu + cadj.values[0]
    if mu_sum < n - 1 - eps:
        problems.append(f"mu + mu(comp) = {mu_sum:.12g} < n - 1")
    if (abs(mu_sum - (n - 1)) <= eps) != g.is_regular():
        problems.append(f"mu + mu(comp) = n - 1 equality {abs(mu_sum - (n - 1)) <= eps} "
                        f"but regular = {g.is_regular()}")
    if m:
        if not mu >= 2 * m / n - eps or not 2 * m / n >= mu_n - eps:
            problems.append("average degree not between mu_n and mu")
        if mu_n > -1 + eps:
            problems.append(f"mu_n = {mu_n:.12g} > -1 for a graph with edges")
        gap_sq = (lam - delta) ** 2
        if gap_sq > m + tol.slack(m):
            problems.append(f"(lambda - Delta)^2 = {gap_sq:.12g} > m = {m}")
        if 2 * m / (2 * m - gap_sq) > 2 + tol.slack(2):
            problems.append("2m / (2m - (lambda - Delta)^2) exceeds 2")
    return problems


def identity_sweep(n_max: int, tol: Tolerances = DEFAULT_TOLERANCES, n_min: int = 1) -> ExperimentResult:
    violations = []
    counts = {}
    for n in range(n_min, n_max + 1):
        for mask, g in enumerate(enumerate_labeled_graphs(n)):
            violations.extend(_violation(g, mask, p) for p in spectral_identity_problems(g, tol))
        counts[n] = labeled_graph_count(n)
    stats = {"graphs": sum(counts.values()), "graphs_per_order": counts}
    return ExperimentResult("identities", {"n_min": n_min, "n_max": n_max, "eps_spec": tol.eps_spec},
                            violations, stats)
