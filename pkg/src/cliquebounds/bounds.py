"""Spectral bounds on the clique and independence numbers.

Each ``*_bound``/``*_check`` function evaluates one inequality on one graph
and returns a :class:`BoundEvaluation` comparing it with the exact value from
the oracle. Bounds with a known equality structure also return an
:class:`EqualityCertificate` that cross-checks numeric equality against the
structural classification. :func:`full_report` runs everything.

Direction convention: a ``lower`` evaluation claims ``target >= value``, an
``upper`` one claims ``value >= target``; ``margin`` is the signed slack of
that claim.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .graph import (
    Graph,
    MultipartiteCertificate,
    classify_complete_multipartite,
    complement,
    gen_turan,
    triangles_per_vertex,
    turan_part_sizes,
)
from .oracle import max_clique, max_independent_set
from .spectra import GraphSpectra, graph_spectra, symmetric_eigenvalues

THETA_ZERO_THRESHOLD = 1e-10
IDENTITY_TOLERANCE = 1e-9


class BoundId(str, Enum):
    WILF_CLIQUE = "wilf_clique"
    CONCISE_TURAN = "concise_turan"
    EDWARDS_ELPHICK_CLIQUE = "edwards_elphick_clique"
    SPECTRAL_RADIUS_INDEPENDENCE = "spectral_radius_independence"
    SPECTRAL_RADIUS_EQUALITY = "spectral_radius_equality"
    SMALLEST_EIGENVALUE_CLIQUE = "smallest_eigenvalue_clique"
    TRIANGLE_FREE_SMALLEST_EIGENVALUE = "triangle_free_smallest_eigenvalue"
    TRIANGLE_SMALLEST_EIGENVALUE = "triangle_smallest_eigenvalue"
    LAPLACIAN_CLIQUE = "laplacian_clique"
    LAPLACIAN_INDEPENDENCE = "laplacian_independence"
    LAPLACIAN_DEGREE_CLIQUE = "laplacian_degree_clique"
    CLIQUE_POWER_SMALLEST_EIGENVALUE = "clique_power_smallest_eigenvalue"
    LOG_INDEPENDENCE = "log_independence"
    SPECTRAL_TURAN = "spectral_turan"
    WILF_THETA_INDEPENDENCE = "wilf_theta_independence"


class Status(str, Enum):
    APPLICABLE = "applicable"
    VACUOUS = "vacuous"
    NOT_APPLICABLE = "not_applicable"
    ERRORED = "errored"


class Structure(str, Enum):
    COMPLETE_REGULAR_MULTIPARTITE = "complete_regular_multipartite"
    COMPLETE_BIPARTITE = "complete_bipartite"
    UNION_EQUAL_CLIQUES = "union_equal_cliques"
    TURAN_GRAPH = "turan_graph"
    NONE = "none"


@dataclass(frozen=True)
class BoundEvaluation:
    bound_id: BoundId
    status: Status
    value: float | None = None
    target: float | None = None
    direction: str = "lower"
    margin: float | None = None
    equality: bool = False
    strict_expected: bool = False
    reason: str = ""
    details: tuple[tuple[str, float], ...] = ()
    problems: tuple[str, ...] = ()

    @property
    def checked(self) -> bool:
        return self.status in (Status.APPLICABLE, Status.VACUOUS)

    def to_dict(self) -> dict:
        return {
            "bound_id": self.bound_id.value,
            "status": self.status.value,
            "value": _r12(self.value),
            "target": _r12(self.target),
            "direction": self.direction,
            "margin": _r12(self.margin),
            "equality": bool(self.equality),
            "strict_expected": bool(self.strict_expected),
            "reason": self.reason,
            "details": {k: _r12(v) for k, v in self.details},
            "problems": list(self.problems),
        }


@dataclass(frozen=True)
class EqualityCertificate:
    bound_id: BoundId
    structure: Structure
    part_sizes: tuple[int, ...]
    numeric_equality: bool
    consistent: bool

    def to_dict(self) -> dict:
        return {
            "bound_id": self.bound_id.value,
            "structure": self.structure.value,
            "part_sizes": list(self.part_sizes),
            "numeric_equality": bool(self.numeric_equality),
            "consistent": bool(self.consistent),
        }


def _r12(x):
    if x is None:
        return None
    x = float(x)
    if not math.isfinite(x):
        return None
    return float(f"{x:.12g}")


def _not_applicable(bound_id: BoundId, reason: str, direction: str = "lower",
                    strict: bool = False) -> BoundEvaluation:
    return BoundEvaluation(bound_id, Status.NOT_APPLICABLE, direction=direction,
                           strict_expected=strict, reason=reason)


def _evaluate(bound_id: BoundId, value: float, target: float, direction: str, tol: Tolerances,
              strict: bool = False, trivial_at: float | None = None,
              details: dict | None = None, problems: list[str] | None = None) -> BoundEvaluation:
    margin = target - value if direction == "lower" else value - target
    slack = tol.slack(value, target)
    vacuous = trivial_at is not None and value <= trivial_at + slack
    problems = list(problems or [])
    if margin < -slack:
        problems.append(f"bound fails by {-margin:.3e}")
    return BoundEvaluation(
        bound_id,
        Status.VACUOUS if vacuous else Status.APPLICABLE,
        value=float(value),
        target=float(target),
        direction=direction,
        margin=float(margin),
        equality=bool(not vacuous and abs(margin) <= slack),
        strict_expected=bool(strict),
        details=tuple((details or {}).items()),
        problems=tuple(problems),
    )


def _certificate(bound_id: BoundId, evaluation: BoundEvaluation, structure: Structure,
                 sizes: tuple[int, ...] = ()) -> EqualityCertificate:
    numeric = evaluation.equality
    return EqualityCertificate(bound_id, structure, sizes, numeric,
                               consistent=numeric == (structure is not Structure.NONE))


def _classification_sizes(cert) -> tuple[int, ...]:
    return tuple(sorted(len(p) for p in cert.parts))


# --- bounds ----------------------------------------------------------------------------


def wilf_clique_bound(g: Graph, spectra: GraphSpectra, omega: int,
                      tol: Tolerances = DEFAULT_TOLERANCES) -> BoundEvaluation:
    """omega >= n / (n - mu), a rearrangement of mu <= (1 - 1/omega) n."""
    mu = spectra.mu if g.m else 0.0
    return _evaluate(BoundId.WILF_CLIQUE, g.n / (g.n - mu), omega, "lower", tol, trivial_at=1.0)


def concise_turan_check(g: Graph, omega: int, tol: Tolerances = DEFAULT_TOLERANCES) -> BoundEvaluation:
    """m <= (omega - 1) n^2 / (2 omega)."""
    value = (omega - 1) / (2 * omega) * g.n ** 2
    return _evaluate(BoundId.CONCISE_TURAN, value, g.m, "upper", tol)


def edwards_elphick_clique_bound(g: Graph, spectra: GraphSpectra, omega: int,
                                 tol: Tolerances = DEFAULT_TOLERANCES) -> BoundEvaluation:
    """omega >= 2m / (2m - mu^2)."""
    if g.m == 0:
        return _not_applicable(BoundId.EDWARDS_ELPHICK_CLIQUE, "no edges")
    two_m = 2 * g.m
    denominator = two_m - spectra.mu ** 2
    if denominator <= 0:
        return BoundEvaluation(BoundId.EDWARDS_ELPHICK_CLIQUE, Status.ERRORED,
                               reason="2m - mu^2 is not positive",
                               problems=(f"2m - mu^2 = {denominator:.3e} <= 0",))
    return _evaluate(BoundId.EDWARDS_ELPHICK_CLIQUE, two_m / denominator, omega, "lower", tol,
                     trivial_at=1.0)


def _union_of_equal_cliques(g: Graph) -> tuple[Structure, tuple[int, ...]]:
    cert = classify_complete_multipartite(complement(g))
    if isinstance(cert, MultipartiteCertificate) and cert.regular:
        return Structure.UNION_EQUAL_CLIQUES, _classification_sizes(cert)
    return Structure.NONE, ()


def mu_independence_bound(g: Graph, spectra: GraphSpectra, alpha: int,
                          tol: Tolerances = DEFAULT_TOLERANCES,
                          ) -> tuple[BoundEvaluation, EqualityCertificate | None]:
    """alpha >= (n(n-1) - 2m) / (n(n-1) - 2m - (n - 1 - mu)^2).

    Equality exactly for disjoint unions of at least two equal cliques.
    """
    bid = BoundId.SPECTRAL_RADIUS_INDEPENDENCE
    n = g.n
    if g.is_complete():
        return _not_applicable(bid, "complement has no edges"), None
    mu = spectra.mu if g.m else 0.0
    numerator = n * (n - 1) - 2 * g.m
    denominator = numerator - (n - 1 - mu) ** 2
    if denominator <= tol.eps_eq * numerator:
        return BoundEvaluation(bid, Status.VACUOUS, target=alpha,
                               reason="denominator is not positive",
                               details=(("denominator", denominator),)), None
    evaluation = _evaluate(bid, numerator / denominator, alpha, "lower", tol, trivial_at=1.0)
    return evaluation, _certificate(bid, evaluation, *_union_of_equal_cliques(g))


def spectral_radius_equality_certificate(g: Graph, spectra: GraphSpectra, omega: int,
                                         tol: Tolerances = DEFAULT_TOLERANCES,
                                         ) -> tuple[BoundEvaluation, EqualityCertificate | None]:
    """mu^2 <= 2 (1 - 1/omega) m, with its equality characterisation.

    Without isolated vertices equality holds iff omega = 2 and G is complete
    bipartite, or omega >= 3 and G is complete regular omega-partite.
    """
    bid = BoundId.SPECTRAL_RADIUS_EQUALITY
    if g.has_isolated_vertices():
        return _not_applicable(bid, "graph has isolated vertices", "upper"), None
    value = 2 * (omega - 1) / omega * g.m
    evaluation = _evaluate(bid, value, spectra.mu ** 2, "upper", tol)
    cert = classify_complete_multipartite(g)
    structure = Structure.NONE
    sizes: tuple[int, ...] = ()
    if isinstance(cert, MultipartiteCertificate):
        if omega == 2 and len(cert.parts) == 2:
            structure, sizes = Structure.COMPLETE_BIPARTITE, _classification_sizes(cert)
        elif omega >= 3 and cert.regular:
            structure, sizes = Structure.COMPLETE_REGULAR_MULTIPARTITE, _classification_sizes(cert)
    return evaluation, _certificate(bid, evaluation, structure, sizes)


def _complete_regular_multipartite(g: Graph) -> tuple[Structure, tuple[int, ...]]:
    cert = classify_complete_multipartite(g)
    if isinstance(cert, MultipartiteCertificate) and cert.regular:
        return Structure.COMPLETE_REGULAR_MULTIPARTITE, _classification_sizes(cert)
    return Structure.NONE, ()


def smallest_eigenvalue_clique_bound(g: Graph, spectra: GraphSpectra, omega: int,
                                     tol: Tolerances = DEFAULT_TOLERANCES,
                                     ) -> tuple[BoundEvaluation, EqualityCertificate | None]:
    """omega >= 1 + dn / ((n - d)(d - mu_n)); equality iff complete regular multipartite."""
    bid = BoundId.SMALLEST_EIGENVALUE_CLIQUE
    if g.n < 2:
        return _not_applicable(bid, "fewer than two vertices"), None
    n, d = g.n, g.average_degree
    if g.m == 0:
        value = 1.0
    else:
        value = 1 + d * n / ((n - d) * (d - spectra.mu_min))
    evaluation = _evaluate(bid, value, omega, "lower", tol, trivial_at=1.0)
    return evaluation, _certificate(bid, evaluation, *_complete_regular_multipartite(g))


def triangle_free_smallest_eigenvalue_check(g: Graph, spectra: GraphSpectra,
                                            tol: Tolerances = DEFAULT_TOLERANCES,
                                            triangles: list[int] | None = None) -> BoundEvaluation:
    """mu_n <= -d^2 / (n - d) for triangle-free graphs with at least one edge."""
    bid = BoundId.TRIANGLE_FREE_SMALLEST_EIGENVALUE
    if g.m == 0:
        return _not_applicable(bid, "no edges", "upper")
    if triangles is None:
        triangles = triangles_per_vertex(g)
    if any(triangles):
        return _not_applicable(bid, "graph has triangles", "upper")
    d = g.average_degree
    return _evaluate(bid, -d * d / (g.n - d), spectra.mu_min, "upper", tol)


def triangle_smallest_eigenvalue_bound(g: Graph, spectra: GraphSpectra,
                                       tol: Tolerances = DEFAULT_TOLERANCES,
                                       triangles: list[int] | None = None) -> BoundEvaluation:
    """mu_n <= 2n/(n^2 - 2m) * sum t(u)/d(u) - 4m^2 / (n (n^2 - 2m)) without isolated vertices."""
    bid = BoundId.TRIANGLE_SMALLEST_EIGENVALUE
    if g.has_isolated_vertices():
        return _not_applicable(bid, "graph has isolated vertices", "upper")
    if triangles is None:
        triangles = triangles_per_vertex(g)
    n, m = g.n, g.m
    ratio_sum = sum(t / deg for t, deg in zip(triangles, g.degrees))
    gap = n * n - 2 * m
    value = 2 * n / gap * ratio_sum - 4 * m * m / (n * gap)
    return _evaluate(bid, value, spectra.mu_min, "upper", tol)


def laplacian_clique_bound(g: Graph, spectra: GraphSpectra, omega: int,
                           tol: Tolerances = DEFAULT_TOLERANCES,
                           ) -> tuple[BoundEvaluation, EqualityCertificate | None]:
    """omega >= 1 + dn / (lambda (n - d)); equality iff complete regular multipartite."""
    bid = BoundId.LAPLACIAN_CLIQUE
    if g.m == 0:
        return _not_applicable(bid, "no edges (largest Laplacian eigenvalue is 0)"), None
    n, d = g.n, g.average_degree
    value = 1 + d * n / (spectra.lam * (n - d))
    evaluation = _evaluate(bid, value, omega, "lower", tol, trivial_at=1.0)
    return evaluation, _certificate(bid, evaluation, *_complete_regular_multipartite(g))


def laplacian_independence_bound(g: Graph, spectra: GraphSpectra, alpha: int,
                                 tol: Tolerances = DEFAULT_TOLERANCES,
                                 ) -> tuple[BoundEvaluation, EqualityCertificate | None]:
    """alpha >= 1 + (n - 1 - d) n / ((n - lambda_2)(1 + d)); equality iff union of equal cliques."""
    bid = BoundId.LAPLACIAN_INDEPENDENCE
    if g.is_complete():
        return _not_applicable(bid, "complete graph (0/0)"), None
    n, d = g.n, g.average_degree
    value = 1 + (n - 1 - d) * n / ((n - spectra.lam2) * (1 + d))
    evaluation = _evaluate(bid, value, alpha, "lower", tol, trivial_at=1.0)
    return evaluation, _certificate(bid, evaluation, *_union_of_equal_cliques(g))


def laplacian_degree_clique_bound(g: Graph, spectra: GraphSpectra, omega: int | None = None,
                                  tol: Tolerances = DEFAULT_TOLERANCES) -> BoundEvaluation:
    """omega >= 2m / (2m - (lambda - Delta)^2), together with its vacuity.

    The value never exceeds 2 because (lambda - Delta)^2 <= mu_n^2 <= m; both
    facts are audited and reported as problems if they fail.
    """
    bid = BoundId.LAPLACIAN_DEGREE_CLIQUE
    if g.m == 0:
        return _not_applicable(bid, "no edges")
    if omega is None:
        omega = max_clique(g).size
    m = g.m
    gap_sq = (spectra.lam - g.max_degree) ** 2
    value = 2 * m / (2 * m - gap_sq)
    problems = []
    if gap_sq > m + tol.slack(m):
        problems.append(f"(lambda - Delta)^2 = {gap_sq:.12g} exceeds m = {m}")
    if value > 2 + tol.slack(2):
        problems.append(f"ratio {value:.12g} exceeds 2")
    if spectra.lam + spectra.mu_min > g.max_degree + tol.eps_spec:
        problems.append("lambda + mu_n exceeds Delta")
    return _evaluate(bid, value, omega, "lower", tol, trivial_at=1.0,
                     details={"gap_squared": gap_sq, "m": float(m), "vacuity_limit": 2.0},
                     problems=problems)


def clique_power_smallest_eigenvalue_check(g: Graph, spectra: GraphSpectra, omega: int,
                                           tol: Tolerances = DEFAULT_TOLERANCES) -> BoundEvaluation:
    """mu_n < -(2/omega) (2m/n^2)^omega n (strict)."""
    bid = BoundId.CLIQUE_POWER_SMALLEST_EIGENVALUE
    if g.m == 0:
        return _not_applicable(bid, "no edges", "upper", strict=True)
    n = g.n
    value = -(2 / omega) * (2 * g.m / n ** 2) ** omega * n
    return _strict(_evaluate(bid, value, spectra.mu_min, "upper", tol, strict=True), tol)


def _strict(evaluation: BoundEvaluation, tol: Tolerances, allowed_equality: bool = False) -> BoundEvaluation:
    # floating point cannot certify strictness; a boundary hit is a problem
    # unless the structure says equality is legitimate
    if evaluation.checked and not allowed_equality and \
            abs(evaluation.margin) <= tol.slack(evaluation.value, evaluation.target):
        return replace(evaluation, problems=evaluation.problems + ("strict inequality attained",))
    return evaluation


def log_independence_bound(g: Graph, spectra: GraphSpectra, alpha: int,
                           tol: Tolerances = DEFAULT_TOLERANCES) -> BoundEvaluation:
    """alpha > (n/(d+1) - 1)(ln((d+1)/tau) - ln ln(d+1)) for d >= 2, tau = |mu_n(complement)|."""
    bid = BoundId.LOG_INDEPENDENCE
    if 2 * g.m < 2 * g.n:
        return _not_applicable(bid, "average degree below 2", strict=True)
    if g.is_complete():
        return _not_applicable(bid, "complement has no edges (tau = 0)", strict=True)
    n, d, tau = g.n, g.average_degree, spectra.tau
    value = (n / (d + 1) - 1) * (math.log((d + 1) / tau) - math.log(math.log(d + 1)))
    evaluation = _evaluate(bid, value, alpha, "lower", tol, strict=True, trivial_at=1.0,
                           details={"tau": tau, "positive_expected": float((d + 1) / tau > math.log(d + 1))})
    return _strict(evaluation, tol)


@lru_cache(maxsize=None)
def turan_spectral_radius(n: int, r: int) -> float:
    return float(symmetric_eigenvalues(gen_turan(n, r).adjacency_matrix())[-1])


def _is_turan_graph(g: Graph, r: int) -> bool:
    if g.m == 0:
        return r == 1
    cert = classify_complete_multipartite(g)
    if not isinstance(cert, MultipartiteCertificate) or len(cert.parts) != r:
        return False
    sizes = [len(p) for p in cert.parts]
    return max(sizes) - min(sizes) <= 1


def turan_spectral_dominance(g: Graph, omega: int, spectra: GraphSpectra | None = None,
                             tol: Tolerances = DEFAULT_TOLERANCES,
                             ) -> tuple[BoundEvaluation, EqualityCertificate]:
    """mu(G) <= mu(T_omega(n)), strict unless G is the Turán graph itself."""
    bid = BoundId.SPECTRAL_TURAN
    mu = (spectra.mu if spectra is not None else
          float(symmetric_eigenvalues(g.adjacency_matrix())[-1])) if g.m else 0.0
    value = turan_spectral_radius(g.n, omega) if omega > 1 else 0.0
    is_turan = _is_turan_graph(g, omega)
    evaluation = _strict(_evaluate(bid, value, mu, "upper", tol, strict=True), tol, allowed_equality=is_turan)
    structure = Structure.TURAN_GRAPH if is_turan else Structure.NONE
    sizes = tuple(sorted(turan_part_sizes(g.n, omega))) if is_turan else ()
    return evaluation, _certificate(bid, evaluation, structure, sizes)


def _theta(u: np.ndarray, sign: int) -> float:
    entries = u[u > THETA_ZERO_THRESHOLD] if sign > 0 else -u[u < -THETA_ZERO_THRESHOLD]
    return 1.0 / entries.max() if entries.size else math.inf


def wilf_theta_bound(g: Graph, spectra: GraphSpectra, alpha: int,
                     tol: Tolerances = DEFAULT_TOLERANCES,
                     vector: np.ndarray | None = None) -> BoundEvaluation:
    """alpha >= n^2 / (n(d+1) + (mu_n + 1) max(theta_+^2, theta_-^2)) for regular graphs.

    ``vector`` defaults to the computed unit eigenvector of mu_n; both it and
    its negation are tried and the larger value kept.
    """
    bid = BoundId.WILF_THETA_INDEPENDENCE
    if g.m == 0:
        return _not_applicable(bid, "no edges")
    if not g.is_regular():
        return _not_applicable(bid, "graph is not regular")
    u = spectra.smallest_vector if vector is None else np.asarray(vector, dtype=float)
    n, d, mu_n = g.n, g.average_degree, spectra.mu_min
    best = -math.inf
    best_thetas = (math.nan, math.nan)
    for w in (u, -u):
        plus, minus = _theta(w, 1), _theta(w, -1)
        value = n * n / (n * (d + 1) + (mu_n + 1) * max(plus ** 2, minus ** 2))
        if value > best:
            best, best_thetas = value, (plus, minus)
    return _evaluate(bid, best, alpha, "lower", tol, trivial_at=1.0,
                     details={"theta_plus": best_thetas[0], "theta_minus": best_thetas[1]})


# --- exact regular-graph identity ------------------------------------------------------


@dataclass(frozen=True)
class RegularIdentityReport:
    status: Status
    alpha: int
    reason: str = ""
    quadratic_residual: float | None = None
    scaling_residual: float | None = None
    min_term: float | None = None
    formula_value: float | None = None
    eigenvector_term: float | None = None
    problems: tuple[str, ...] = ()

    @property
    def holds(self) -> bool:
        return not self.problems

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "alpha": self.alpha,
            "reason": self.reason,
            "quadratic_residual": _r12(self.quadratic_residual),
            "scaling_residual": _r12(self.scaling_residual),
            "min_term": _r12(self.min_term),
            "formula_value": _r12(self.formula_value),
            "eigenvector_term": _r12(self.eigenvector_term),
            "problems": list(self.problems),
        }


class WitnessError(ValueError):
    pass


def regular_alpha_identity_check(g: Graph, alpha_witness, spectra: GraphSpectra | None = None,
                                 alpha: int | None = None) -> RegularIdentityReport:
    """Check the exact formula for alpha of a regular graph at an optimal witness.

    The witness W gives x = uniform on W in the simplex, u = x - (1/n, ..., 1/n)
    with min u = -1/n, and v = u/|u| on the unit sphere of zero-sum vectors.
    Verified: ``<Au,u> + <u,u> = 1/alpha - (d+1)/n``, the rescaling
    ``n^2 (<Au,u> + <u,u>) = (<v,Av> + 1) theta_-(v)^2``, and that
    ``n^2 / (n(d+1) + (<v,Av> + 1) theta_-(v)^2)`` rounds to alpha.
    """
    witness = sorted(set(alpha_witness))
    if not g.is_independent(witness):
        raise WitnessError("witness is not an independent set")
    if alpha is None:
        alpha = max_independent_set(g).size
    if len(witness) != alpha:
        raise WitnessError(f"witness has size {len(witness)}, maximum is {alpha}")
    if not g.is_regular():
        return RegularIdentityReport(Status.NOT_APPLICABLE, alpha, "graph is not regular")
    n = g.n
    if alpha == n:
        return RegularIdentityReport(Status.NOT_APPLICABLE, alpha, "edgeless graph: witness is all of V")
    d = g.degrees[0]
    a = g.adjacency_matrix()
    x = np.zeros(n)
    x[witness] = 1.0 / alpha
    u = x - 1.0 / n
    problems = []
    if abs(u.sum()) > 1e-12 or abs(u.min() + 1.0 / n) > 1e-15:
        problems.append("u is not a zero-sum vector with minimum -1/n")
    v = u / np.linalg.norm(u)
    if abs(v.sum()) > 1e-12 or abs(np.linalg.norm(v) - 1.0) > 1e-12:
        problems.append("v is not a unit zero-sum vector")
    quad = float(u @ a @ u + u @ u)
    quadratic_residual = quad - (1.0 / alpha - (d + 1) / n)
    if abs(quadratic_residual) > IDENTITY_TOLERANCE:
        problems.append(f"quadratic identity residual {quadratic_residual:.3e}")
    min_term = (float(v @ a @ v) + 1.0) * _theta(v, -1) ** 2
    scaling_residual = n * n * quad - min_term
    if abs(scaling_residual) > IDENTITY_TOLERANCE:
        problems.append(f"scaling residual {scaling_residual:.3e}")
    formula = n * n / (n * (d + 1) + min_term)
    if round(formula) != alpha:
        problems.append(f"formula gives {formula:.12g}, alpha = {alpha}")
    eigen_term = None
    if spectra is not None and spectra.smallest_vector is not None:
        w = spectra.smallest_vector
        eigen_term = min((spectra.mu_min + 1) * _theta(s * w, -1) ** 2 for s in (1, -1))
        # the eigenvector is a feasible point of the same minimisation
        if eigen_term < min_term - IDENTITY_TOLERANCE * max(1.0, abs(min_term)):
            problems.append("eigenvector beats the witness minimum")
    return RegularIdentityReport(Status.APPLICABLE, alpha, "", quadratic_residual, scaling_residual,
                                 min_term, formula, eigen_term, tuple(problems))


# --- full report ---------------------------------------------------------------------------


@dataclass
class BoundReport:
    graph: Graph
    summary: dict
    evaluations: list[BoundEvaluation]
    certificates: list[EqualityCertificate]
    regular_identity: RegularIdentityReport | None = None
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def evaluation(self, bound_id: BoundId | str) -> BoundEvaluation:
        bound_id = BoundId(bound_id)
        return next(e for e in self.evaluations if e.bound_id is bound_id)

    def certificate(self, bound_id: BoundId | str) -> EqualityCertificate | None:
        bound_id = BoundId(bound_id)
        return next((c for c in self.certificates if c.bound_id is bound_id), None)

    def equality_ids(self) -> set[BoundId]:
        return {e.bound_id for e in self.evaluations if e.equality}

    def to_dict(self) -> dict:
        return {
            "graph": {k: _r12(v) if isinstance(v, float) else v for k, v in self.summary.items()},
            "passed": self.passed,
            "evaluations": [e.to_dict() for e in self.evaluations],
            "certificates": [c.to_dict() for c in self.certificates],
            "regular_identity": self.regular_identity.to_dict() if self.regular_identity else None,
            "violations": list(self.violations),
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def full_report(g: Graph, tol: Tolerances = DEFAULT_TOLERANCES) -> BoundReport:
    """Evaluate every bound on ``g`` against exact omega and alpha.

    A bound that raises is recorded as errored; the rest of the report is
    still produced.
    """
    spectra = graph_spectra(g)
    clique = max_clique(g)
    independent = max_independent_set(g)
    omega, alpha = clique.size, independent.size
    triangles = triangles_per_vertex(g)
    summary = {
        "n": g.n, "m": g.m, "d": g.average_degree, "max_degree": g.max_degree,
        "omega": omega, "alpha": alpha,
        "mu_1": spectra.mu, "mu_n": spectra.mu_min,
        "lambda_2": spectra.lam2, "lambda_n": spectra.lam, "tau": spectra.tau,
    }
    ops = [
        (BoundId.WILF_CLIQUE, lambda: wilf_clique_bound(g, spectra, omega, tol)),
        (BoundId.CONCISE_TURAN, lambda: concise_turan_check(g, omega, tol)),
        (BoundId.EDWARDS_ELPHICK_CLIQUE, lambda: edwards_elphick_clique_bound(g, spectra, omega, tol)),
        (BoundId.SPECTRAL_RADIUS_INDEPENDENCE, lambda: mu_independence_bound(g, spectra, alpha, tol)),
        (BoundId.SPECTRAL_RADIUS_EQUALITY, lambda: spectral_radius_equality_certificate(g, spectra, omega, tol)),
        (BoundId.SMALLEST_EIGENVALUE_CLIQUE, lambda: smallest_eigenvalue_clique_bound(g, spectra, omega, tol)),
        (BoundId.TRIANGLE_FREE_SMALLEST_EIGENVALUE,
         lambda: triangle_free_smallest_eigenvalue_check(g, spectra, tol, triangles)),
        (BoundId.TRIANGLE_SMALLEST_EIGENVALUE,
         lambda: triangle_smallest_eigenvalue_bound(g, spectra, tol, triangles)),
        (BoundId.LAPLACIAN_CLIQUE, lambda: laplacian_clique_bound(g, spectra, omega, tol)),
        (BoundId.LAPLACIAN_INDEPENDENCE, lambda: laplacian_independence_bound(g, spectra, alpha, tol)),
        (BoundId.LAPLACIAN_DEGREE_CLIQUE, lambda: laplacian_degree_clique_bound(g, spectra, omega, tol)),
        (BoundId.CLIQUE_POWER_SMALLEST_EIGENVALUE,
         lambda: clique_power_smallest_eigenvalue_check(g, spectra, omega, tol)),
        (BoundId.LOG_INDEPENDENCE, lambda: log_independence_bound(g, spectra, alpha, tol)),
        (BoundId.SPECTRAL_TURAN, lambda: turan_spectral_dominance(g, omega, spectra, tol)),
        (BoundId.WILF_THETA_INDEPENDENCE, lambda: wilf_theta_bound(g, spectra, alpha, tol)),
    ]
    evaluations = []
    certificates = []
    violations = []
    for bid, op in ops:
        try:
            result = op()
        except Exception as exc:  # isolate one failing bound from the rest
            result = BoundEvaluation(bid, Status.ERRORED, reason=f"{type(exc).__name__}: {exc}")
        evaluation, cert = result if isinstance(result, tuple) else (result, None)
        evaluations.append(evaluation)
        if cert is not None:
            certificates.append(cert)
            if not cert.consistent:
                violations.append(f"{bid.value}: numeric equality {cert.numeric_equality} "
                                  f"disagrees with structure {cert.structure.value}")
        if evaluation.status is Status.ERRORED:
            violations.append(f"{bid.value}: errored ({evaluation.reason})")
        violations.extend(f"{bid.value}: {p}" for p in evaluation.problems)

    identity = None
    if g.is_regular() and g.m:
        try:
            identity = regular_alpha_identity_check(g, independent.witness, spectra, alpha)
        except Exception as exc:
            violations.append(f"regular_identity: errored ({type(exc).__name__}: {exc})")
        else:
            violations.extend(f"regular_identity: {p}" for p in identity.problems)
    return BoundReport(g, summary, evaluations, certificates, identity, violations)

