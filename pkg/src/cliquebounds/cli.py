"""Command-line entry point.

Exit codes: 0 when everything checked holds, 1 when a bound is violated or a
counterexample is found where one is ruled out, 2 on usage or I/O errors.
Results go to standard output; logs go to standard error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass

from .bounds import _r12, full_report
from .config import Tolerances
from .experiments import ExperimentResult, conjecture_search, exhaustive_verify, tightness_regular
from .graph import (
    GraphError,
    gen_complete_multipartite,
    gen_gnp,
    gen_random_regular,
    gen_turan,
    gen_union_of_cliques,
    parse_edge_list,
    write_edge_list,
)
from .spectra import adjacency_spectrum, laplacian_spectrum

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("cliquebounds")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    command: str
    output_format: str = "text"
    seed: int = 0
    tolerances: Tolerances = Tolerances()
    workers: int = 1

    def __post_init__(self):
        if self.workers < 1:
            raise UsageError("--workers must be >= 1")


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _part_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--eps-eq", type=_positive_float, default=Tolerances.eps_eq,
                        help="relative slack for validity/equality (default %(default)g)")
    common.add_argument("--eps-spec", type=_positive_float, default=Tolerances.eps_spec,
                        help="absolute eigenvalue tolerance (default %(default)g)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="cliquebounds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="evaluate every bound on a graph file")
    p.add_argument("file", help="edge-list file, or - for standard input")
    p = sub.add_parser("spectrum", parents=[common], help="adjacency and Laplacian spectra")
    p.add_argument("file")
    p = sub.add_parser("verify", parents=[common], help="exhaustive verification up to n vertices")
    p.add_argument("--nmax", type=int, required=True)
    p = sub.add_parser("tightness", parents=[common], help="log-independence bound on random regular graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p = sub.add_parser("conjecture", parents=[common], help="search for graphs beating the Turán spectral radius")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sample", type=int, metavar="COUNT", help="sample COUNT random graphs instead")
    p.add_argument("--seed", type=int, default=0)

    gen = sub.add_parser("generate", help="write a generated graph in edge-list format")
    families = gen.add_subparsers(dest="family", required=True)
    f = families.add_parser("turan")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--r", type=int, required=True)
    f = families.add_parser("multipartite")
    f.add_argument("--parts", type=_part_list, required=True, help="e.g. 2,2,2")
    f = families.add_parser("cliques")
    f.add_argument("--count", type=int, required=True)
    f.add_argument("--size", type=int, required=True)
    f = families.add_parser("regular")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--d", type=int, required=True)
    f.add_argument("--seed", type=int, default=0)
    f = families.add_parser("gnp")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--p", type=float, required=True)
    f.add_argument("--seed", type=int, default=0)
    return parser


def _read_graph(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    return parse_edge_list(text)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _experiment_text(result: ExperimentResult) -> str:
    lines = [f"{result.kind}: {'PASS' if result.passed else 'FAIL'}"]
    for key, value in result.descriptor.items():
        lines.append(f"  {key}: {value}")
    for key, value in result.to_dict()["stats"].items():
        if not isinstance(value, dict):
            lines.append(f"  {key}: {value}")
    lines.extend(f"  violation: {v['problem']}" for v in result.violations[:20])
    if len(result.violations) > 20:
        lines.append(f"  ... {len(result.violations) - 20} more")
    return "\n".join(lines)


def _emit_experiment(result: ExperimentResult, fmt: str, text: str | None = None) -> None:
    if fmt == "json":
        _emit(result.to_json())
    elif fmt == "csv":
        _emit(result.to_csv())
    else:
        _emit(text if text is not None else _experiment_text(result))


def _cmd_bounds(args, cfg: CliConfig) -> int:
    report = full_report(_read_graph(args.file), cfg.tolerances)
    if cfg.output_format == "json":
        _emit(report.to_json())
    elif cfg.output_format == "csv":
        buf = io.StringIO()
        columns = ["bound_id", "status", "value", "target", "direction", "margin", "equality",
                   "strict_expected", "reason"]
        writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for e in report.evaluations:
            writer.writerow(e.to_dict())
        _emit(buf.getvalue())
    else:
        s = report.to_dict()["graph"]
        lines = [" ".join(f"{k}={v}" for k, v in s.items())]
        for e in report.evaluations:
            d = e.to_dict()
            flag = " [equality]" if e.equality else ""
            if e.checked:
                lines.append(f"{d['bound_id']:34s} {d['status']:10s} value={d['value']} "
                             f"target={d['target']} margin={d['margin']}{flag}")
            else:
                lines.append(f"{d['bound_id']:34s} {d['status']:10s} ({e.reason})")
        lines.append("violations: " + ("none" if report.passed else "; ".join(report.violations)))
        _emit("\n".join(lines))
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _cmd_spectrum(args, cfg: CliConfig) -> int:
    g = _read_graph(args.file)
    adj = [_r12(x) for x in adjacency_spectrum(g).values]
    lap = [_r12(x) for x in laplacian_spectrum(g).values]
    if cfg.output_format == "json":
        _emit(json.dumps({"adjacency": adj, "laplacian": lap}))
    elif cfg.output_format == "csv":
        rows = ["index,adjacency,laplacian"] + [f"{i},{a},{b}" for i, (a, b) in enumerate(zip(adj, lap))]
        _emit("\n".join(rows))
    else:
        _emit(f"adjacency {json.dumps(adj)}\nlaplacian {json.dumps(lap)}")
    return EXIT_OK


def _cmd_verify(args, cfg: CliConfig) -> int:
    if not 1 <= args.nmax <= 7:
        raise UsageError("--nmax must be between 1 and 7")
    result = exhaustive_verify(args.nmax, workers=cfg.workers, tol=cfg.tolerances)
    _emit_experiment(result, cfg.output_format)
    return EXIT_OK if result.passed else EXIT_VIOLATION


def _cmd_tightness(args, cfg: CliConfig) -> int:
    try:
        result = tightness_regular(args.n, args.d, args.trials, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit_experiment(result, cfg.output_format)
    return EXIT_OK if result.passed else EXIT_VIOLATION


def _cmd_conjecture(args, cfg: CliConfig) -> int:
    try:
        if args.sample is not None:
            result = conjecture_search(args.r, args.n, "sample", args.sample, args.seed, cfg.tolerances)
        else:
            result = conjecture_search(args.r, args.n, tol=cfg.tolerances)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    found = result.stats["counterexamples"]
    text = f"{found} counterexamples (r={args.r}, n={args.n}, examined {result.stats['examined']} graphs)"
    _emit_experiment(result, cfg.output_format, text)
    return EXIT_OK if result.passed else EXIT_VIOLATION


def _cmd_generate(args) -> int:
    if args.family == "turan":
        g = gen_turan(args.n, args.r)
    elif args.family == "multipartite":
        g = gen_complete_multipartite(args.parts)
    elif args.family == "cliques":
        g = gen_union_of_cliques(args.count, args.size)
    elif args.family == "regular":
        g = gen_random_regular(args.n, args.d, args.seed)
    else:
        g = gen_gnp(args.n, args.p, args.seed)
    sys.stdout.write(write_edge_list(g))
    return EXIT_OK


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(stream=sys.stderr, level=logging.INFO if getattr(args, "verbose", False)
                        else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "generate":
            return _cmd_generate(args)
        cfg = CliConfig(args.command, args.output_format, getattr(args, "seed", 0),
                        Tolerances(eps_spec=args.eps_spec, eps_eq=args.eps_eq), args.workers)
        handler = {"bounds": _cmd_bounds, "spectrum": _cmd_spectrum, "verify": _cmd_verify,
                   "tightness": _cmd_tightness, "conjecture": _cmd_conjecture}[args.command]
        return handler(args, cfg)
    except (UsageError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
