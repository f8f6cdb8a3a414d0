"""Search for graphs with more edges but smaller spectral radius than the Turán graph.

Exhaustive for n <= 7, sampled beyond that. Findings for r = 2 are failures;
for r >= 3 they are reported as data.

    python3 scripts/run_conjecture.py --r 2 3 --n 4 5 6 7
    python3 scripts/run_conjecture.py --r 3 --n 10 --sample 20000 --seed 7
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from pathlib import Path

from cliquebounds.experiments import conjecture_search
from cliquebounds.graph import MAX_ENUMERATION_ORDER


@dataclass(frozen=True)
class ConjectureConfig:
    r: list[int] = field(default_factory=lambda: [2, 3])
    n: list[int] = field(default_factory=lambda: [4, 5, 6, 7])
    sample: int | None = None
    seed: int = 0
    out: str = "results"


def main() -> int:
    defaults = ConjectureConfig()
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--r", type=int, nargs="+", default=defaults.r)
    parser.add_argument("--n", type=int, nargs="+", default=defaults.n)
    parser.add_argument("--sample", type=int, default=defaults.sample, help="graphs per (r, n) when sampling")
    parser.add_argument("--seed", type=int, default=defaults.seed)
    parser.add_argument("--out", default=defaults.out)
    cfg = ConjectureConfig(**vars(parser.parse_args()))
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)

    passed = True
    for r in cfg.r:
        for n in cfg.n:
            if not r < n:
                continue
            if cfg.sample is None and n <= MAX_ENUMERATION_ORDER:
                result = conjecture_search(r, n)
            else:
                result = conjecture_search(r, n, "sample", cfg.sample or 10_000, cfg.seed)
            (out / f"conjecture_r{r}_n{n}.json").write_text(result.to_json())
            s = result.stats
            print(f"r={r} n={n} {result.descriptor['mode']:>10}: examined {s['examined']:>8}, "
                  f"{s['counterexamples']} counterexamples")
            passed &= result.passed
    return 0 if passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
