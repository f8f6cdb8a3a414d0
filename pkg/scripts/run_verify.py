"""Exhaustive verification campaign plus the oracle and identity audits.

    python3 scripts/run_verify.py --nmax 6 --out results/
"""

from __future__ import annotations

import argparse
import logging
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from cliquebounds.experiments import exhaustive_verify, identity_sweep, oracle_sweep


@dataclass(frozen=True)
class VerifyConfig:
    nmax: int = 6
    workers: int = 1
    oracle_full_restarts_max: int = 6
    out: str = "results"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--nmax", type=int, default=VerifyConfig.nmax)
    parser.add_argument("--workers", type=int, default=VerifyConfig.workers)
    parser.add_argument("--oracle-full-restarts-max", type=int, default=VerifyConfig.oracle_full_restarts_max)
    parser.add_argument("--out", default=VerifyConfig.out)
    cfg = VerifyConfig(**vars(parser.parse_args()))
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    logging.info("config %s", asdict(cfg))

    passed = True
    for name, job in [
        ("exhaustive", lambda: exhaustive_verify(cfg.nmax, workers=cfg.workers)),
        ("oracle", lambda: oracle_sweep(cfg.nmax, full_restarts_max=cfg.oracle_full_restarts_max)),
        ("identities", lambda: identity_sweep(cfg.nmax)),
    ]:
        started = time.perf_counter()
        result = job()
        (out / f"{name}_n{cfg.nmax}.json").write_text(result.to_json())
        logging.info("%s: %s in %.1fs (%d violations)", name, "PASS" if result.passed else "FAIL",
                     time.perf_counter() - started, len(result.violations))
        passed &= result.passed
    return 0 if passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
