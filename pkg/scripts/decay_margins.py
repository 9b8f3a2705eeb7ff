"""Grid maxima of every contraction-rate check at several resolutions.

Shows how far each check sits below its threshold and whether the maximum
moves as the grid is refined.
"""

from __future__ import annotations

import argparse
import os
from dataclasses import dataclass, field

from colorcount.decay import CHECKS, run_check


@dataclass
class Config:
    resolutions: list[float] = field(default_factory=lambda: [0.02, 0.01, 0.005])
    threads: int = os.cpu_count() or 1


def main(cfg: Config) -> None:
    head = "".join(f"{'h=' + str(h):>12}" for h in cfg.resolutions)
    print(f"{'check':28s}{'threshold':>11}{head}")
    for name in CHECKS:
        rows = [run_check(name, h, threads=cfg.threads) for h in cfg.resolutions]
        vals = "".join(f"{r.max_found:>12.6f}" for r in rows)
        print(f"{name:28s}{float(rows[0].threshold):>11.6f}{vals}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--resolutions", type=float, nargs="+", default=Config().resolutions)
    ap.add_argument("--threads", type=int, default=Config().threads)
    a = ap.parse_args()
    main(Config(a.resolutions, a.threads))
