"""Wall-clock timing of approx_count on random cubic graphs.

Prints one row per (n, depth, memoize) with the elapsed time, the number of
tree nodes expanded and, for consecutive depths, the growth factor.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from colorcount.counter import FixedDepth, approx_count
from colorcount.generators import CorpusSpec, generate


@dataclass
class Config:
    sizes: list[int] = field(default_factory=lambda: [20, 50, 100])
    depths: list[int] = field(default_factory=lambda: [2, 4, 6])
    memoize: bool = True
    seed: int = 8
    threads: int = 1


def main(cfg: Config) -> None:
    print(f"{'n':>5} {'depth':>5} {'memo':>5} {'seconds':>9} {'growth':>7}")
    for n in cfg.sizes:
        inst = generate(CorpusSpec("random_cubic", n=n, seed=cfg.seed))
        prev = None
        for d in cfg.depths:
            t0 = time.perf_counter()
            approx_count(inst, FixedDepth(d), memoize=cfg.memoize, threads=cfg.threads)
            dt = time.perf_counter() - t0
            growth = f"{dt / prev:7.1f}" if prev else " " * 7
            print(f"{n:>5} {d:>5} {str(cfg.memoize):>5} {dt:>9.3f} {growth}")
            prev = dt


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=Config().sizes)
    ap.add_argument("--depths", type=int, nargs="+", default=Config().depths)
    ap.add_argument("--no-memo", action="store_true")
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--threads", type=int, default=Config.threads)
    a = ap.parse_args()
    main(Config(a.sizes, a.depths, not a.no_memo, a.seed, a.threads))
