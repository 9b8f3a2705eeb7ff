"""Relative counting error against the exact oracle as a function of depth.

Draws random subcubic instances with random valid lists, counts each with the
float backend at several fixed depths and reports the worst and mean relative
error per depth.
"""

from __future__ import annotations

import argparse
import statistics
from dataclasses import dataclass, field

from colorcount.counter import FixedDepth, approx_count
from colorcount.exact import count_colorings
from colorcount.generators import CorpusSpec, generate


@dataclass
class Config:
    instances: int = 40
    n_min: int = 6
    n_max: int = 14
    p: float = 0.5
    seed: int = 1
    depths: list[int] = field(default_factory=lambda: [0, 1, 2, 3, 4, 6, 8])


def corpus(cfg: Config):
    out = []
    k = 0
    while len(out) < cfg.instances:
        n = cfg.n_min + k % (cfg.n_max - cfg.n_min + 1)
        inst = generate(CorpusSpec("random_subcubic", n=n, p=cfg.p, seed=cfg.seed * 100_003 + k, lists="random_valid"))
        k += 1
        z = count_colorings(inst).value
        if z > 0:
            out.append((inst, z))
    return out


def main(cfg: Config) -> None:
    data = corpus(cfg)
    print(f"{len(data)} instances, n in [{cfg.n_min}, {cfg.n_max}]")
    print(f"{'depth':>5}  {'worst rel err':>14}  {'mean rel err':>13}")
    for d in cfg.depths:
        errs = [abs(approx_count(inst, FixedDepth(d)).estimate / z - 1) for inst, z in data]
        print(f"{d:>5}  {max(errs):>14.3e}  {statistics.fmean(errs):>13.3e}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", type=int, default=Config.instances)
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--depths", type=int, nargs="+")
    a = ap.parse_args()
    cfg = Config(instances=a.instances, n_max=a.n_max, seed=a.seed)
    if a.depths:
        cfg.depths = a.depths
    main(cfg)
