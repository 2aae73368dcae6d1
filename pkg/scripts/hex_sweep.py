"""Exhaustive sweeps of small hexagonal patches, looking for lambda = 5.

hexCycle(3) has 16 edges, so 65536 orientations; with symmetry reduction this
takes well under a minute on one core.
"""
import argparse
import time
from dataclasses import dataclass

from l21grids import explorer as E
from l21grids import lattice as L


@dataclass
class HexSweepConfig:
    max_hexagons: int = 3
    path_lengths: tuple[int, ...] = (6, 10)
    jobs: int = 1


def main(cfg: HexSweepConfig) -> int:
    patches = [L.hex_cycle(k) for k in range(1, cfg.max_hexagons + 1)] + [L.hex_star()]
    patches += [L.hex_path(k) for k in cfg.path_lengths]
    worst = 0
    for g in patches:
        t = time.perf_counter()
        sweep = E.enumerate_orientations(g, include_reversal=True, jobs=cfg.jobs)
        print(sweep.to_text())
        print(f"({time.perf_counter() - t:.1f}s)\n")
        worst = max(worst, sweep.max_lambda or 0)
        for r in sweep.reports:
            if r.lam is not None and r.lam >= 5:
                print(f"lambda {r.lam} on {g.name}: {r.canonical}")
    print(f"largest lambda over all hexagonal sweeps: {worst}")
    return 0 if worst <= 4 else 5


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-hexagons", type=int, default=HexSweepConfig.max_hexagons)
    ap.add_argument("--jobs", type=int, default=HexSweepConfig.jobs)
    a = ap.parse_args()
    raise SystemExit(main(HexSweepConfig(max_hexagons=a.max_hexagons, jobs=a.jobs)))
