"""Full (l, lambda) census of the 3x3 square block and the triangular wheel.

Also prints the square orientations with lambda 6 and longest dipath below 8,
which fill the square column's open cell.
"""
import argparse
from dataclasses import dataclass

from l21grids import explorer as E
from l21grids import lattice as L
from l21grids.digraph import orient
from l21grids.solver import feasible, solve_lambda


@dataclass
class CensusConfig:
    include_reversal: bool = True
    jobs: int = 1
    show: int = 5


def main(cfg: CensusConfig) -> int:
    for g in (L.square_rect(3, 3), L.tri_wheel()):
        sweep = E.enumerate_orientations(g, cfg.include_reversal, jobs=cfg.jobs)
        print(sweep.to_text() + "\n")

    sq = L.square_rect(3, 3)
    sweep = E.enumerate_orientations(sq, cfg.include_reversal, jobs=cfg.jobs)
    short = [r for r in sweep.reports if r.lam == 6 and r.longest_dipath < 8]
    print(f"squareRect(3,3): {sum(r.class_size for r in short)} orientations with lambda 6 and l < 8")
    for r in short[:cfg.show]:
        d = orient(sq, r.canonical)
        res = solve_lambda(d)
        assert feasible(d, 5) is None
        print(f"  l={r.longest_dipath} bits={r.canonical} class={r.class_size} labels={list(res.witness.colors)}")
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--no-reversal", action="store_true")
    ap.add_argument("--jobs", type=int, default=1)
    a = ap.parse_args()
    raise SystemExit(main(CensusConfig(not a.no_reversal, a.jobs)))
