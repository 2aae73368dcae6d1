"""Search every (l, lambda) cell of the summary table on the built-in patches.

Writes the JSON report next to the printed text table.
"""
import argparse
import json
import time
from dataclasses import dataclass
from pathlib import Path

from l21grids import explorer as E


@dataclass
class TableConfig:
    out_dir: Path = Path("results")
    write_json: bool = True


def main(cfg: TableConfig) -> int:
    start = time.perf_counter()
    report = E.paper_table()
    print(E.table_text(report))
    for c in report.summary["cells"]:
        where = f"{c['patch']} bits={c['bits']} labels={c['labels']}" if c["status"] == "found" else c["status"]
        print(f"{c['column']:<11} l={c['l']:<5} lambda={c['lambda']}{'?' if c['open'] else ' '}  {where}")
    print(f"done in {time.perf_counter() - start:.1f}s, asserted cells {'ok' if report.ok else 'MISSING'}")
    if cfg.write_json:
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
        (cfg.out_dir / "table.json").write_text(json.dumps(report.to_doc(), indent=1))
    return 0 if report.ok else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=TableConfig.out_dir)
    ap.add_argument("--no-json", action="store_true")
    a = ap.parse_args()
    raise SystemExit(main(TableConfig(a.out_dir, not a.no_json)))
