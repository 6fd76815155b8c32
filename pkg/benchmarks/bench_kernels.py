"""Time the compiled and pure-Python search kernels on the same instances.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import statistics
import time

from zsmagic import _kernels
from zsmagic.families import fixture_graph
from zsmagic.groups import GroupSpec
from zsmagic.solver import solve

CASES = [
    ("G2", "Z4"),
    ("Petersen", "Z2^2"),
    ("G4", "Z2xZ4"),
    ("G3", "Z4^2"),
    ("G0", "Z6"),
    ("PeStar", "Z2^2"),
    ("G5", "Z2xZ4"),
]


def time_case(name: str, group: str, kernel: str, repeat: int) -> tuple[float, int, str]:
    g, spec = fixture_graph(name), GroupSpec.parse(group)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = solve(g, spec, kernel=kernel, seed=0, oracle_cap=0)
        times.append(time.perf_counter() - t0)
    return statistics.median(times), res.nodes, res.status.value


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    kernels = ["python"] + (["compiled"] if _kernels.compiled_search is not None else [])
    if len(kernels) == 1:
        print("compiled kernel not built; timing the Python kernel only")
    print(f"{'graph':10} {'group':8} {'status':7} {'nodes':>8} " + " ".join(f"{k:>10}" for k in kernels)
          + ("    speedup" if len(kernels) == 2 else ""))
    for name, group in CASES:
        rows = [time_case(name, group, k, args.repeat) for k in kernels]
        nodes, status = rows[0][1], rows[0][2]
        assert all(r[1] == nodes for r in rows), "kernels disagree on node count"
        line = f"{name:10} {group:8} {status:7} {nodes:8d} " + " ".join(f"{r[0] * 1e3:8.2f}ms" for r in rows)
        if len(rows) == 2 and rows[1][0] > 0:
            line += f"  {rows[0][0] / rows[1][0]:8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
