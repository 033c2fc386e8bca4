#!/usr/bin/env python3
"""Compare the compiled and pure scalar kernels on representative workloads.

Kernel selection happens at import time, so each measurement runs in a fresh
interpreter with ANNULUS_PURE set accordingly.
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = {
    "scalar_ops": """
import random
from annulus.scalars import Cyc, CycField
rng = random.Random(0)
F = CycField(5)
xs = [Cyc(F, tuple(rng.randrange(-9, 10) for _ in range(F.dim)),
          rng.choice([1, 5, 25])) for _ in range(400)]
acc = F.zero
for _ in range(40):
    for a in xs:
        for b in xs[:40]:
            acc = acc.sub_mul(a, b)
""",
    "elimination": """
import random
from annulus.linalg import ExactMatrix
from annulus.scalars import Cyc, CycField
rng = random.Random(1)
F = CycField(5)
for _ in range(30):
    m = ExactMatrix(F, 60, 60)
    for i in range(60):
        for _ in range(6):
            j = rng.randrange(60)
            m.set(i, j, F.omega_pow(rng.randrange(5)) * rng.randrange(1, 4))
    m.rank()
""",
    "horizontal_fusion": """
from annulus.defects import parse_defect
from annulus.fusion import horizontal_fuse
p = 5
for q in (1, 2):
    for x in range(p):
        for z in range(p):
            horizontal_fuse(parse_defect(f'FqR(x={x};q={q})', p),
                            parse_defect(f'LL(a=1,x={z})', p))
""",
    "associator_table_p2": """
from annulus.fusion import generate_table
generate_table('associator', 2, golden_check=True)
""",
}


def run_workload(name, pure):
    code = (
        "import time\n"
        f"_t0 = time.perf_counter()\n{WORKLOADS[name]}\n"
        "import annulus\n"
        "print(json.dumps({'seconds': time.perf_counter() - _t0,"
        " 'backend': annulus.kernel_backend()}))"
    )
    code = "import json\n" + code
    env = dict(os.environ)
    env["ANNULUS_PURE"] = "1" if pure else "0"
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workload", choices=sorted(WORKLOADS), action="append",
                    help="restrict to specific workloads (repeatable)")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = args.workload or sorted(WORKLOADS)
    print(f"{'workload':<22}{'pure [s]':>10}{'cython [s]':>12}{'speedup':>9}")
    for name in names:
        best = {}
        for pure in (True, False):
            times = []
            for _ in range(args.repeat):
                result = run_workload(name, pure)
                times.append(result["seconds"])
            key = "pure" if pure else result["backend"]
            best[key] = min(times)
        compiled_key = [k for k in best if k != "pure"][0]
        if compiled_key == "pure":
            print(f"{name:<22}{best['pure']:>10.3f}{'n/a':>12}{'':>9}")
            continue
        speedup = best["pure"] / best[compiled_key]
        print(f"{name:<22}{best['pure']:>10.3f}{best[compiled_key]:>12.3f}"
              f"{speedup:>8.2f}x")


if __name__ == "__main__":
    main()
