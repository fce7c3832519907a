"""Compare the numba-compiled search kernel with the pure-Python fallback.

Each backend runs in its own interpreter, because the choice is made at
import time through ``F1REP_DISABLE_JIT``.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, sys, time
from f1rep import _kernels
from f1rep.quiver import hom_dim, linear_quiver, resolve_name
from f1rep.homology import ext

repeat = int(sys.argv[1])
q = linear_quiver(4)
r = lambda s: resolve_name(q, s)
big = r("[1,4]+[1,3]+[2,4]+[2,3]+[1,2]+[3,4]+S2+S3")

def hom_task():
    return hom_dim(big, big)

def ext_task():
    return ext(2, r("[3,4]+S4"), r("[1,2]+S1"), threads=1).dim

# warm-up compiles the kernel (cached on disk afterwards)
hom_task(); ext_task()
out = {"backend": _kernels.BACKEND}
for name, fn in (("hom", hom_task), ("ext", ext_task)):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        value = fn()
        times.append(time.perf_counter() - t)
    out[name] = {"value": value, "best_s": min(times)}
print(json.dumps(out))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("F1REP_DISABLE_JIT", None)
    if disable:
        env["F1REP_DISABLE_JIT"] = "1"
    proc = subprocess.run([sys.executable, "-c", WORKLOAD, str(repeat)], env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    print(f"{'task':<6} {'value':>8} {fast['backend'] + ' (s)':>14} {slow['backend'] + ' (s)':>14} {'speedup':>8}")
    for task in ("hom", "ext"):
        a, b = fast[task], slow[task]
        if a["value"] != b["value"]:
            raise SystemExit(f"{task}: backends disagree ({a['value']} vs {b['value']})")
        print(f"{task:<6} {a['value']:>8} {a['best_s']:>14.4f} {b['best_s']:>14.4f} {b['best_s'] / a['best_s']:>7.1f}x")


if __name__ == "__main__":
    main()
