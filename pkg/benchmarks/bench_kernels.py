"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each backend runs in its own interpreter (the backend is fixed at import), so
the end-to-end timings include everything the kernels feed into.
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, time
from itertools import combinations
from lefschetz_lab import kernels
from lefschetz_lab.catalog import example_bg, heisenberg
from lefschetz_lab.cohomology import betti_numbers
from lefschetz_lab.lefschetz import contact_lefschetz
from lefschetz_lab.symcon import contactize

def best(fn, repeat):
    out = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t)
    return min(out)

rng = random.Random(0)
pairs = [(rng.getrandbits(14), rng.getrandbits(14)) for _ in range(200000)]
masks = [sum(1 << i for i in c) for c in combinations(range(14), 5)]
rows = [[rng.randrange(-50, 50) for _ in range(120)] for _ in range(120)]
repeat = REPEAT

res = {"backend": kernels.BACKEND}
res["wedge_sign"] = best(lambda: [kernels.wedge_sign(a, b) for a, b in pairs], repeat)
res["mask_rank"] = best(lambda: [kernels.mask_rank(m) for m in masks * 20], repeat)
res["rank_mod_p"] = best(lambda: kernels.rank_mod_p(rows, 120, 2147483629), repeat)
res["betti h_7"] = best(lambda: betti_numbers(heisenberg(3).algebra), repeat)
bg = contactize(example_bg()[0])
res["contact 2-Lefschetz g_BG"] = best(lambda: contact_lefschetz(bg, 2), 1)
print(json.dumps(res))
"""


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env["LEFSCHETZ_LAB_PURE"] = "1" if pure else "0"
    code = WORKLOAD.replace("REPEAT", str(repeat))
    out = subprocess.run([sys.executable, "-c", code], env=env, check=True, capture_output=True, text=True)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    if fast["backend"] != "cython":
        print("compiled kernels not built; both columns use the fallback")
    print(f"{'workload':<28}{'compiled s':>12}{'pure s':>12}{'speedup':>10}")
    for key in fast:
        if key == "backend":
            continue
        a, b = fast[key], slow[key]
        print(f"{key:<28}{a:>12.4f}{b:>12.4f}{b / a:>9.1f}x")


if __name__ == "__main__":
    main()
