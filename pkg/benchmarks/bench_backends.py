"""Time the scalar backends on identical workloads.

Each backend runs in a fresh interpreter because the choice is fixed at import.

    python3 benchmarks/bench_backends.py [--repeat N]
"""
import argparse
import os
import subprocess
import sys

WORKLOAD = r"""
import time
from weylpd import _backend
from weylpd.oracle import run_suite
from weylpd.correspondence import Caps
caps = Caps(p_max=4)
timings = {}
for name, count in (("nf-algebra", 100), ("bounds", 200), ("theorem8", 40), ("prop7", 60)):
    start = time.perf_counter()
    reports = run_suite(name, seed=5, caps=caps, count=count)
    assert all(r.passed for r in reports), name
    timings[name] = time.perf_counter() - start
print(_backend.BACKEND, " ".join(f"{k}={v:.3f}" for k, v in timings.items()))
"""


def run(backend):
    env = dict(os.environ, WEYLPD_SCALAR=backend)
    proc = subprocess.run([sys.executable, "-c", WORKLOAD], capture_output=True, text=True, env=env)
    if proc.returncode:
        raise SystemExit(proc.stderr)
    name, *fields = proc.stdout.split()
    return name, {k: float(v) for k, v in (f.split("=") for f in fields)}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    best = {}
    for backend in ("fraction", "gmpy2"):
        for _ in range(args.repeat):
            name, t = run(backend)
            cur = best.setdefault(name, t)
            best[name] = {k: min(cur[k], t[k]) for k in t}
    suites = list(next(iter(best.values())))
    print(f"{'suite':<12}" + "".join(f"{b:>12}" for b in best))
    for s in suites + ["total"]:
        vals = [sum(t.values()) if s == "total" else t[s] for t in best.values()]
        print(f"{s:<12}" + "".join(f"{v:>11.3f}s" for v in vals))


if __name__ == "__main__":
    main()
