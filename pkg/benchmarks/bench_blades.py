"""Compare the compiled blade kernels with the pure-Python fallback.

Runs the raw kernels on all blade pairs of a 10-generator frame, then an
end-to-end workload (exterior powers and contact-bracket axioms) once per
backend in a fresh interpreter.

    python3 benchmarks/bench_blades.py
"""

import argparse
import importlib
import os
import subprocess
import sys
import timeit

WORKLOAD = r"""
import time
from gcontact import blades, blade, eps, I, Polyform
from gcontact.courant import check_courant_axioms, contact_algebroid, random_mc_twists
from gcontact.frame import coordinate_frame, parse_nil
from gcontact.sections import SplitMix64

start = time.perf_counter()
n = 10
w = sum((blade(n, (2 * k + 1, 2 * k + 2)) for k in range(5)), Polyform.zero(n))
for _ in range(20):
    w.scale(I).exp()
fr = parse_nil("(0,0,12,13,14+23,34+52)")
t, _ = random_mc_twists(SplitMix64(1), fr)
check_courant_axioms(contact_algebroid(fr, t), trials=30, seed=1)
t, _ = random_mc_twists(SplitMix64(1), coordinate_frame(3))
check_courant_axioms(contact_algebroid(coordinate_frame(3), t), trials=30, seed=1)
print(blades.BACKEND, time.perf_counter() - start)
"""


def kernel_timings(number):
    mods = {"python": importlib.import_module("gcontact._blades_py")}
    try:
        mods["cython"] = importlib.import_module("gcontact._blades")
    except ImportError:
        print("compiled kernels not built; only the fallback is timed")
    masks = list(range(1 << 10))
    sample = masks[::7]
    out = {}
    for name, mod in mods.items():
        def run(mod=mod):
            ws = mod.wedge_sign
            for a in sample:
                for b in sample:
                    ws(a, b)
            mod.wedge_terms(sample, sample)
        out[name] = min(timeit.repeat(run, number=number, repeat=3)) / number
    return out


def workload_timings():
    out = {}
    for name, env in (("python", {"GCONTACT_PURE_PYTHON": "1"}), ("default", {})):
        proc = subprocess.run(
            [sys.executable, "-c", WORKLOAD], env={**os.environ, **env},
            capture_output=True, text=True, check=True,
        )
        backend, secs = proc.stdout.split()
        out[f"{name} ({backend})"] = float(secs)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--number", type=int, default=3)
    args = ap.parse_args()
    k = kernel_timings(args.number)
    print("raw kernels (wedge_sign on 147^2 pairs + wedge_terms):")
    for name, secs in k.items():
        print(f"  {name:8s} {secs * 1e3:8.2f} ms")
    if len(k) == 2:
        print(f"  speedup  {k['python'] / k['cython']:8.1f}x")
    print("end-to-end workload:")
    for name, secs in workload_timings().items():
        print(f"  {name:18s} {secs:6.2f} s")


if __name__ == "__main__":
    main()
