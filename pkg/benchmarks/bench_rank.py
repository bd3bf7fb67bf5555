"""Compare the compiled rank kernels with the numpy fallback.

    python3 benchmarks/bench_rank.py [--sizes 50,100,200] [--repeat 3]

Also times a full chi run under each backend, switched in a subprocess
through L2EULER_PURE.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from l2euler.rank import _fallback

try:
    from l2euler.rank import _kernels
except ImportError:
    _kernels = None

P = 2147483629

PIPELINE = """
import time, l2euler as L
from l2euler.quotients import abelian_quotient
inp = L.load_fixture("v1539")
q = abelian_quotient(inp.presentation, [9])
t = time.perf_counter()
L.chi_twisted(inp.complex, inp.presentation, [1, 1], 11, q)
print(L.BACKEND, time.perf_counter() - t)
"""


def bench_kernels(sizes, repeat):
    rng = np.random.default_rng(0)
    print("%-12s %6s %12s %12s %8s" % ("kernel", "n", "fallback s", "cython s", "speedup"))
    for n in sizes:
        # rank deficient on purpose so elimination hits empty pivots
        M = rng.integers(0, P, size=(n, n // 2)) @ rng.integers(0, 7, size=(n // 2, n))
        B = rng.integers(0, 31, size=(64, n // 4, n // 4))
        for name, args in [("dense", (M, P)), ("batch", (B, 31))]:
            f = getattr(_fallback, "rank_mod_p_" + name)
            tf = min(timeit.repeat(lambda: f(*args), number=1, repeat=repeat))
            if _kernels is None:
                print("%-12s %6d %12.4f %12s %8s" % (name, n, tf, "-", "-"))
                continue
            k = getattr(_kernels, "rank_mod_p_" + name)
            assert np.all(np.asarray(k(*args)) == np.asarray(f(*args)))
            tk = min(timeit.repeat(lambda: k(*args), number=1, repeat=repeat))
            print("%-12s %6d %12.4f %12.4f %7.1fx" % (name, n, tf, tk, tf / tk))


def bench_pipeline():
    for pure in ("1", "0"):
        env = dict(os.environ, L2EULER_PURE=pure)
        out = subprocess.run([sys.executable, "-c", PIPELINE], env=env,
                             capture_output=True, text=True, check=True).stdout.split()
        print("chi v1539 (1,1) mu=11 mod 9, backend %-7s %.3f s" % (out[0], float(out[1])))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="50,100,200")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    bench_kernels([int(s) for s in args.sizes.split(",")], args.repeat)
    bench_pipeline()


if __name__ == "__main__":
    main()
