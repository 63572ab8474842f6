"""Timing comparison of the compiled and pure-numpy kernel backends.

The backend is fixed at import time by DELTAGAS_BACKEND, so each one is
measured in its own interpreter.  The compiled path is warmed before the
timed loop so jit compilation is not counted.

Usage: python benchmarks/bench_backends.py [--n 800] [--repeats 20]
"""

import argparse
import json
import math
import os
import subprocess
import sys
import time


def _measure(n: int, repeats: int) -> dict:
    import numpy as np

    from deltagas._kernels import backend_name, exp_dot, lorentz_system
    from deltagas.fredholm import Statistics, solve_love

    rng = np.random.default_rng(7)
    x = np.sort(rng.uniform(-1.0, 1.0, n))
    w = rng.uniform(0.1, 0.2, n)
    c = rng.uniform(0.0, 1.0, 24)
    t = np.sort(rng.uniform(0.1, 3.0, 24))
    xs = np.linspace(0.01, 50.0, 4 * n)

    # warm-up: triggers compilation on the jit backend, caches quadrature
    lorentz_system(x, w, 1.0, 1.0 / math.pi, 0.5)
    exp_dot(c, t, xs)
    solve_love(Statistics.FERMI, 0.1, n, check=False)

    t0 = time.perf_counter()
    for _ in range(repeats):
        lorentz_system(x, w, 1.0, 1.0 / math.pi, 0.5)
    lorentz_ms = 1e3 * (time.perf_counter() - t0) / repeats

    t0 = time.perf_counter()
    for _ in range(repeats):
        exp_dot(c, t, xs)
    exp_dot_ms = 1e3 * (time.perf_counter() - t0) / repeats

    t0 = time.perf_counter()
    for _ in range(max(1, repeats // 4)):
        solve_love(Statistics.FERMI, 0.1, n, check=False)
    solve_ms = 1e3 * (time.perf_counter() - t0) / max(1, repeats // 4)

    return {
        "backend": backend_name(),
        "lorentz_system": lorentz_ms,
        "exp_dot": exp_dot_ms,
        "solve_love": solve_ms,
    }


def _child(backend: str, n: int, repeats: int) -> dict:
    env = dict(os.environ, DELTAGAS_BACKEND=backend)
    proc = subprocess.run(
        [sys.executable, os.path.abspath(__file__),
         "--inner", "--n", str(n), "--repeats", str(repeats)],
        capture_output=True, text=True, env=env,
    )
    if proc.returncode != 0:
        sys.stderr.write(proc.stderr)
        raise SystemExit(proc.returncode)
    return json.loads(proc.stdout.splitlines()[-1])


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=800, help="matrix size")
    parser.add_argument("--repeats", type=int, default=20)
    parser.add_argument("--inner", action="store_true",
                        help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.inner:
        print(json.dumps(_measure(args.n, args.repeats)))
        return 0

    fast = _child("numba", args.n, args.repeats)
    slow = _child("numpy", args.n, args.repeats)
    print("n=%d, %d timed repeats per kernel" % (args.n, args.repeats))
    for key in ("lorentz_system", "exp_dot", "solve_love"):
        print(
            "%-16s numba %8.3f ms/step   numpy %8.3f ms/step   speedup %.1fx"
            % (key, fast[key], slow[key], slow[key] / fast[key])
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
