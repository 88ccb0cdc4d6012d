"""Time the numba kernels against the pure-numpy/interpreted fallback.

Each backend runs in its own subprocess, because the backend is fixed at
import time by ``MACDONALD_KERNELS``.  Usage::

    python3 benchmarks/bench_kernels.py [--repeat 3] [--pairs 1000000]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time


def _best(fn, repeat):
    fn()  # warm-up, includes JIT compilation
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def worker(repeat: int, pairs: int) -> dict:
    import numpy as np

    from macdonald import BACKEND
    from macdonald.engine import build_tower, make_context, normal_form_group
    from macdonald.enumerator import coset_enumerate
    from macdonald.presentation import sylow_presentation

    rng = np.random.default_rng(0)
    G = normal_form_group(make_context(6, 5))
    x, y = rng.integers(0, G.order, pairs), rng.integers(0, G.order, pairs)

    T = build_tower(4, 3).handle()  # permutation handle: mul traces generator words
    u, v = rng.integers(0, T.order, pairs // 10), rng.integers(0, T.order, pairs // 10)

    spec43, spec65 = sylow_presentation(4, 3), sylow_presentation(6, 5)
    return {
        "backend": BACKEND,
        f"nf_mul (6,5) x{pairs}": _best(lambda: G.mul(x, y), repeat),
        f"cayley_trace tower(4,3) x{pairs // 10}": _best(lambda: T.mul(u, v), repeat),
        "todd_coxeter (4,3) trivial subgroup": _best(lambda: coset_enumerate(spec43), repeat),
        "todd_coxeter (6,5) via A": _best(lambda: coset_enumerate(spec65, via="A"), repeat),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--pairs", type=int, default=1_000_000)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args(argv)
    if args.worker:
        print(json.dumps(worker(args.repeat, args.pairs)))
        return 0

    results = {}
    for kernels in ("numba", "numpy"):
        env = dict(os.environ, MACDONALD_KERNELS=kernels)
        env.pop("NUMBA_DISABLE_JIT", None)
        cmd = [sys.executable, __file__, "--worker", "--repeat", str(args.repeat), "--pairs", str(args.pairs)]
        out = subprocess.run(cmd, env=env, check=True, capture_output=True, text=True).stdout
        results[kernels] = json.loads(out.strip().splitlines()[-1])

    print(f"{'kernel':<42}{'numba (s)':>12}{'numpy (s)':>12}{'speed-up':>10}")
    for key in results["numba"]:
        if key == "backend":
            continue
        a, b = results["numba"][key], results["numpy"][key]
        print(f"{key:<42}{a:>12.4f}{b:>12.4f}{b / a:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
