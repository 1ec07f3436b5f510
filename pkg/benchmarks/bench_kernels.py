"""Compare the compiled and numpy kernels on representative runs.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from photocap import _pykernels

try:
    from photocap import _ckernels
except ImportError:
    _ckernels = None


def cases():
    rng = np.random.default_rng(0)
    ideal = np.ones(10**6)
    noisy = np.ones(150_000)
    noisy[rng.choice(noisy.size, 50_000, replace=False)] = 0.5
    yield "single ideal N=1e6", lambda k: k.single_run(10**6, ideal, 0.0)
    yield "single mixed N=1e5", lambda k: k.single_run(10**5, noisy, 3.0)
    yield "twin N=2e6", lambda k: k.twin_run(2 * 10**6, 0)
    yield "twin sweep N<=1e4", lambda k: [k.twin_run(n, 0) for n in range(10**4 + 1)]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.append(("cython", _ckernels))
    print(f"{'case':<22}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for label, fn in cases():
        times = []
        for _, mod in backends:
            times.append(min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat)))
        row = f"{label:<22}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.2f}x"
        print(row)


if __name__ == "__main__":
    main()
