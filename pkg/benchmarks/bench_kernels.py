"""Compare the compiled and pure-Python series kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Also times one full character workload (the k=2 vacuum module to q^40 and
its Ising decomposition check) under each backend.
"""

import argparse
import random
import timeit
from fractions import Fraction

from voakit import kernels


def workloads():
    rng = random.Random(0)
    a = [rng.randint(-1000, 1000) for _ in range(400)]
    b = [rng.randint(-1000, 1000) for _ in range(400)]
    return {
        "conv_trunc n=400": lambda: kernels.conv_trunc(a, b, 400),
        "partition_counts n=400": lambda: kernels.partition_counts(400),
        "poly_pow_trunc e=6 n=200": lambda: kernels.poly_pow_trunc(a[:50], 6, 200),
        "affine sl2 k=2 to q^40": character_workload,
    }


def character_workload():
    from voakit.qseries import affine_sl2_character
    affine_sl2_character(2, 0, 40)


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    backends = sorted(kernels.available_backends(), key=lambda b: b != "python")
    print(f"backends: {', '.join(backends)}")
    results = {}
    for name in backends:
        kernels.use_backend(name)
        for label, fn in workloads().items():
            results[(label, name)] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
    print(f"{'workload':28}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for label in workloads():
        row = [results[(label, b)] for b in backends]
        line = f"{label:28}" + "".join(f"{t * 1e3:10.2f}ms" for t in row)
        if len(backends) > 1:
            line += f"{row[0] / row[1]:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
