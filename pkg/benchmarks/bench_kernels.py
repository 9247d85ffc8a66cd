"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each row runs one exhaustive check on the same inputs under both backends
and reports the best wall time of N runs.
"""

import argparse
import random
import time

from seifertkit import kernels
from seifertkit.cohomology import random_cocycle
from seifertkit.engine import construct_theta, theta_hom_check
from seifertkit.extensions import box_vectors, make_extension
from seifertkit.groups import build_cyclic, build_symmetric, coset_action, cyclic_matrix_module, trivial_module


def cases():
    rng = random.Random(0)
    S4 = build_symmetric(4)[0]
    yield "assoc S4 (24^3)", lambda: kernels.assoc_witness(S4.mult)

    Z12 = build_cyclic(12)
    yield "assoc Z12", lambda: kernels.assoc_witness(Z12.mult)

    A = trivial_module(S4, 1)
    f = random_cocycle(A, rng)
    yield "cocycle S4, Z", lambda: kernels.cocycle_witness(S4.mult, A.action, f.values, A.moduli)

    Z6 = build_cyclic(6)
    B = cyclic_matrix_module(Z6, [[1, -1], [1, 0]])
    g = random_cocycle(B, rng)
    box = box_vectors(B, 1)
    yield "ext assoc Z6, rot6, box 1", lambda: kernels.ext_assoc_witness(Z6.mult, B.action, g.values, B.moduli, box)

    E = make_extension(B, g)
    act = construct_theta(E, coset_action(Z6, [0, 3]), 1)
    yield "theta hom Z6, |W|=3, box 2", lambda: theta_hom_check(act, 2)


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = kernels.available_backends()
    if "c" not in names:
        print("compiled kernels are not built; only the Python backend is available")
    print(f"{'case':32s}" + "".join(f"{n:>12s}" for n in names) + ("    speedup" if len(names) > 1 else ""))
    for label, fn in cases():
        times = []
        for name in names:
            with kernels.use_backend(name):
                times.append(best_of(fn, args.repeat))
        row = f"{label:32s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) > 1:
            row += f"  {times[1] / times[0]:8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
