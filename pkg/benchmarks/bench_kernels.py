"""Compare the compiled and numpy gate kernels.

Two workloads: raw gate application on an n-qubit random state, and the
density-matrix evaluation of the full decoder (the inner loop of a noisy
sweep, 64-amplitude vectors and many small gates).

    python benchmarks/bench_kernels.py --repeat 5
"""
import argparse
import time

import numpy as np

from bpqm_jdr.receiver import evaluate
from bpqm_jdr.simulator import kernels
from bpqm_jdr.simulator.noise import NoiseModel


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def gate_workload(n, layers, rng):
    psi = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    psi /= np.linalg.norm(psi)
    u1 = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))[0]
    u2 = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))[0]

    def run():
        for _ in range(layers):
            for q in range(n):
                kernels.apply_gate(psi, u1, (q,), n)
            for q in range(n - 1):
                kernels.apply_gate(psi, u2, (q, q + 1), n)

    return run


def decoder_workload(points):
    grid = np.geomspace(1e-3, 1.0, points)
    noise = NoiseModel.hardware_default()

    def run():
        for N in grid:
            evaluate(float(N), "block", "noisy", noise)

    return run


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--qubits", type=int, nargs="+", default=[4, 8, 12, 16])
    parser.add_argument("--layers", type=int, default=5)
    parser.add_argument("--points", type=int, default=10)
    args = parser.parse_args()

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the numpy fallback is available")
    rows = []
    for n in args.qubits:
        label = f"gates n={n} ({args.layers} layers)"
        timings = {}
        for name in backends:
            kernels.set_backend(name)
            timings[name] = best_of(gate_workload(n, args.layers, np.random.default_rng(1)), args.repeat)
        rows.append((label, timings))
    timings = {}
    for name in backends:
        kernels.set_backend(name)
        timings[name] = best_of(decoder_workload(args.points), args.repeat)
    rows.append((f"noisy full decoder, {args.points} N points", timings))

    print(f"{'workload':40s} " + " ".join(f"{b:>12s}" for b in backends) + "   speedup")
    for label, t in rows:
        speedup = t["python"] / t["cython"] if "cython" in t else float("nan")
        print(f"{label:40s} " + " ".join(f"{t[b] * 1e3:10.2f}ms" for b in backends) + f"   {speedup:6.2f}x")


if __name__ == "__main__":
    main()
