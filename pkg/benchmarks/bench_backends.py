#!/usr/bin/env python3
"""Throughput comparison of the compiled and pure-numpy coherence kernels.

Runs the single-qubit and two-qubit series kernels on identical workloads
through every available backend and reports wall-clock medians plus the
speedup of the compiled path over the reference path.  Usage::

    python3 benchmarks/bench_backends.py [--points N] [--repeats R]

The compiled backend is exercised only if numba is importable; the script
degrades gracefully to a numpy-only report otherwise.
"""
from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from ptcoherence import HamiltonianParams, SymmetryClass, TwoQubitState
from ptcoherence._backend import available_backends, get_kernels
from ptcoherence._kernels import KIND_APT, KIND_PT


def _time_call(fn, repeats: int) -> float:
    """Median wall-clock seconds of ``fn()`` over ``repeats`` runs."""
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def _workloads(points: int):
    times = np.linspace(0.0, 12.0, points)
    single = [
        ("single pt unbroken a=0.47", KIND_PT, 0.47),
        ("single pt broken   a=2.80", KIND_PT, 2.80),
        ("single apt unbroken a=1.5", KIND_APT, 1.50),
        ("single apt broken   a=0.5", KIND_APT, 0.50),
    ]
    rho4 = TwoQubitState.psi_3().rho4
    double = [
        ("two-qubit pt a=0.47", KIND_PT, 0.47),
        ("two-qubit apt a=1.5", KIND_APT, 1.50),
    ]
    return times, single, double, rho4


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=200_000,
                        help="grid points per single-qubit workload (default 200000)")
    parser.add_argument("--repeats", type=int, default=5,
                        help="timed repetitions per case; the median is reported")
    args = parser.parse_args()

    backends = available_backends()
    times, single, double, rho4 = _workloads(args.points)
    # the two-qubit kernel does a 4x4 matrix product per time point, so use
    # a smaller grid to keep runtime comparable
    times_2q = times[:: max(1, args.points // 20_000)]

    print(f"backends available: {', '.join(backends)}")
    print(f"single-qubit grid: {times.size} points; "
          f"two-qubit grid: {times_2q.size} points; "
          f"median of {args.repeats} runs\n")

    # warm both paths so JIT compilation does not pollute the timings
    for name in backends:
        k = get_kernels(name)
        k.coherence_series(KIND_PT, 1.0, 0.5, 0.6, 0.8, 0.1, times[:16])
        k.two_qubit_coherence_series(KIND_PT, 1.0, 0.5, rho4, times_2q[:4])

    header = f"{'case':<28}" + "".join(f"{b:>14}" for b in backends)
    if len(backends) > 1:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))

    for label, kind_code, a in single:
        medians = []
        for name in backends:
            k = get_kernels(name)
            medians.append(_time_call(
                lambda k=k: k.coherence_series(kind_code, 1.0, a, 0.6, 0.8, 0.3, times),
                args.repeats,
            ))
        row = f"{label:<28}" + "".join(f"{m * 1e3:>12.2f}ms" for m in medians)
        if len(medians) > 1:
            row += f"{medians[-1] / medians[0]:>9.1f}x"
        print(row)

    for label, kind_code, a in double:
        medians = []
        for name in backends:
            k = get_kernels(name)
            medians.append(_time_call(
                lambda k=k: k.two_qubit_coherence_series(kind_code, 1.0, a, rho4, times_2q),
                args.repeats,
            ))
        row = f"{label:<28}" + "".join(f"{m * 1e3:>12.2f}ms" for m in medians)
        if len(medians) > 1:
            row += f"{medians[-1] / medians[0]:>9.1f}x"
        print(row)

    # correctness spot check across backends on one workload
    reference = None
    for name in backends:
        k = get_kernels(name)
        out = k.coherence_series(KIND_PT, 1.0, 0.47, 0.6, 0.8, 0.3, times[:4096])
        if reference is None:
            reference = out
        else:
            gap = float(np.max(np.abs(out - reference)))
            print(f"\nmax |{backends[0]} - {name}| on spot check: {gap:.2e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
