"""Time the compiled and pure-Python search kernels on the same workloads.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.
"""

import argparse
import time

from theta_extremal.detect import detect_theta, enumerate_cycles
from theta_extremal.geometry import build_incidence_graph
from theta_extremal.graph import from_edge_list
from theta_extremal.kernels import available_backends
from theta_extremal.theta import validate_spec


def complete(n):
    return from_edge_list(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def workloads():
    g3 = build_incidence_graph(3).graph
    g4 = build_incidence_graph(4).graph
    g5 = build_incidence_graph(5).graph
    s355 = validate_spec([3, 5, 5])
    yield "theta(3,5,5) in G(3), exhaustive", lambda b: detect_theta(g3, s355, "first", 10**8, b)
    yield "theta(3,5,5) in G(4), exhaustive", lambda b: detect_theta(g4, s355, "first", 10**8, b)
    yield "theta(3,5,5) in G(5), exhaustive", lambda b: detect_theta(g5, s355, "first", 10**8, b)
    yield "count theta(2,2,2) in K8", lambda b: detect_theta(complete(8), validate_spec([2, 2, 2]), "count", 10**8, b)
    yield "8-cycles of G(3)", lambda b: enumerate_cycles(g3, 8, b)
    yield "8-cycles of G(4)", lambda b: enumerate_cycles(g4, 8, b)


def best_of(fn, backend, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn(backend)
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels are not built; only the Python backend is timed")
    print(f"{'workload':40s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for name, fn in workloads():
        times = [best_of(fn, b, args.repeat) for b in backends]
        row = f"{name:40s}" + "".join(f"{t:11.3f}s" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
