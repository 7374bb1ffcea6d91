"""Compare the compiled and pure-Python lattice kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]

For each workload the lattice profile is built with both backends, the
results are checked to be identical, and the best wall time is reported.
"""

import argparse
import sys
import time

from partition_qseries import ExponentForm, MutationLoop, Quiver, exponent_form
from partition_qseries import _backend
from partition_qseries.closed_forms import dynkin_form, square_gram
from partition_qseries.lattice import lattice_profile
from partition_qseries.partition import partition_series


def workloads(quick):
    scale = 2 if quick else 1
    # 7 mutations on 3 vertices; only copositive, so the simplex-bound walk is used
    copositive = MutationLoop.from_normal_form(Quiver.from_arrows(3, [(3, 1), (3, 2)]), [2, 1, 2, 1, 3, 2, 1])
    return [
        ("E8 Dynkin", dynkin_form("E8"), 100 // scale),
        ("D6 Dynkin", dynkin_form("D6"), 80 // scale),
        ("A3 x A2 square", ExponentForm.from_gram(square_gram("A3", "A2")), 40 // scale),
        ("A2 x A4 square", ExponentForm.from_gram(square_gram("A2", "A4")), 24 // scale),
        ("copositive T=7", exponent_form(copositive), 20 // scale),
    ]


def best_time(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller cutoffs")
    args = ap.parse_args(argv)

    if _backend.compiled_kernels is None:
        print("compiled kernels are not built; only the Python backend is available")
        backends = ["python"]
    else:
        backends = ["python", "cython"]

    header = f"{'workload':<18} {'T':>2} {'cutoff':>6} {'points':>8} " + " ".join(f"{b:>9}" for b in backends)
    if len(backends) == 2:
        header += f" {'speedup':>8} {'series':>9}"
    print(header)
    ok = True
    for name, form, cutoff in workloads(args.quick):
        times = {}
        profiles = {}
        for b in backends:
            times[b], profiles[b] = best_time(lambda: lattice_profile(form, cutoff, backend=b), args.repeat)
        same = all(p == profiles[backends[0]] for p in profiles.values())
        ok = ok and same
        points = sum(profiles[backends[0]].values())
        row = f"{name:<18} {form.T:>2} {cutoff:>6} {points:>8} " + " ".join(f"{times[b]:>8.3f}s" for b in backends)
        if len(backends) == 2:
            series_time, _ = best_time(lambda: partition_series(form, cutoff), args.repeat)
            row += f" {times['python'] / times['cython']:>7.1f}x {series_time:>8.3f}s"
        if not same:
            row += "  MISMATCH"
        print(row)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
