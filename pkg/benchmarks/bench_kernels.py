"""Time the compiled and pure-Python kernels on the same workloads.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import statistics
import time

import numpy as np

from realpgonal import kernels
from realpgonal.epimorphisms import _search_args, target_group
from realpgonal.recipes import direct, named
from realpgonal.signatures import parse_signature


def timed(fn, repeat):
    runs = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t)
    return statistics.median(runs)


def workloads(mod):
    G = direct(named("S4"), named("A5"))
    table = mod.prepare(np.asarray(G.table))
    inv = mod.prepare_vector(np.asarray(G.inverse, dtype=np.int32))
    gens = list(G.generators)

    D = target_group("D", 5)
    sig = parse_signature("(0,+,[5,5],{(5,5,5)})")
    args = list(_search_args(sig, D))
    args[0] = mod.prepare(np.asarray(D.table))
    args[1] = mod.prepare_vector(np.asarray(D.inverse, dtype=np.int32))

    member = np.zeros(G.n, dtype=np.int32)
    member[mod.closure(table, G.identity, gens[:1])] = 1
    member = mod.prepare_vector(member)
    return {
        f"element_orders (n={G.n})": lambda: mod.element_orders(table, G.identity),
        f"conjugacy_labels (n={G.n})": lambda: mod.conjugacy_labels(table, inv, gens),
        f"normalizer_elements (n={G.n})": lambda: mod.normalizer_elements(table, inv, member, gens[:1]),
        f"closure (n={G.n})": lambda: mod.closure(table, G.identity, gens),
        "search_epis (D_5, 6 generators)": lambda: mod.search_epis(*args, 10**6),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    opts = ap.parse_args()
    py = kernels.backend_module("python")
    try:
        cy = kernels.backend_module("cython")
    except ImportError:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
    a, b = workloads(py), workloads(cy)
    print(f"{'workload':40} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name in a:
        tp, tc = timed(a[name], opts.repeat), timed(b[name], opts.repeat)
        print(f"{name:40} {tp * 1e3:9.2f}ms {tc * 1e3:9.2f}ms {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
