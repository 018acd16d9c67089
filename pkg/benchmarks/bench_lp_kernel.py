"""Benchmark the simplex kernel: numba-compiled vs plain numpy.

Builds the partitioning program for the bundled 5x5 cut-loop example, then
times LP relaxation solves through both kernel variants on the same node
sequence a branch-and-bound run would visit.  Run with:

    python benchmarks/bench_lp_kernel.py [--nodes 200]

The active variant inside the package is controlled by STATEPART_JIT
(default: compiled when numba is importable); this script always times
both, regardless of the flag.
"""

from __future__ import annotations

import argparse
import json
import time
from importlib import resources

import numpy as np

from statepart import StateSpaceModel, build_partitioning_bilp
from statepart._accel import JIT_ENABLED, NUMBA_AVAILABLE
from statepart._simplex import _lp_core_jit, _lp_core_py


def _load_example():
    with resources.files("statepart.data").joinpath("ex2.json").open() as fh:
        doc = json.load(fh)
    return StateSpaceModel(
        A=np.array(doc["A"], float), B=np.array(doc["B"], float), name=doc["name"]
    )


def _node_bounds(index, rng, n_vars, count):
    """Random plausible branch-and-bound nodes: a few alpha/beta fixings."""
    nodes = [(np.zeros(n_vars), np.ones(n_vars))]
    while len(nodes) < count:
        lower = np.zeros(n_vars)
        upper = np.ones(n_vars)
        depth = int(rng.integers(1, 9))
        for _ in range(depth):
            p = int(rng.integers(0, index.n_groups))
            if rng.random() < 0.5:
                var = int(index.alpha[p, int(rng.integers(0, index.n_states))])
            else:
                var = int(index.beta[p, int(rng.integers(0, index.n_inputs))])
            if rng.random() < 0.5:
                lower[var] = upper[var] = 1.0
            else:
                lower[var] = upper[var] = 0.0
        nodes.append((lower, upper))
    return nodes


def _time_variant(kernel, arrays, nodes, hint):
    A, b, senses, c = arrays
    start = time.perf_counter()
    checksum = 0.0
    for lower, upper in nodes:
        status, value, _ = kernel(A, b, senses, c, lower, upper, 200_000, hint)
        if status == 0:
            checksum += value
    return time.perf_counter() - start, checksum


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nodes", type=int, default=200, help="LP solves per variant")
    args = parser.parse_args()

    model = _load_example()
    bm, index = build_partitioning_bilp(model, 3)
    arrays = bm.compile_arrays()
    n_vars = bm.num_vars
    hint = np.zeros(n_vars)
    rng = np.random.default_rng(0)
    nodes = _node_bounds(index, rng, n_vars, args.nodes)
    print(
        f"model: {model.name}, {n_vars} variables, "
        f"{len(bm.constraints)} rows, {args.nodes} LP solves per variant"
    )
    print(f"numba available: {NUMBA_AVAILABLE}; package default path: "
          f"{'compiled' if JIT_ENABLED else 'plain numpy'}")

    t_py, sum_py = _time_variant(_lp_core_py, arrays, nodes, hint)
    print(f"plain numpy : {t_py:8.3f} s  ({1000 * t_py / args.nodes:7.2f} ms/solve)")

    if _lp_core_jit is None:
        print("numba       :      n/a  (numba not importable)")
        return
    # First call pays compilation; warm once, then measure.
    _time_variant(_lp_core_jit, arrays, nodes[:1], hint)
    t_jit, sum_jit = _time_variant(_lp_core_jit, arrays, nodes, hint)
    print(f"numba njit  : {t_jit:8.3f} s  ({1000 * t_jit / args.nodes:7.2f} ms/solve)")
    print(f"speedup     : {t_py / t_jit:8.2f} x")
    if sum_py != sum_jit:
        raise SystemExit("FAIL: variants returned different objective checksums")
    print("checksums identical across variants")


if __name__ == "__main__":
    main()
