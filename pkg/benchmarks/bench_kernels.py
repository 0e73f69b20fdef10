"""Time the exhaustive sweeps under both backends.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json out.json]

Each kernel runs once to warm the numba cache, then ``--repeat`` times per
backend; the best wall time is reported.  Results of the two backends are
compared and any disagreement is reported as an error.
"""
from __future__ import annotations

import argparse
import json
import os
import time

import numpy as np

from braceforge import _kernels, corpus
from braceforge.prelie import witt


def cases():
    B = corpus.radical_cyclic(7, 3)
    T = corpus.radical_triangular(5, 3)
    W = witt(7, 3)
    A, AW = B.additive, W.additive
    br = AW.add_table[W.dot, AW.neg_table[W.dot.T]]
    mask = np.zeros(B.order, dtype=bool)
    mask[0] = True
    return {
        "left-distrib 343": lambda: _kernels.first_left_distrib_violation(B.star, A.add_table),
        "right-distrib 343": lambda: _kernels.first_right_distrib_violation(B.star, A.add_table),
        "assoc 343": lambda: _kernels.first_assoc_violation(B.circ_table),
        "pre-Lie 343": lambda: _kernels.first_prelie_violation(W.dot, AW.add_table, AW.neg_table),
        "jacobi 343": lambda: _kernels.first_jacobi_violation(br, AW.add_table),
        "engel 125": lambda: _kernels.first_engel_violation(T.star, T.additive.add_table, T.additive.neg_table, 4),
        "closure 343": lambda: _kernels.closure_mask(B.circ_table, mask, np.array([1, 7])),
    }


def best(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json")
    args = ap.parse_args(argv)
    saved = os.environ.get("BRACEFORGE_BACKEND")
    rows = []
    try:
        for name, fn in cases().items():
            res = {}
            for backend in ("numba", "numpy"):
                os.environ["BRACEFORGE_BACKEND"] = backend
                fn()
                res[backend] = best(fn, args.repeat)
            agree = same(res["numba"][1], res["numpy"][1])
            rows.append(
                {
                    "kernel": name,
                    "numba_s": res["numba"][0],
                    "numpy_s": res["numpy"][0],
                    "speedup": res["numpy"][0] / max(res["numba"][0], 1e-9),
                    "agree": agree,
                }
            )
    finally:
        if saved is None:
            os.environ.pop("BRACEFORGE_BACKEND", None)
        else:
            os.environ["BRACEFORGE_BACKEND"] = saved
    print(f"{'kernel':<20}{'numba (s)':>12}{'numpy (s)':>12}{'speedup':>10}  agree")
    for r in rows:
        print(f"{r['kernel']:<20}{r['numba_s']:>12.4f}{r['numpy_s']:>12.4f}{r['speedup']:>10.1f}  {r['agree']}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
