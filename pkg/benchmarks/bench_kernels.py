"""Compare the compiled coset kernels with the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--json]
"""
from __future__ import annotations

import argparse
import json
import time

import numpy as np

from rslv.cosets import _kernels_py
from rslv.cosets.linalg import embed, flatten, gln_generators

try:
    from rslv.cosets import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

CASES = [(2, 3), (2, 5), (3, 2)]


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench(impl, n: int, q: int, repeat: int) -> dict:
    size = n + 1
    gens = [flatten(embed(x, size)) for x in gln_generators(n, q)]
    codes = impl.enumerate_pgl(size, q)
    return {
        "enumerate": _best(lambda: impl.enumerate_pgl(size, q), repeat),
        "classify": _best(lambda: impl.classify_codes(codes, size, q), repeat),
        "orbits": _best(lambda: impl.orbit_labels(codes, size, q, gens, gens), repeat),
        "index": _best(lambda: impl.count_gl_and_k0(size, q, 1), repeat),
        "elements": int(len(codes)),
        "checksum": int(np.asarray(impl.classify_codes(codes, size, q)[0]).sum()),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--json", action="store_true", help="print machine-readable results")
    args = parser.parse_args()
    if _kernels_c is None:
        raise SystemExit("compiled kernels unavailable; build with `pip install -e . --no-build-isolation`")
    rows = []
    for n, q in CASES:
        fast = bench(_kernels_c, n, q, args.repeat)
        slow = bench(_kernels_py, n, q, args.repeat)
        if fast["checksum"] != slow["checksum"]:
            raise SystemExit(f"kernels disagree for n={n}, q={q}")
        for op in ("enumerate", "classify", "orbits", "index"):
            rows.append({"n": n, "q": q, "op": op, "elements": fast["elements"],
                         "compiled_s": fast[op], "python_s": slow[op], "speedup": slow[op] / fast[op]})
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'n':>2} {'q':>2} {'op':<10} {'elements':>9} {'compiled':>10} {'python':>10} {'speedup':>8}")
    for r in rows:
        print(f"{r['n']:>2} {r['q']:>2} {r['op']:<10} {r['elements']:>9} "
              f"{r['compiled_s']:>9.4f}s {r['python_s']:>9.4f}s {r['speedup']:>7.1f}x")


if __name__ == "__main__":
    main()
