"""Compare the compiled and pure-Python finite-field kernels.

    python benchmarks/bench_fp_scan.py [--primes 7,11,13] [--repeat 3]

Workload: the exhaustive P^4(F_p) scan that ``phi-check`` runs for a quartic
threefold with a small deformation, plus mod-p ranks of random matrices.
"""
from __future__ import annotations

import argparse
import random
import time
from fractions import Fraction

from hypertangent import _fp_py, kernels
from hypertangent.fibers import _mod_p, functional_forms, random_alpha
from hypertangent.tensors import fermat_tensor

try:
    from hypertangent import _fp as compiled
except ImportError:
    compiled = None


def scan_inputs(p: int):
    q = fermat_tensor(4, 4)
    alpha = random_alpha(4, 4, seed=1, scale=Fraction(1))
    polys = []
    for f in [dict(q.entries)] + functional_forms(q, alpha):
        polys.append({m: _mod_p(Fraction(c), p) for m, c in f.items()})
    return polys


def best_of(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", default="7,11,13")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = [("python", _fp_py)] + ([("cython", compiled)] if compiled else [])
    if compiled is None:
        print("compiled extension not built; showing the Python timings only")

    print(f"{'workload':<28}{'backend':<10}{'seconds':>10}{'speedup':>10}")
    for p in (int(x) for x in args.primes.split(",")):
        polys = scan_inputs(p)
        base = None
        results = set()
        for name, impl in impls:
            secs, out = best_of(lambda: kernels.projective_common_zeros(polys, 5, p, impl=impl), args.repeat)
            results.add(repr(out))
            base = base or secs
            print(f"{'P^4(F_' + str(p) + ') scan':<28}{name:<10}{secs:>10.4f}{base / secs:>9.1f}x")
        assert len(results) == 1, "backends disagree"

    rng = random.Random(0)
    rows = [[rng.randint(-50, 50) for _ in range(120)] for _ in range(120)]
    base = None
    ranks = set()
    for name, impl in impls:
        secs, r = best_of(lambda: kernels.rank_mod_p(rows, 120, 10007, impl=impl), args.repeat)
        ranks.add(r)
        base = base or secs
        print(f"{'rank 120x120 mod 10007':<28}{name:<10}{secs:>10.4f}{base / secs:>9.1f}x")
    assert len(ranks) == 1, "backends disagree"


if __name__ == "__main__":
    main()
