"""Compare the compiled modular rank kernel with the pure-Python fallback.

Usage: python benchmarks/bench_rank.py [--repeat 3]
"""
from __future__ import annotations

import argparse
import random
import timeit

from artifact.exactla import DENSE_CELL_LIMIT, KERNEL, SparseExactMatrix, _modp_py, _modular_triples
from artifact.gcore import Bidegree, assemble_complex

P = 2_147_483_629


def random_matrix(n: int, density: float, seed: int) -> SparseExactMatrix:
    rng = random.Random(seed)
    triples = [(r, c, rng.randint(-3, 3)) for r in range(n) for c in range(n) if rng.random() < density]
    return SparseExactMatrix.from_triples(n, n, [t for t in triples if t[2]])


def graph_matrix(g: int, W: int, H: int) -> SparseExactMatrix:
    cx = assemble_complex("fG", g, 1, Bidegree(W, H))
    return max(cx.diffs.values(), key=lambda M: len(M.entries))


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    try:
        from artifact.exactla._modp import rank_mod_p as compiled
    except ImportError:
        compiled = None
    cases = [(f"random {n}x{n} d={d}", random_matrix(n, d, n)) for n, d in ((100, 0.1), (200, 0.05), (400, 0.02), (400, 0.2))]
    cases.append(("graph differential g=2 W=3", graph_matrix(2, 3, 1)))
    cases.append(("graph differential g=4 W=3", graph_matrix(4, 3, 1)))
    print(f"active kernel: {KERNEL}")
    print(f"dense kernel used up to {DENSE_CELL_LIMIT} cells")
    print(f"{'case':28} {'shape':>13} {'nnz':>7} {'python ms':>10} {'cython ms':>10} {'speedup':>8} {'used':>7}")
    for name, M in cases:
        tr = _modular_triples(M, P)
        args_ = (M.nrows, M.ncols, tr, P)
        t_py = min(timeit.repeat(lambda: _modp_py.rank_mod_p(*args_), number=1, repeat=args.repeat))
        r_py = _modp_py.rank_mod_p(*args_)
        if compiled is None:
            print(f"{name:28} {str(M.shape):>13} {len(tr):>7} {t_py * 1e3:10.2f} {'n/a':>10} {'n/a':>8}")
            continue
        t_cy = min(timeit.repeat(lambda: compiled(*args_), number=1, repeat=args.repeat))
        if compiled(*args_) != r_py:
            raise SystemExit(f"kernels disagree on {name}")
        used = "cython" if M.nrows * M.ncols <= DENSE_CELL_LIMIT else "python"
        print(f"{name:28} {str(M.shape):>13} {len(tr):>7} {t_py * 1e3:10.2f} {t_cy * 1e3:10.2f} {t_py / t_cy:7.1f}x {used:>7}")


if __name__ == "__main__":
    main()
