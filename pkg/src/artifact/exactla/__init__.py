"""Exact sparse linear algebra over the rationals.

Matrices are stored as coordinate dictionaries of ``Fraction`` entries.
Ranks are computed either by fraction-free integer elimination or by
elimination modulo several word-size primes with a rational spot check.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable

from . import _modp_py

_dense_kernel = None
if not os.environ.get("ARTIFACT_PURE_PYTHON"):
    try:
        from ._modp import rank_mod_p as _dense_kernel
    except ImportError:
        pass
KERNEL = "python" if _dense_kernel is None else "cython"
# the compiled kernel eliminates a dense copy; beyond this many cells the sparse one wins
DENSE_CELL_LIMIT = 2_000_000


def _rank_mod_p_kernel(nrows: int, ncols: int, entries, p: int) -> int:
    if _dense_kernel is not None and nrows * ncols <= DENSE_CELL_LIMIT:
        return _dense_kernel(nrows, ncols, entries, p)
    return _modp_py.rank_mod_p(nrows, ncols, entries, p)

__all__ = [
    "SparseExactMatrix",
    "UncertifiedRank",
    "rank_exact",
    "rank_mod_p",
    "rank_certified",
    "betti_pair",
    "dump_matrix",
    "load_matrix",
    "KERNEL",
]


class UncertifiedRank(Exception):
    """Modular evidence was inconclusive."""


@dataclass
class SparseExactMatrix:
    nrows: int
    ncols: int
    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.nrows and 0 <= c < self.ncols):
                raise IndexError(f"entry ({r},{c}) outside {self.nrows}x{self.ncols}")
            v = Fraction(v)
            if v:
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_triples(cls, nrows: int, ncols: int, triples: Iterable[tuple[int, int, object]]) -> SparseExactMatrix:
        entries: dict[tuple[int, int], Fraction] = {}
        for r, c, v in triples:
            if (r, c) in entries:
                raise ValueError(f"duplicate entry ({r},{c})")
            entries[(r, c)] = Fraction(v)
        return cls(nrows, ncols, entries)

    @classmethod
    def from_dense(cls, rows: list[list]) -> SparseExactMatrix:
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls(nrows, ncols, {(r, c): Fraction(v) for r, row in enumerate(rows) for c, v in enumerate(row) if v})

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> SparseExactMatrix:
        return cls(nrows, ncols, {})

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> SparseExactMatrix:
        return SparseExactMatrix(self.ncols, self.nrows, {(c, r): v for (r, c), v in self.entries.items()})

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def rows(self) -> dict[int, dict[int, Fraction]]:
        out: dict[int, dict[int, Fraction]] = {}
        for (r, c), v in self.entries.items():
            out.setdefault(r, {})[c] = v
        return out

    def submatrix(self, rows: list[int], cols: list[int]) -> SparseExactMatrix:
        rmap = {r: i for i, r in enumerate(rows)}
        cmap = {c: j for j, c in enumerate(cols)}
        return SparseExactMatrix(
            len(rows),
            len(cols),
            {(rmap[r], cmap[c]): v for (r, c), v in self.entries.items() if r in rmap and c in cmap},
        )

    def __matmul__(self, other: SparseExactMatrix) -> SparseExactMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other.rows()
        acc: dict[tuple[int, int], Fraction] = {}
        for (r, k), v in self.entries.items():
            for c, w in orows.get(k, {}).items():
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return SparseExactMatrix(self.nrows, other.ncols, acc)

    def __add__(self, other: SparseExactMatrix) -> SparseExactMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        acc = dict(self.entries)
        for k, v in other.entries.items():
            acc[k] = acc.get(k, 0) + v
        return SparseExactMatrix(self.nrows, self.ncols, acc)

    def __neg__(self) -> SparseExactMatrix:
        return SparseExactMatrix(self.nrows, self.ncols, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: SparseExactMatrix) -> SparseExactMatrix:
        return self + (-other)

    def scale(self, s) -> SparseExactMatrix:
        return SparseExactMatrix(self.nrows, self.ncols, {k: v * s for k, v in self.entries.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries


def _integer_rows(M: SparseExactMatrix) -> list[dict[int, int]]:
    out = []
    for row in M.rows().values():
        den = 1
        for v in row.values():
            den = lcm(den, v.denominator)
        irow = {c: int(v * den) for c, v in row.items()}
        out.append(_primitive(irow))
    return out


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def rank_exact(M: SparseExactMatrix) -> int:
    """Rank over Q by fraction-free elimination with Markowitz pivoting."""
    rows = {i: r for i, r in enumerate(_integer_rows(M)) if r}
    colcount: dict[int, int] = {}
    for r in rows.values():
        for c in r:
            colcount[c] = colcount.get(c, 0) + 1
    rank = 0
    while rows:
        best = None
        for i in sorted(rows):
            rc = len(rows[i]) - 1
            for c in rows[i]:
                cost = (rc * (colcount[c] - 1), i, c)
                if best is None or cost < best:
                    best = cost
            if best[0] == 0:
                break
        _, pi, pc = best
        prow = rows.pop(pi)
        for c in prow:
            colcount[c] -= 1
        rank += 1
        pv = prow[pc]
        for i in [i for i, r in rows.items() if pc in r]:
            row = rows[i]
            a = row[pc]
            for c in row:
                colcount[c] -= 1
            new = {c: pv * v for c, v in row.items()}
            for c, v in prow.items():
                nv = new.get(c, 0) - a * v
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            if new:
                new = _primitive(new)
                rows[i] = new
                for c in new:
                    colcount[c] = colcount.get(c, 0) + 1
            else:
                del rows[i]
    return rank


def _modular_triples(M: SparseExactMatrix, p: int) -> list[tuple[int, int, int]] | None:
    out = []
    for (r, c), v in M.entries.items():
        if v.denominator % p == 0:
            return None
        out.append((r, c, v.numerator * pow(v.denominator, -1, p) % p))
    return out


def rank_mod_p(M: SparseExactMatrix, p: int, kernel=None) -> int:
    triples = _modular_triples(M, p)
    if triples is None:
        raise UncertifiedRank(f"denominator divisible by {p}")
    return (kernel or _rank_mod_p_kernel)(M.nrows, M.ncols, triples, p)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_primes(count: int, rng: random.Random) -> list[int]:
    out: list[int] = []
    while len(out) < count:
        c = rng.randrange(2**31 - 2**24, 2**31) | 1
        while not _is_prime(c):
            c -= 2
        if c not in out:
            out.append(c)
    return out


def certify_modular(M: SparseExactMatrix, primes: list[int], rng: random.Random, sample: int = 24) -> int:
    """Modular rank backed by a rational spot check; raises UncertifiedRank."""
    ranks = []
    for p in primes:
        try:
            ranks.append((rank_mod_p(M, p), p))
        except UncertifiedRank:
            continue
    if len(ranks) < 2:
        raise UncertifiedRank("fewer than two usable primes")
    ranks.sort(reverse=True)
    if ranks[0][0] != ranks[1][0]:
        raise UncertifiedRank(f"modular ranks disagree: {ranks}")
    r, p = ranks[0]
    # a random row subsample must have the same rank over Q and mod p
    row_ids = sorted({rc[0] for rc in M.entries})
    if row_ids:
        pick = sorted(rng.sample(row_ids, min(sample, len(row_ids))))
        sub = M.submatrix(pick, list(range(M.ncols)))
        if rank_exact(sub) != rank_mod_p(sub, p):
            raise UncertifiedRank("spot check failed")
    return r


def rank_certified(M: SparseExactMatrix, primes: list[int] | None = None, seed: int = 0) -> int:
    """Rank modulo several primes; exact fallback when not certified."""
    if not M.entries:
        return 0
    rng = random.Random(seed)
    if primes is None:
        primes = random_primes(3, rng)
    try:
        return certify_modular(M, primes, rng)
    except UncertifiedRank:
        return rank_exact(M)


def rank(M: SparseExactMatrix, mode: str = "certified") -> int:
    if mode == "exact":
        return rank_exact(M)
    if mode == "certified":
        return rank_certified(M)
    raise ValueError(f"unknown rank mode {mode!r}")


def betti_pair(d_in: SparseExactMatrix, d_out: SparseExactMatrix, mode: str = "certified", check: bool = True) -> int:
    """dim ker(d_out) - rank(d_in) at the middle space."""
    if d_out.ncols != d_in.nrows:
        raise ValueError(f"dimension mismatch: d_out has {d_out.ncols} columns, d_in has {d_in.nrows} rows")
    if check and not (d_out @ d_in).is_zero():
        raise ValueError("composite d_out . d_in is nonzero")
    b = d_out.ncols - rank(d_out, mode) - rank(d_in, mode)
    if b < 0:
        raise ArithmeticError(f"negative Betti number {b}")
    return b


def dump_matrix(M: SparseExactMatrix) -> str:
    lines = [f"{M.nrows} {M.ncols} {M.nnz}"]
    for (r, c), v in sorted(M.entries.items()):
        lines.append(f"{r} {c} {v.numerator} {v.denominator}")
    return "\n".join(lines) + "\n"


def load_matrix(text: str) -> SparseExactMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    nrows, ncols, nnz = map(int, lines[0].split())
    if len(lines) - 1 != nnz:
        raise ValueError(f"expected {nnz} entries, found {len(lines) - 1}")
    triples = []
    for ln in lines[1:]:
        r, c, num, den = map(int, ln.split())
        triples.append((r, c, Fraction(num, den)))
    return SparseExactMatrix.from_triples(nrows, ncols, triples)
