"""Trigraded chain complexes: assembly, cohomology, truncation, caching.

Graph complexes store the free-graph degree ``2m e - (2m+1) v + m a + (m+1) b``
and every differential raises it by one.  Each complex carries a degree
*view* used when reporting: ``fG`` (as stored), ``G`` (stored - 1) and
``GC`` (1 - stored, the graded dual).
"""
from __future__ import annotations

import hashlib
import json
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable

from . import __version__
from .exactla import SparseExactMatrix, dump_matrix, load_matrix, rank as _rank

KINDS = ("fG", "G", "GC", "CE", "GCex", "CEex", "ppICG", "pICG", "ICG", "Gstable", "Fstable", "Cstable")
GRAPH_KINDS = ("fG", "G", "GC", "CE", "GCex")
HAIRY = ("ppICG", "pICG", "ICG")
STABLE = ("Gstable", "Fstable", "Cstable")

VIEWS = {
    "fG": (lambda k: k, lambda k: k),
    "G": (lambda k: k - 1, lambda k: k + 1),
    "GC": (lambda k: 1 - k, lambda k: 1 - k),
}

NATIVE_VIEW = {"fG": "fG", "CE": "fG", "CEex": "fG", "G": "G", "GC": "GC", "GCex": "GC"}


@dataclass(frozen=True, order=True)
class Bidegree:
    W: int
    H: int


@dataclass
class TriGradedComplex:
    """One graded piece: degree -> ordered basis, degree -> matrix to degree + 1.

    Degrees are stored so that the differential raises them; ``view`` names the
    reporting convention.  ``weights`` optionally tags each basis element with
    a torus weight preserved by the differential.
    """

    kind: str
    params: dict
    bidegree: Bidegree | None
    bases: dict[int, list]
    diffs: dict[int, SparseExactMatrix]
    weights: dict[int, list] | None = None
    view: str = "fG"
    labels: Callable[[object], str] = str

    def degrees(self) -> list[int]:
        return sorted(k for k, b in self.bases.items() if b)

    def dim(self, k: int) -> int:
        return len(self.bases.get(k, []))

    def matrix(self, k: int) -> SparseExactMatrix:
        """Differential from stored degree k to k+1 (zero matrix if absent)."""
        M = self.diffs.get(k)
        if M is None:
            return SparseExactMatrix.zero(self.dim(k + 1), self.dim(k))
        return M

    def report_degree(self, k: int) -> int:
        return VIEWS[self.view][0](k)

    def stored_degree(self, k: int) -> int:
        return VIEWS[self.view][1](k)

    def check_dsq(self) -> list[int]:
        """Stored degrees k where d_{k+1} d_k is nonzero."""
        bad = []
        for k in self.degrees():
            if self.dim(k + 1) and self.dim(k + 2):
                if not (self.matrix(k + 1) @ self.matrix(k)).is_zero():
                    bad.append(k)
        return bad

    def validate(self) -> None:
        for k, M in self.diffs.items():
            if M.shape != (self.dim(k + 1), self.dim(k)):
                raise ValueError(f"matrix at degree {k} has shape {M.shape}, expected {(self.dim(k + 1), self.dim(k))}")
        bad = self.check_dsq()
        if bad:
            raise ValueError(f"d^2 != 0 at stored degrees {bad}")

    def total_dim(self) -> int:
        return sum(len(b) for b in self.bases.values())

    def reported(self) -> TriGradedComplex:
        """Explicit complex in the reporting convention (transposes for the dual view)."""
        if self.view != "GC":
            f = VIEWS[self.view][0]
            return TriGradedComplex(
                self.kind,
                dict(self.params),
                self.bidegree,
                {f(k): list(b) for k, b in self.bases.items()},
                {f(k): M for k, M in self.diffs.items()},
                None if self.weights is None else {f(k): list(w) for k, w in self.weights.items()},
                "fG",
                self.labels,
            )
        bases = {1 - k: list(b) for k, b in self.bases.items()}
        diffs = {}
        for k, M in self.diffs.items():
            # d: stored k -> k+1 dualizes to reported -k -> 1-k
            diffs[-k] = M.transpose()
        w = None if self.weights is None else {1 - k: list(v) for k, v in self.weights.items()}
        return TriGradedComplex(self.kind, dict(self.params), self.bidegree, bases, diffs, w, "fG", self.labels)


@dataclass
class BettiTable:
    dims: dict[tuple[int, int, int], int] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def nonzero(self) -> dict[tuple[int, int, int], int]:
        return {k: v for k, v in sorted(self.dims.items()) if v}

    def at(self, W: int, H: int) -> dict[int, int]:
        return {k: v for (w, h, k), v in sorted(self.dims.items()) if w == W and h == H and v}

    def merge(self, other: BettiTable) -> BettiTable:
        out = BettiTable(dict(self.dims), dict(self.meta))
        for k, v in other.dims.items():
            out.dims[k] = out.dims.get(k, 0) + v
        return out

    def euler(self, W: int, H: int) -> int:
        return sum((-1) ** (k % 2) * v for (w, h, k), v in self.dims.items() if (w, h) == (W, H))


def _blocked_rank(M: SparseExactMatrix, wcols: list | None, wrows: list | None, mode: str) -> int:
    if not M.entries:
        return 0
    if wcols is None or wrows is None:
        return _rank(M, mode)
    groups: dict[object, tuple[list[int], list[int]]] = {}
    for c, w in enumerate(wcols):
        groups.setdefault(w, ([], []))[1].append(c)
    for r, w in enumerate(wrows):
        groups.setdefault(w, ([], []))[0].append(r)
    for (r, c) in M.entries:
        if wrows[r] != wcols[c]:
            raise ValueError("differential does not preserve torus weight")
    total = 0
    for rows, cols in groups.values():
        if rows and cols:
            sub = M.submatrix(rows, cols)
            if sub.entries:
                total += _rank(sub, mode)
    return total


def stored_betti(cx: TriGradedComplex, mode: str = "certified", blocked: bool = True) -> dict[int, int]:
    """Cohomology dimensions in stored degrees."""
    ranks: dict[int, int] = {}
    w = cx.weights if blocked else None
    for k in cx.degrees():
        if cx.dim(k + 1):
            ranks[k] = _blocked_rank(
                cx.matrix(k), None if w is None else w.get(k), None if w is None else w.get(k + 1), mode
            )
    out = {}
    for k in cx.degrees():
        b = cx.dim(k) - ranks.get(k, 0) - ranks.get(k - 1, 0)
        if b < 0:
            raise ArithmeticError(f"negative Betti number at degree {k}")
        out[k] = b
    return out


def betti_by_weight(cx: TriGradedComplex, mode: str = "certified", view: str | None = None) -> dict[int, Counter]:
    """Cohomology dimension per torus weight, keyed by reported degree."""
    if cx.weights is None:
        raise ValueError("complex carries no torus-weight tags")
    f = VIEWS[view or cx.view][0]
    ranks: dict[tuple[int, object], int] = {}
    for k in cx.degrees():
        if not cx.dim(k + 1):
            continue
        M = cx.matrix(k)
        wc, wr = cx.weights[k], cx.weights[k + 1]
        groups: dict[object, tuple[list[int], list[int]]] = {}
        for c, w in enumerate(wc):
            groups.setdefault(w, ([], []))[1].append(c)
        for r, w in enumerate(wr):
            groups.setdefault(w, ([], []))[0].append(r)
        for w, (rows, cols) in groups.items():
            if rows and cols:
                sub = M.submatrix(rows, cols)
                ranks[(k, w)] = _rank(sub, mode) if sub.entries else 0
    out: dict[int, Counter] = {}
    for k in cx.degrees():
        cnt = Counter(cx.weights[k])
        res = Counter()
        for w, n in cnt.items():
            b = n - ranks.get((k, w), 0) - ranks.get((k - 1, w), 0)
            if b < 0:
                raise ArithmeticError(f"negative Betti number at degree {k}, weight {w}")
            if b:
                res[w] = b
        if res:
            out[f(k)] = res
    return out


def betti(cx: TriGradedComplex, mode: str = "certified", blocked: bool = True, view: str | None = None) -> BettiTable:
    """Cohomology per (W, H, k) with k in the complex's view (or the given one)."""
    view = view or cx.view
    f = VIEWS[view][0]
    W, H = (cx.bidegree.W, cx.bidegree.H) if cx.bidegree else (None, None)
    dims = {}
    for k, b in stored_betti(cx, mode, blocked).items():
        dims[(W, H, f(k))] = b
    meta = dict(cx.params, kind=cx.kind, view=view)
    return BettiTable(dims, meta)


def euler_characteristic(cx: TriGradedComplex, bidegree: Bidegree | None = None) -> int:
    """Alternating sum of basis sizes over stored degrees."""
    if bidegree is not None and cx.bidegree is not None and bidegree != cx.bidegree:
        return 0
    return sum((-1) ** (k % 2) * len(b) for k, b in cx.bases.items())


# ----------------------------------------------------------------------------
# truncation


def _rref_kernel(M: SparseExactMatrix) -> tuple[list[int], list[dict[int, Fraction]]]:
    """Free columns and the kernel basis of M; vector i is 1 at free column i and 0 at the others."""
    rows = [dict(r) for r in M.rows().values()]
    pivots: dict[int, dict[int, Fraction]] = {}
    for row in rows:
        row = {c: Fraction(v) for c, v in row.items() if v}
        for pc, prow in pivots.items():
            if pc in row:
                f = row[pc]
                for c, v in prow.items():
                    nv = row.get(c, 0) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        if not row:
            continue
        pc = min(row)
        inv = 1 / row[pc]
        row = {c: v * inv for c, v in row.items()}
        for oc, orow in pivots.items():
            if pc in orow:
                f = orow[pc]
                for c, v in row.items():
                    nv = orow.get(c, 0) - f * v
                    if nv:
                        orow[c] = nv
                    else:
                        orow.pop(c, None)
        pivots[pc] = row
    free = [c for c in range(M.ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = {fc: Fraction(1)}
        for pc, prow in pivots.items():
            if fc in prow:
                vec[pc] = -prow[fc]
        basis.append(vec)
    return free, basis


def truncate(cx: TriGradedComplex, alpha, beta, cutoff=None) -> TriGradedComplex:
    """tru^{<= alpha W + beta H} in the complex's reporting convention.

    ``cutoff`` overrides the linear cutoff, for complexes without a bidegree.
    """
    rep = cx.reported()
    W, H = (cx.bidegree.W, cx.bidegree.H) if cx.bidegree else (0, 0)
    cut = Fraction(cutoff) if cutoff is not None else Fraction(alpha) * W + Fraction(beta) * H
    bases, diffs, weights = {}, {}, {} if rep.weights is not None else None
    for k in rep.degrees():
        if k < cut:
            bases[k] = list(rep.bases[k])
            if weights is not None:
                weights[k] = list(rep.weights[k])
    top = int(cut) if cut.denominator == 1 else None
    for k in list(bases):
        if k + 1 in bases:
            diffs[k] = rep.matrix(k)
    if top is not None and rep.dim(top):
        free, kernel = _rref_kernel(rep.matrix(top))
        bases[top] = [("cocycle", tuple(sorted(v.items()))) for v in kernel]
        if weights is not None:
            weights[top] = [rep.weights[top][c] for c in free]
        if top - 1 in bases and kernel:
            # the image of d lies in the kernel; its coordinates are its values at the free columns
            pos = {c: i for i, c in enumerate(free)}
            M = rep.matrix(top - 1)
            entries = {}
            for (r, c), v in M.entries.items():
                if r in pos:
                    entries[(pos[r], c)] = v
            diffs[top - 1] = SparseExactMatrix(len(kernel), rep.dim(top - 1), entries)
    return TriGradedComplex(cx.kind, dict(cx.params, truncated=str(cut)), cx.bidegree, bases, diffs, weights, "fG")


def truncated_cohomology(cx: TriGradedComplex, alpha, beta, mode: str = "certified") -> BettiTable:
    return betti(truncate(cx, alpha, beta), mode)


# ----------------------------------------------------------------------------
# assembly


def _graph_complex(kind: str, g: int, m: int, bd: Bidegree) -> TriGradedComplex:
    from .diff import d_total, differential_matrix
    from .graphs import degree, enumerate_basis

    connected = kind in ("G", "GC", "GCex")
    basis = enumerate_basis(g, m, bd.W, bd.H, connected) if bd.W >= 1 or not connected else []
    bases: dict[int, list] = {}
    for b in basis:
        bases.setdefault(degree(b), []).append(b)
    diffs = {}
    for k in sorted(bases):
        if k + 1 in bases:
            diffs[k] = differential_matrix(bases[k], bases[k + 1], lambda x: d_total(x, connected))
    weights = {k: [b.torus_weight() for b in v] for k, v in bases.items()}
    view = NATIVE_VIEW.get(kind, "fG")
    return TriGradedComplex(kind, {"g": g, "m": m}, bd, bases, diffs, weights, view, lambda b: b.serialize())


def _hairy_complex(kind: str, n: int, r: int, C: int, allow_empty: bool = False) -> TriGradedComplex:
    from .diff import differential_matrix, hairy_split
    from .graphs import enumerate_hairy, hairy_degree

    bases: dict[int, list] = {}
    for h in enumerate_hairy(kind, n, r, C, allow_empty):
        bases.setdefault(hairy_degree(h), []).append(h)
    diffs = {}
    for k in sorted(bases):
        if k + 1 in bases:
            diffs[k] = differential_matrix(bases[k], bases[k + 1], lambda x: hairy_split(x, kind))
    return TriGradedComplex(kind, {"n": n, "r": r, "C": C}, None, bases, diffs, None, "fG", lambda h: h.serialize())


def assemble_complex(kind: str, g: int | None = None, m: int | None = None, bidegree: Bidegree | None = None, **extra) -> TriGradedComplex:
    """Build one graded piece of the named complex."""
    if kind not in KINDS:
        raise ValueError(f"unknown complex kind {kind!r}")
    if kind in HAIRY:
        if g is not None or m is not None or bidegree is not None:
            raise ValueError(f"{kind} takes (n, r, C), not (g, m, W, H)")
        try:
            n, r, C = extra["n"], extra["r"], extra["C"]
        except KeyError as exc:
            raise ValueError(f"{kind} needs n, r and C") from exc
        return _hairy_complex(kind, n, r, C, extra.get("allow_empty", False))
    if kind in STABLE:
        from .stable import build_stable

        if g is not None:
            raise ValueError(f"{kind} is genus independent; use build_finite_aux for finite g")
        return build_stable(kind[0], extra["M"], extra["N"], bidegree.W, bidegree.H, extra.get("transformed", False))
    if extra:
        raise ValueError(f"{kind} does not take {sorted(extra)}")
    if g is None or m is None or bidegree is None:
        raise ValueError(f"{kind} needs g, m and a bidegree")
    if g < 0 or m < 1:
        raise ValueError("need g >= 0 and m >= 1")
    if kind == "CE":
        from .koszulce import ce_complex

        return ce_complex(g, m, bidegree.W, bidegree.H)
    if kind == "GCex":
        from .osp import extend_complex

        return extend_complex(_graph_complex("GC", g, m, bidegree))
    if kind == "CEex":
        from .stable import ce_extended_complex

        return ce_extended_complex(g, m, bidegree.W, bidegree.H)
    return _graph_complex(kind, g, m, bidegree)


# ----------------------------------------------------------------------------
# serialization and cache


@lru_cache(maxsize=1)
def code_version() -> str:
    h = hashlib.sha256(__version__.encode())
    root = Path(__file__).parent
    for p in sorted(root.rglob("*.py")):
        h.update(p.relative_to(root).as_posix().encode())
        h.update(p.read_bytes())
    return h.hexdigest()[:16]


def complex_to_dict(cx: TriGradedComplex) -> dict:
    return {
        "kind": cx.kind,
        "params": cx.params,
        "bidegree": None if cx.bidegree is None else [cx.bidegree.W, cx.bidegree.H],
        "view": cx.view,
        "version": code_version(),
        "bases": {str(k): [cx.labels(b) for b in v] for k, v in sorted(cx.bases.items())},
        "diffs": {str(k): dump_matrix(M) for k, M in sorted(cx.diffs.items())},
    }


def betti_to_dict(bt: BettiTable) -> dict:
    return {"meta": bt.meta, "dims": [[W, H, k, v] for (W, H, k), v in sorted(bt.dims.items())]}


def betti_from_dict(d: dict) -> BettiTable:
    return BettiTable({(W, H, k): v for W, H, k, v in d["dims"]}, d["meta"])


def load_matrices(d: dict) -> dict[int, SparseExactMatrix]:
    return {int(k): load_matrix(v) for k, v in d["diffs"].items()}


def cache_dir() -> Path:
    return Path(os.environ.get("ARTIFACT_CACHE_DIR", Path.home() / ".cache" / "artifact"))


def cache_key(kind: str, g, m, W, H, extra: dict | None = None) -> str:
    payload = json.dumps([kind, g, m, W, H, extra or {}, code_version()], sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:24]


def cached_betti(kind: str, g: int, m: int, W: int, H: int, mode: str = "certified", use_cache: bool = True) -> BettiTable:
    """Betti table of one piece, memoized on disk with per-key file locking."""
    from filelock import FileLock

    if not use_cache:
        return betti(assemble_complex(kind, g, m, Bidegree(W, H)), mode)
    d = cache_dir()
    d.mkdir(parents=True, exist_ok=True)
    key = cache_key(kind, g, m, W, H)
    path = d / f"{key}.json"
    with FileLock(str(path) + ".lock"):
        if path.exists():
            return betti_from_dict(json.loads(path.read_text())["betti"])
        cx = assemble_complex(kind, g, m, Bidegree(W, H))
        bt = betti(cx, mode)
        doc = {"key": [kind, g, m, W, H], "complex": complex_to_dict(cx), "betti": betti_to_dict(bt)}
        path.write_text(json.dumps(doc, sort_keys=True))
        return bt
