"""Stable-range graph complexes with solid and dashed edges.

A ``TwoColoredGraph`` has internal vertices (odd markers), external slots
(outgoing ``e+k`` carrying a copy of V, incoming ``e-k`` carrying V*) and, in
kind C, x-vertices standing for generators of the dual of the nilpotent osp
part.  Solid edges are even with flip sign -1.  Dashed edges are directed and
stored in an ordered *edge word*: a dashed edge carries the letter ``a``
(parity m) at an internal tail and the letter ``b`` (parity m+1) at an internal
head, in that order.  Relabeling vertices only permutes the markers, so the
orientation sign of an isomorphism is the marker sign times the Koszul sign of
the reordered edge word.

Specialization to genus g replaces dashed edge k by (-1)^m sum_i a_i (x) b_i
with the letters substituted in place.  In the transformed variant the dashed
edges between distinct internal vertices are replaced by the sum (``p``) and
difference (``m``) of the two directions.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations, product
from math import ceil

from ._canon import EdgeType, canonical_order, perm_koszul_sign
from .diff import LinearCombination, d_total, differential_matrix
from .exactla import SparseExactMatrix, rank
from .gcore import Bidegree, TriGradedComplex
from .graphs import ZERO, CanonicalGraph, DecoratedGraph, _components, alpha, beta, canonicalize, enumerate_basis, multigraphs
from .osp import a_symmetry, act_on_basis, osp_nil_basis

STABLE_KINDS = ("G", "F", "C")
INT, OUT, IN, X = "int", "out", "in", "x"


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


# ----------------------------------------------------------------------------
# two-colored complexes on a fixed base graph


def cgamma_complex(edges, nverts: int) -> TriGradedComplex:
    """Dash patterns on a connected base graph modulo those whose solid part does not span connectedly.

    Solid edges have degree -1; d replaces one solid edge by a dashed one with
    the Koszul sign of the solid edges before it.
    """
    edges = [tuple(e) for e in edges]
    if nverts < 1 or len(_components(nverts, edges)) != 1:
        raise ValueError("base graph must be connected with at least one vertex")
    k = len(edges)

    def admissible(mask):
        return len(_components(nverts, [e for t, e in enumerate(edges) if mask[t]])) == 1

    bases: dict[int, list] = {}
    for mask in product((0, 1), repeat=k):
        if admissible(mask):
            bases.setdefault(-sum(mask), []).append(mask)
    diffs = {}
    for deg in sorted(bases):
        if deg + 1 not in bases:
            continue

        def d(mask):
            out = LinearCombination()
            seen = 0
            for t in range(k):
                if mask[t]:
                    new = mask[:t] + (0,) + mask[t + 1 :]
                    if admissible(new):
                        out.add(new, _sgn(seen))
                    seen += 1
            return out

        diffs[deg] = differential_matrix(bases[deg], bases[deg + 1], d)
    label = lambda mask: "".join("s" if x else "d" for x in mask)
    return TriGradedComplex("Cgamma", {"edges": tuple(edges), "N": nverts}, None, bases, diffs, None, "fG", label)


# ----------------------------------------------------------------------------
# the graphs


@dataclass(frozen=True)
class TwoColoredGraph:
    """Endpoints are ("int", i), ("out", k), ("in", k) or ("x", c, leg).

    ``dashed`` is the ordered edge word of (type, tail, head) with type "d"
    (directed), "p" or "m" (sum / difference of both directions).
    """

    kind: str
    m: int
    M: int
    N: int
    n: int
    nx: int
    solid: tuple
    dashed: tuple
    transformed: bool = False

    def letters(self, e) -> tuple[int, int]:
        t, tail, head = e
        if t != "d":
            return 1, 1
        return int(tail[0] == INT), int(head[0] == INT)

    def parity(self, e) -> int:
        la, lb = self.letters(e)
        return (la * self.m + lb * (self.m + 1)) % 2

    def counts(self) -> tuple[int, int]:
        a = b = 0
        for e in self.dashed:
            la, lb = self.letters(e)
            a += la
            b += lb
        return a, b

    def degree(self) -> int:
        """Free-graph degree of any specialization: 2m e - (2m+1) v + m a + (m+1) b, plus 2 per x-vertex."""
        a, b = self.counts()
        m = self.m
        return 2 * m * len(self.solid) - (2 * m + 1) * self.n + m * a + (m + 1) * b + 2 * self.nx

    def weight(self) -> int:
        a, b = self.counts()
        return 2 * (len(self.solid) - self.n) + a + b

    def imbalance(self) -> int:
        a, b = self.counts()
        return a - b - 2 * self.nx

    def solid_connected(self) -> bool:
        return self.n >= 1 and len(_components(self.n, self.solid)) == 1

    def valences(self) -> list[int]:
        val = [0] * self.n
        for i, j in self.solid:
            val[i] += 1
            val[j] += 1
        for _, tail, head in self.dashed:
            for p in (tail, head):
                if p[0] == INT:
                    val[p[1]] += 1
        return val

    def serialize(self) -> str:
        parts = [f"s({_vname((INT, i))},{_vname((INT, j))})" for i, j in self.solid]
        tag = {"d": "d>", "p": "p", "m": "m"}
        parts += [f"{tag[t]}({_vname(a)},{_vname(b)})" for t, a, b in self.dashed]
        tr = ";t" if self.transformed else ""
        return f"{self.kind};m={self.m};M={self.M};N={self.N};n={self.n};x={self.nx}{tr};[{','.join(parts)}]"

    def __str__(self) -> str:
        return self.serialize()


def _vname(p) -> str:
    if p[0] == INT:
        return f"i{p[1]}"
    if p[0] == OUT:
        return f"e+{p[1]}"
    if p[0] == IN:
        return f"e-{p[1]}"
    return f"x{p[1]}.{p[2]}"


def _vparse(s: str):
    if s.startswith("i"):
        return (INT, int(s[1:]))
    if s.startswith("e+"):
        return (OUT, int(s[2:]))
    if s.startswith("e-"):
        return (IN, int(s[2:]))
    if s.startswith("x"):
        c, leg = s[1:].split(".")
        return (X, int(c), int(leg))
    raise ValueError(f"bad vertex tag {s!r}")


def parse_stable(text: str) -> TwoColoredGraph:
    head, body = text.rsplit(";[", 1)
    fields = head.split(";")
    kind = fields[0]
    kv = dict(f.split("=") for f in fields[1:] if "=" in f)
    transformed = "t" in fields[1:]
    solid, dashed = [], []
    body = body[:-1]
    if body:
        for part in body[:-1].split("),"):
            tag, ends = part.split("(")
            a, b = (_vparse(x) for x in ends.split(","))
            if tag == "s":
                solid.append((a[1], b[1]))
            elif tag == "d>":
                dashed.append(("d", a, b))
            elif tag == "d<":
                dashed.append(("d", b, a))
            elif tag in ("p", "m"):
                dashed.append((tag, a, b))
            else:
                raise ValueError(f"bad edge tag {tag!r}")
    return TwoColoredGraph(kind, int(kv["m"]), int(kv["M"]), int(kv["N"]), int(kv["n"]), int(kv["x"]), tuple(solid), tuple(dashed), transformed)


# ----------------------------------------------------------------------------
# canonical forms


def leg_swap_sign(m: int, convention: str = "cup") -> int:
    """Sign of exchanging the two legs of an x-vertex: the symmetry of the dual osp generators."""
    return a_symmetry(m, convention)


_STABLE_TYPES = {
    0: EdgeType(0, -1),
    1: EdgeType(0, 0),
    2: EdgeType(1, 0),
    3: EdgeType(0, 0),
    4: EdgeType(1, 0),
    5: EdgeType(0, 0),
    6: EdgeType(1, 0),
    7: EdgeType(1, 1),
    8: EdgeType(1, -1),
}


def _layout(gr: TwoColoredGraph):
    n, M, N = gr.n, gr.M, gr.N

    def idx(p):
        if p[0] == INT:
            return p[1]
        if p[0] == OUT:
            return n + p[1] - 1
        if p[0] == IN:
            return n + M + p[1] - 1
        return n + M + N + p[1]

    colors = [(0, 0)] * n + [(1, k) for k in range(1, M + 1)] + [(2, k) for k in range(1, N + 1)] + [(3, 0)] * gr.nx
    return idx, colors


def _decode(gr: TwoColoredGraph, pos: int):
    n, M, N = gr.n, gr.M, gr.N
    if pos < n:
        return (INT, pos)
    if pos < n + M:
        return (OUT, pos - n + 1)
    if pos < n + M + N:
        return (IN, pos - n - M + 1)
    return (X, pos - n - M - N)


def canonicalize_stable(gr: TwoColoredGraph, convention: str = "cup"):
    """Canonical representative with gr = sign * representative, or ZERO."""
    idx, colors = _layout(gr)
    tot = len(colors)
    vpar = [1] * gr.n + [0] * (tot - gr.n)
    sx = leg_swap_sign(gr.m, convention)
    best = None
    for mask in product((0, 1), repeat=gr.nx):
        edges = [(i, j, 0) for i, j in gr.solid]
        for e in gr.dashed:
            t, tail, head = e
            p = gr.parity(e)
            if t == "p":
                typ = 7
            elif t == "m":
                typ = 8
            elif head[0] == X:
                leg = head[2] ^ mask[head[1]]
                typ = 3 + 2 * leg + p
            else:
                typ = 1 + p
            edges.append((idx(tail), idx(head), typ))
        res = canonical_order(tot, colors, vpar, [()] * tot, [0] * tot, edges, _STABLE_TYPES)
        if res is None:
            return ZERO
        _, sign, key = res
        sign *= sx ** sum(mask)
        if best is None or key < best[0]:
            best = (key, sign)
        elif key == best[0] and sign != best[1]:
            return ZERO
    key, sign = best
    solid, dashed = [], []
    for typ, a, b in key:
        if typ == 0:
            solid.append((a, b))
            continue
        ta, tb = _decode(gr, a), _decode(gr, b)
        if typ in (7, 8):
            dashed.append(("p" if typ == 7 else "m", ta, tb))
        elif typ >= 3:
            dashed.append(("d", ta, (X, tb[1], (typ - 3) // 2)))
        else:
            dashed.append(("d", ta, tb))
    return CanonicalGraph(replace(gr, solid=tuple(solid), dashed=tuple(dashed)), sign)


# ----------------------------------------------------------------------------
# enumeration


def stable_bounds(kind: str, W: int) -> int:
    """Upper bound on decorations a + b."""
    return W + 2 if kind == "G" else 3 * W


def _count_matrices(rows: list[int | None], cols: list[int | None], total: int):
    """Nonnegative matrices with prescribed row/column sums (None = free) and total entry sum."""
    R, C = len(rows), len(cols)
    cells = [(r, c) for r in range(R) for c in range(C)]

    def rec(k, rowrem, colrem, left, acc):
        if k == len(cells):
            if left == 0 and all(x in (0, None) for x in rowrem) and all(x in (0, None) for x in colrem):
                yield dict(acc)
            return
        r, c = cells[k]
        cap = left
        if rowrem[r] is not None:
            cap = min(cap, rowrem[r])
        if colrem[c] is not None:
            cap = min(cap, colrem[c])
        for v in range(cap, -1, -1):
            if v:
                acc[(r, c)] = v
            rr = list(rowrem)
            cc = list(colrem)
            if rr[r] is not None:
                rr[r] -= v
            if cc[c] is not None:
                cc[c] -= v
            # a fixed row must be exhausted by its last cell
            if c == C - 1 and rr[r] not in (0, None):
                acc.pop((r, c), None)
                continue
            yield from rec(k + 1, rr, cc, left - v, acc)
            acc.pop((r, c), None)

    yield from rec(0, list(rows), list(cols), total, {})


def _raw_graphs(kind: str, m: int, M: int, N: int, W: int, H: int):
    if H != N - M:
        return
    for n in range(0, W + 3):
        for e in range(0, (W + 2 * n) // 2 + 1):
            D = W - 2 * (e - n)
            if D < 0 or 3 * n > 2 * e + D or D > stable_bounds(kind, W):
                continue
            if kind == "G" and (n < 1 or e < n - 1):
                continue
            if n == 0 and e:
                continue
            for nx in range(0, (D + M - N) // 2 + 1 if kind == "C" else 1):
                if (D + N + 2 * nx - M) % 2:
                    continue
                a = (D + N + 2 * nx - M) // 2
                b = D - a
                if a < 0 or b < 0:
                    continue
                for solid in multigraphs(n, e, kind == "G") if n else [()]:
                    yield from _dash_patterns(kind, m, M, N, n, nx, solid, a, b)


def _dash_patterns(kind, m, M, N, n, nx, solid, a, b):
    tails = [(INT, i) for i in range(n)] + [(OUT, k) for k in range(1, M + 1)]
    heads = [(INT, i) for i in range(n)] + [(IN, k) for k in range(1, N + 1)] + [(X, c) for c in range(nx)]
    rows = [None] * n + [1] * M
    cols = [None] * n + [1] * N + [2] * nx
    total = a + M
    sdeg = [0] * n
    for i, j in solid:
        sdeg[i] += 1
        sdeg[j] += 1
    for mat in _count_matrices(rows, cols, total):
        ra = sum(v for (r, c), v in mat.items() if r < n)
        cb = sum(v for (r, c), v in mat.items() if c < n)
        if ra != a or cb != b:
            continue
        val = list(sdeg)
        for (r, c), v in mat.items():
            if r < n:
                val[r] += v
            if c < n:
                val[c] += v
        if any(x < 3 for x in val):
            continue
        dashed = []
        legs = [0] * nx
        for (r, c), v in sorted(mat.items()):
            for _ in range(v):
                h = heads[c]
                if h[0] == X:
                    h = (X, h[1], legs[h[1]])
                    legs[h[1]] += 1
                dashed.append(("d", tails[r], h))
        yield TwoColoredGraph(kind, m, M, N, n, nx, tuple(solid), tuple(dashed))


def _transform_variants(gr: TwoColoredGraph):
    """All transformed graphs with the same underlying multiplicities."""
    keep, pairs = [], {}
    for e in gr.dashed:
        _, tail, head = e
        if tail[0] == INT and head[0] == INT and tail[1] != head[1]:
            key = tuple(sorted((tail[1], head[1])))
            pairs[key] = pairs.get(key, 0) + 1
        else:
            keep.append(e)
    plist = sorted(pairs.items())
    for split in product(*(range(t + 1) for _, t in plist)):
        new = list(keep)
        for ((u, v), t), p in zip(plist, split):
            new += [("p", (INT, u), (INT, v))] * p + [("m", (INT, u), (INT, v))] * (t - p)
        yield replace(gr, dashed=tuple(new), transformed=True)


def enumerate_stable(kind: str, M: int, N: int, W: int, H: int, transformed: bool = False, m: int = 1, convention: str = "cup") -> list:
    """Canonical basis of the stable complex in bidegree (W, H)."""
    if kind not in STABLE_KINDS:
        raise ValueError(f"unknown stable kind {kind!r}")
    seen = {}
    for raw in _raw_graphs(kind, m, M, N, W, H):
        variants = _transform_variants(raw) if transformed else [raw]
        for v in variants:
            c = canonicalize_stable(v, convention)
            if c is not ZERO:
                seen[c.graph.serialize()] = c.graph
    return [seen[k] for k in sorted(seen)]


# ----------------------------------------------------------------------------
# differentials


def _merge(gr: TwoColoredGraph, t: int):
    """Contract solid edge t; returns (graph, sign) or None when the result vanishes."""
    i, j = gr.solid[t]
    sign = _sgn(j + 1)

    def mp(x):
        if x == j:
            x = i
        return x - 1 if x > j else x

    def mpp(p):
        return (INT, mp(p[1])) if p[0] == INT else p

    solid = tuple((mp(a), mp(b)) for k, (a, b) in enumerate(gr.solid) if k != t)
    dashed = []
    for typ, tail, head in gr.dashed:
        nt, nh = mpp(tail), mpp(head)
        if typ != "d" and nt == nh:
            # both directions collapse to the same loop
            if typ == "m":
                return None
            sign *= 2
            typ = "d"
        dashed.append((typ, nt, nh))
    return replace(gr, n=gr.n - 1, solid=solid, dashed=tuple(dashed)), sign


def d_contract_stable(gr: TwoColoredGraph, convention: str = "cup") -> LinearCombination:
    out = LinearCombination()
    for t in range(len(gr.solid)):
        res = _merge(gr, t)
        if res is not None:
            out.add_canonical(canonicalize_stable(res[0], convention), res[1])
    return out


def d_cut_stable(gr: TwoColoredGraph, convention: str = "cup") -> LinearCombination:
    """Solid edge -> (-1)^|V| (i->j minus j->i), the new dashed edge first in the word."""
    out = LinearCombination()
    pre = _sgn(gr.n)
    for t, (i, j) in enumerate(gr.solid):
        rest = gr.solid[:t] + gr.solid[t + 1 :]
        if gr.kind == "G" and len(_components(gr.n, rest)) != 1:
            continue
        if gr.transformed:
            terms = [((("m", (INT, i), (INT, j)),), pre)]
        else:
            terms = [((("d", (INT, i), (INT, j)),), pre), ((("d", (INT, j), (INT, i)),), -pre)]
        for new, c in terms:
            out.add_canonical(canonicalize_stable(replace(gr, solid=rest, dashed=new + gr.dashed), convention), c)
    return out


def d_act_stable(gr: TwoColoredGraph, convention: str = "cup") -> LinearCombination:
    """Kind C: every incoming dashed half-edge at an internal vertex grows an x-vertex.

    The head letter b becomes the letter a of a new edge into the x-vertex, in
    place; the sign is (-1)^(m + |V| + parity of the letters before it).
    """
    out = LinearCombination()
    if gr.kind != "C":
        return out
    m, n, c = gr.m, gr.n, gr.nx
    s = leg_swap_sign(m, convention)
    P = 0
    for k, e in enumerate(gr.dashed):
        typ, tail, head = e
        before, after = gr.dashed[:k], gr.dashed[k + 1 :]
        if typ == "d" and head[0] == INT:
            Pb = P + (m if tail[0] == INT else 0)
            new = (("d", tail, (X, c, 0)), ("d", head, (X, c, 1)))
            coef = _sgn(m + n + Pb)
        elif typ in ("p", "m"):
            # act on both directions; the two x-vertices agree up to s (-1)^m after a leg swap
            new = (("d", tail, (X, c, 0)), ("d", head, (X, c, 1)))
            t = s * _sgn(m)
            coef = _sgn(n + P) * (1 + t if typ == "p" else 1 - t)
        else:
            P += gr.parity(e)
            continue
        P += gr.parity(e)
        if coef:
            out.add_canonical(canonicalize_stable(replace(gr, nx=c + 1, dashed=before + new + after), convention), coef)
    return out


def d_stable(gr, convention: str = "cup") -> LinearCombination:
    if isinstance(gr, CanonicalGraph):
        gr = gr.graph
    out = d_contract_stable(gr, convention)
    out.iadd(d_cut_stable(gr, convention))
    out.iadd(d_act_stable(gr, convention))
    return out


def d_vertex_graded(gr, convention: str = "cup") -> LinearCombination:
    """The part of the differential preserving the number of internal vertices."""
    if isinstance(gr, CanonicalGraph):
        gr = gr.graph
    return d_cut_stable(gr, convention).iadd(d_act_stable(gr, convention))


# ----------------------------------------------------------------------------
# the change of basis


def untransform(gr: TwoColoredGraph, convention: str = "cup") -> LinearCombination:
    """Expand every p / m edge into (u->v) +/- (v->u)."""
    choices = []
    for typ, tail, head in gr.dashed:
        if typ == "d":
            choices.append([(("d", tail, head), 1)])
        else:
            choices.append([(("d", tail, head), 1), (("d", head, tail), 1 if typ == "p" else -1)])
    out = LinearCombination()
    for pick in product(*choices):
        coef = 1
        for _, c in pick:
            coef *= c
        new = replace(gr, dashed=tuple(e for e, _ in pick), transformed=False)
        out.add_canonical(canonicalize_stable(new, convention), coef)
    return out


def build_stable(kind: str, M: int, N: int, W: int, H: int, transformed: bool = False, m: int = 1, convention: str = "cup") -> TriGradedComplex:
    kind = kind[0]
    basis = enumerate_stable(kind, M, N, W, H, transformed, m, convention)
    bases: dict[int, list] = {}
    for b in basis:
        bases.setdefault(b.degree(), []).append(b)
    diffs = {}
    for k in sorted(bases):
        if k + 1 in bases:
            diffs[k] = differential_matrix(bases[k], bases[k + 1], lambda x: d_stable(x, convention))
    params = {"M": M, "N": N, "m": m, "transformed": transformed, "convention": convention}
    view = "G" if kind == "G" else "fG"
    return TriGradedComplex(kind + "stable", params, Bidegree(W, H), bases, diffs, None, view, lambda b: b.serialize())


def transform_matrices(kind: str, M: int, N: int, W: int, H: int, m: int = 1, convention: str = "cup"):
    """(transformed complex, plain complex, {degree: matrix of the change of basis})."""
    tcx = build_stable(kind, M, N, W, H, True, m, convention)
    pcx = build_stable(kind, M, N, W, H, False, m, convention)
    T = {}
    for k in tcx.degrees():
        T[k] = differential_matrix(tcx.bases[k], pcx.bases.get(k, []), lambda x: untransform(x, convention))
    return tcx, pcx, T


def check_transform(kind: str, M: int, N: int, W: int, H: int, m: int = 1, convention: str = "cup") -> bool:
    """The change of basis is invertible in every degree and intertwines the two differentials."""
    tcx, pcx, T = transform_matrices(kind, M, N, W, H, m, convention)
    if sorted(tcx.degrees()) != sorted(pcx.degrees()):
        return False
    for k in tcx.degrees():
        if T[k].shape[0] != T[k].shape[1] or rank(T[k], "exact") != T[k].shape[0]:
            return False
        if pcx.dim(k + 1) or tcx.dim(k + 1):
            lhs = T.get(k + 1, SparseExactMatrix.zero(0, 0))
            if tcx.dim(k + 1) and not (lhs @ tcx.matrix(k) == pcx.matrix(k) @ T[k]):
                return False
    return True


# ----------------------------------------------------------------------------
# quasi-isomorphic subspaces and homotopies


def _has_internal_leg(gr: TwoColoredGraph, c: int) -> bool:
    return any(h[0] == X and h[1] == c and t[0] == INT for _, t, h in gr.dashed)


def movable_count(gr: TwoColoredGraph) -> int:
    """Number of local moves of the vertex-graded differential and its homotopy."""
    cnt = len(gr.solid)
    for typ, tail, head in gr.dashed:
        if typ == "m" or (typ == "p" and gr.kind == "C"):
            cnt += 1
        elif gr.kind == "C" and head[0] == INT:
            # an edge from a slot, or a loop
            cnt += 1
    if gr.kind == "C":
        cnt += sum(1 for c in range(gr.nx) if _has_internal_leg(gr, c))
    return cnt


def is_in_P(gr: TwoColoredGraph) -> bool:
    return not gr.solid and not any(t == "m" for t, _, _ in gr.dashed)


def is_in_R(gr: TwoColoredGraph) -> bool:
    if gr.solid:
        return False
    for typ, tail, head in gr.dashed:
        if typ != "d":
            return False
        if tail[0] == INT and head[0] in (INT, X):
            return False
        if head[0] == INT:
            return False
    return True


def subcomplex_P(M: int, N: int, W: int, H: int, m: int = 1) -> list:
    return [b for b in enumerate_stable("F", M, N, W, H, True, m) if is_in_P(b)]


def subcomplex_R(M: int, N: int, W: int, H: int, m: int = 1, convention: str = "cup") -> list:
    return [b for b in enumerate_stable("C", M, N, W, H, True, m, convention) if is_in_R(b)]


def homotopy_raw(gr, convention: str = "cup") -> LinearCombination:
    """Inverse local moves: m-edge -> solid edge; x-vertex with an internal leg -> the edge it came from."""
    if isinstance(gr, CanonicalGraph):
        gr = gr.graph
    out = LinearCombination()
    m, n = gr.m, gr.n
    s = leg_swap_sign(m, convention)
    word = list(gr.dashed)
    P = 0
    for k, e in enumerate(word):
        typ, tail, head = e
        if typ == "m":
            rest = tuple(word[:k] + word[k + 1 :])
            new = replace(gr, solid=gr.solid + ((tail[1], head[1]),), dashed=rest)
            out.add_canonical(canonicalize_stable(new, convention), _sgn(n + P))
        P += gr.parity(e)
    if gr.kind != "C":
        return out
    for c in range(gr.nx):
        if not _has_internal_leg(gr, c):
            continue
        k0 = next(k for k, e in enumerate(word) if e[2][:2] == (X, c) and e[2][2] == 0)
        k1 = next(k for k, e in enumerate(word) if e[2][:2] == (X, c) and e[2][2] == 1)
        coef = 1
        # bring leg 1 right after leg 0; the leg that stays first must not be a slot when the other is internal
        if word[k0][1][0] != INT and word[k1][1][0] == INT:
            first, second = k0, k1
        elif word[k1][1][0] != INT and word[k0][1][0] == INT:
            first, second = k1, k0
            coef *= s
        else:
            first, second = k0, k1
        w = list(word)
        e2 = w[second]
        between = range(min(first, second) + 1, max(first, second)) if second > first else range(second + 1, first + 1)
        coef *= _sgn(gr.parity(e2) * sum(gr.parity(w[q]) for q in between))
        del w[second]
        pos = w.index(word[first]) if False else (first if second > first else first - 1)
        e1 = w[pos]
        Pbefore = sum(gr.parity(q) for q in w[:pos])
        tail1, tail2 = e1[1], e2[1]
        if tail1[0] != INT:
            # slot -> x <- v  comes from slot -> v
            newe = ("d", tail1, tail2)
            coef *= _sgn(m + n + Pbefore)
        elif tail1 == tail2:
            newe = ("d", tail1, tail1)
            coef *= _sgn(n + Pbefore)
        else:
            newe = ("p", tail1, tail2)
            coef *= Fraction(_sgn(n + Pbefore), 2)
        w[pos] = newe
        new = _drop_x(replace(gr, dashed=tuple(w)), c)
        out.add_canonical(canonicalize_stable(new, convention), coef)
    return out


def _drop_x(gr: TwoColoredGraph, c: int) -> TwoColoredGraph:
    def mp(p):
        if p[0] == X and p[1] > c:
            return (X, p[1] - 1, p[2])
        return p

    return replace(gr, nx=gr.nx - 1, dashed=tuple((t, mp(a), mp(b)) for t, a, b in gr.dashed))


@dataclass
class HomotopyReport:
    ok: bool
    witness: object = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def homotopy_check(kind: str, M: int, N: int, W: int, H: int, m: int = 1, h=None, convention: str = "cup") -> HomotopyReport:
    """d h + h d = id on the quotient by P (kind F) or R (kind C), h = homotopy_raw / movable_count."""
    kind = kind[0]
    if kind not in ("F", "C"):
        raise ValueError("the homotopy is defined for kinds F and C")
    keep = is_in_P if kind == "F" else is_in_R
    h = h or (lambda x: homotopy_raw(x, convention))
    basis = [b for b in enumerate_stable(kind, M, N, W, H, True, m, convention)]
    index = {b: i for i, b in enumerate(basis)}
    checked = 0
    for b in basis:
        if keep(b):
            continue
        total = LinearCombination()
        for g1, c1 in d_vertex_graded(b, convention).items():
            total.iadd(h(g1), Fraction(c1, movable_count(g1)))
        for g1, c1 in h(b).items():
            total.iadd(d_vertex_graded(g1, convention), Fraction(c1, movable_count(b)))
        total.add(b, -1)
        for g1 in list(total):
            if g1 not in index:
                return HomotopyReport(False, (b, g1), checked)
            if keep(g1):
                del total[g1]
        if total:
            return HomotopyReport(False, b, checked)
        checked += 1
    return HomotopyReport(True, None, checked)


# ----------------------------------------------------------------------------
# specialization to finite genus


def _set_partitions(D: int, g: int):
    """Restricted growth strings of length D with at most g blocks."""
    if D == 0:
        yield ()
        return
    if g == 0:
        return

    def rec(k, acc, mx):
        if k == D:
            yield tuple(acc)
            return
        for v in range(min(mx + 2, g)):
            acc.append(v)
            yield from rec(k + 1, acc, max(mx, v))
            acc.pop()

    yield from rec(0, [], -1)


_INDEXED_TYPES_CACHE: dict = {}


def _indexed_types(m: int, s: int):
    key = (m, s)
    if key not in _INDEXED_TYPES_CACHE:
        _INDEXED_TYPES_CACHE[key] = {
            0: EdgeType(0, -1),
            10: EdgeType(m, 0),
            11: EdgeType(m + 1, 0),
            12: EdgeType(0, 0),
            14: EdgeType(0 if s == 1 else 1, 0),
        }
    return _INDEXED_TYPES_CACHE[key]


def _indexed_key(gr: TwoColoredGraph, f: tuple, s: int):
    """Canonical form, up to relabeling the indices, of the term with dashed edge k carrying index f[k]."""
    n, M, N = gr.n, gr.M, gr.N
    nidx = (max(f) + 1) if f else 0
    base_idx = n + M + N + gr.nx
    colors = [(0, 0)] * n + [(1, k) for k in range(1, M + 1)] + [(2, k) for k in range(1, N + 1)] + [(3, 0)] * gr.nx + [(4, 0)] * nidx
    tot = len(colors)
    vpar = [1] * n + [0] * (tot - n)
    edges = [(i, j, 0) for i, j in gr.solid]
    legs = [[None, None] for _ in range(gr.nx)]

    def slot(p):
        return n + p[1] - 1 if p[0] == OUT else n + M + p[1] - 1

    for k, (typ, tail, head) in enumerate(gr.dashed):
        ix = base_idx + f[k]
        if tail[0] == INT:
            edges.append((tail[1], ix, 10))
        else:
            edges.append((slot(tail), ix, 12))
        if head[0] == INT:
            edges.append((head[1], ix, 11))
        elif head[0] == X:
            legs[head[1]][head[2]] = ix
        else:
            edges.append((slot(head), ix, 12))
    for c, (l0, l1) in enumerate(legs):
        edges.append((n + M + N + c, l0, 14))
        edges.append((n + M + N + c, l1, 14))
    res = canonical_order(tot, colors, vpar, [()] * tot, [0] * tot, edges, _indexed_types(gr.m, s))
    if res is None:
        return None
    _, sign, key = res
    return (n, gr.nx, nidx, key), sign


def specialize_to_g(gr, g: int, convention: str = "cup") -> LinearCombination:
    """Image at genus g, recorded on one representative per relabeling class of the indices.

    The full image is invariant under permuting 1..g, so these values
    determine it; rescaling each class by its stabilizer does not change ranks.
    """
    if isinstance(gr, CanonicalGraph):
        gr = gr.graph
    if gr.transformed:
        out = LinearCombination()
        for p, c in untransform(gr, convention).items():
            out.iadd(specialize_to_g(p, g, convention), c)
        return out
    s = leg_swap_sign(gr.m, convention)
    pre = _sgn(gr.m * len(gr.dashed))
    out = LinearCombination()
    for f in _set_partitions(len(gr.dashed), g):
        res = _indexed_key(gr, f, s)
        if res is not None:
            out.add(res[0], pre * res[1])
    return out


class ExtendedElement:
    """Monomial in the dual osp generators times a free decorated graph (None = unit)."""

    __slots__ = ("g", "m", "mono", "graph", "_h")

    def __init__(self, g: int, m: int, mono: tuple, graph) -> None:
        self.g, self.m, self.mono, self.graph = g, m, tuple(sorted(mono)), graph
        self._h = hash((self.mono, self.graph))

    def __hash__(self) -> int:
        return self._h

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtendedElement) and (self.mono, self.graph) == (other.mono, other.graph)

    def __lt__(self, other) -> bool:
        return self.serialize() < other.serialize()

    def degree(self) -> int:
        from .graphs import degree

        return 2 * len(self.mono) + (degree(self.graph) if self.graph is not None else 0)

    def torus_weight(self) -> tuple:
        w = list(self.graph.torus_weight()) if self.graph is not None else [0] * self.g
        basis = osp_nil_basis(self.g, self.m)
        for x in self.mono:
            for i, v in enumerate(basis[x].torus_weight()):
                w[i] += v
        return tuple(w)

    def serialize(self) -> str:
        g = self.graph.serialize() if self.graph is not None else "1"
        return f"ex:[{','.join(map(str, self.mono))}]|{g}"

    __str__ = serialize
    __repr__ = serialize


def _dual_index(g: int, m: int, convention: str):
    """(i, j) -> (basis index, coefficient) of the dual generator X*_ij = s X*_ji."""
    s = a_symmetry(m, convention)
    table = {}
    for k, x in enumerate(osp_nil_basis(g, m, False, convention)):
        for i in range(g):
            for j in range(i, g):
                if x.data[i][j] == 1 and (i != j or s == 1):
                    table[(i, j)] = (k, 1)
                    if i != j:
                        table[(j, i)] = (k, s)
    return table


def specialize_full(gr, g: int, convention: str = "cup") -> LinearCombination:
    """Full image at genus g: keys (ExtendedElement or decorated graph, out-slot indices, in-slot indices)."""
    if isinstance(gr, CanonicalGraph):
        gr = gr.graph
    if gr.transformed:
        out = LinearCombination()
        for p, c in untransform(gr, convention).items():
            out.iadd(specialize_full(p, g, convention), c)
        return out
    m, n = gr.m, gr.n
    D = len(gr.dashed)
    pre = _sgn(m * D)
    dual = _dual_index(g, m, convention)
    out = LinearCombination()
    for f in product(range(g), repeat=D):
        letters = []
        outs = [None] * gr.M
        ins = [None] * gr.N
        legs = [[None, None] for _ in range(gr.nx)]
        for k, (_, tail, head) in enumerate(gr.dashed):
            i = f[k] + 1
            if tail[0] == INT:
                letters.append((tail[1], alpha(i)))
            else:
                outs[tail[1] - 1] = i
            if head[0] == INT:
                letters.append((head[1], beta(i)))
            elif head[0] == X:
                legs[head[1]][head[2]] = i - 1
            else:
                ins[head[1] - 1] = i
        coef = pre
        mono = []
        for l0, l1 in legs:
            ent = dual.get((l0, l1))
            if ent is None:
                coef = 0
                break
            mono.append(ent[0])
            coef *= ent[1]
        if not coef:
            continue
        # reorder the letter word into vertex blocks
        order = sorted(range(len(letters)), key=lambda q: letters[q][0])
        coef *= perm_koszul_sign(order, [(m + (sym & 1)) % 2 for _, sym in letters])
        if n:
            blocks = [[] for _ in range(n)]
            for q in order:
                blocks[letters[q][0]].append(letters[q][1])
            c = canonicalize(DecoratedGraph(g, m, n, tuple(gr.solid), tuple(tuple(b) for b in blocks)))
            if c is ZERO:
                continue
            coef *= c.sign
            graph = c.graph
        else:
            graph = None
        key = graph if gr.kind == "G" else ExtendedElement(g, m, tuple(mono), graph)
        out.add((key, tuple(outs), tuple(ins)), coef)
    return out


def _act_finite(graph, g: int, m: int, convention: str):
    """sum over the osp basis of (index, x . graph); x acts as an odd derivation."""
    res = []
    for k, x in enumerate(osp_nil_basis(g, m, False, convention)):
        img = act_on_basis(x, graph)
        if img:
            res.append((k, img))
    return res


def d_extended(el: ExtendedElement, convention: str = "cup") -> LinearCombination:
    """d_fG on the graph plus the action term sum_x x* (x) x.graph."""
    out = LinearCombination()
    if el.graph is None:
        return out
    for gr, c in d_total(el.graph, False).items():
        out.add(ExtendedElement(el.g, el.m, el.mono, gr), c)
    for k, img in _act_finite(el.graph, el.g, el.m, convention):
        for gr, c in img.items():
            out.add(ExtendedElement(el.g, el.m, el.mono + (k,), gr), c)
    return out


def d_finite_full(key, kind: str, convention: str = "cup") -> LinearCombination:
    """Finite-genus differential on a specialized key; it acts on the graph factor only."""
    el, outs, ins = key
    out = LinearCombination()
    if kind == "G":
        for gr, c in d_total(el, True).items():
            out.add((gr, outs, ins), c)
        return out
    if kind == "F":
        if el.graph is not None:
            for gr, c in d_total(el.graph, False).items():
                out.add((ExtendedElement(el.g, el.m, el.mono, gr), outs, ins), c)
        return out
    for e2, c in d_extended(el, convention).items():
        out.add((e2, outs, ins), c)
    return out


def check_chain_map(kind: str, M: int, N: int, W: int, H: int, g: int, m: int = 1, convention: str = "cup") -> list:
    """Basis elements where specialize o d_stable != d_finite o specialize (empty list = chain map)."""
    bad = []
    for b in enumerate_stable(kind, M, N, W, H, False, m, convention):
        lhs = LinearCombination()
        for gr, c in d_stable(b, convention).items():
            lhs.iadd(specialize_full(gr, g, convention), c)
        rhs = LinearCombination()
        for key, c in specialize_full(b, g, convention).items():
            rhs.iadd(d_finite_full(key, kind, convention), c)
        if lhs - rhs:
            bad.append(b)
    return bad


# ----------------------------------------------------------------------------
# the finite auxiliary complexes


def _vectors_rank(vectors: list[dict]) -> int:
    keys = {}
    triples = []
    for col, v in enumerate(vectors):
        for k, c in v.items():
            r = keys.setdefault(k, len(keys))
            triples.append((r, col, c))
    if not triples:
        return 0
    return rank(SparseExactMatrix.from_triples(len(keys), len(vectors), triples))


class _Span:
    """Incremental exact echelon form remembering how pivots combine the accepted vectors."""

    def __init__(self) -> None:
        self.rows: list[tuple[object, dict, dict]] = []

    def reduce(self, v: dict):
        v = {k: Fraction(c) for k, c in v.items() if c}
        comb: dict = {}
        for piv, row, rc in self.rows:
            c = v.get(piv)
            if c:
                for k, x in row.items():
                    y = v.get(k, 0) - c * x
                    if y:
                        v[k] = y
                    else:
                        v.pop(k, None)
                for k, x in rc.items():
                    comb[k] = comb.get(k, 0) + c * x
        return v, comb

    def add(self, v: dict, label) -> bool:
        rem, comb = self.reduce(v)
        if not rem:
            return False
        piv = min(rem, key=repr)
        c = rem[piv]
        row = {k: x / c for k, x in rem.items()}
        rc = {k: -x / c for k, x in comb.items()}
        rc[label] = rc.get(label, 0) + 1 / c
        self.rows.append((piv, row, rc))
        return True

    def express(self, v: dict) -> dict:
        rem, comb = self.reduce(v)
        if rem:
            raise ValueError("vector is not in the span")
        return {k: x for k, x in comb.items() if x}


def build_finite_aux(kind: str, g: int, m: int, M: int, N: int, W: int, H: int, convention: str = "cup") -> TriGradedComplex:
    """The invariant complex at genus g as the span of specialized stable graphs.

    Basis: a maximal subset of stable graphs with independent images;
    differential: d(S x) = S(d x) written in that basis.
    """
    kind = kind[0]
    stable = build_stable(kind, M, N, W, H, False, m, convention)
    bases: dict[int, list] = {}
    spans: dict[int, _Span] = {}
    images: dict = {}
    for k in stable.degrees():
        sp = _Span()
        chosen = []
        for b in stable.bases[k]:
            v = specialize_to_g(b, g, convention)
            images[b] = v
            if sp.add(v, b):
                chosen.append(b)
        bases[k] = chosen
        spans[k] = sp
    diffs = {}
    for k in sorted(bases):
        if k + 1 not in bases or not bases[k] or not bases[k + 1]:
            continue
        index = {b: i for i, b in enumerate(bases[k + 1])}
        triples = []
        for col, b in enumerate(bases[k]):
            target = LinearCombination()
            for gr, c in d_stable(b, convention).items():
                target.iadd(specialize_to_g(gr, g, convention), c)
            for lab, c in spans[k + 1].express(target).items():
                triples.append((index[lab], col, c))
        diffs[k] = SparseExactMatrix.from_triples(len(bases[k + 1]), len(bases[k]), triples)
    params = {"g": g, "m": m, "M": M, "N": N, "convention": convention}
    return TriGradedComplex(kind + "aux", params, Bidegree(W, H), bases, diffs, None, stable.view, lambda b: b.serialize())


def finite_dims(kind: str, g: int, m: int, M: int, N: int, W: int, H: int, convention: str = "cup") -> dict[int, int]:
    """Chain dimensions of the invariant complex at genus g (ranks of the specialization)."""
    stable = build_stable(kind[0], M, N, W, H, False, m, convention)
    return {k: _vectors_rank([specialize_to_g(b, g, convention) for b in stable.bases[k]]) for k in stable.degrees()}


def finite_dims_by_characters(kind: str, g: int, m: int, M: int, N: int, W: int, H: int, convention: str = "cup") -> dict[int, int]:
    """Same dimensions from invariant theory: dim (U_k (x) V^M (x) V*^N)^GL for the finite chain spaces U_k."""
    from collections import Counter

    from .glrep import invariant_probe
    from .graphs import degree
    from .koszulce import ce_complex

    kind = kind[0]
    if H != N - M:
        return {}
    if kind == "G":
        chars: dict[int, Counter] = {}
        for b in enumerate_basis(g, m, W, H, True) if W >= 1 else []:
            chars.setdefault(degree(b), Counter())[b.torus_weight()] += 1
    else:
        cx = ce_complex(g, m, W, H) if kind == "F" else ce_extended_complex(g, m, W, H, convention)
        chars = {}
        for k in cx.degrees():
            ws = cx.weights[k] if cx.weights else [b.torus_weight() for b in cx.bases[k]]
            chars[k] = Counter(ws)
    out = {}
    for k, ch in chars.items():
        if g == 0:
            v = sum(ch.values()) if M == N == 0 else 0
        else:
            v = invariant_probe(ch, M, N, g)
        if v:
            out[k] = v
    return out


def stabilization_bound(kind: str, M: int, N: int, W: int, H: int) -> int:
    kind = kind[0]
    if kind == "G":
        return ceil((W + M + N + 2) / 2)
    if kind == "F":
        return ceil((3 * W + M + N) / 2)
    return ceil((6 * W - H + M + N) / 2)


def stabilization_scan(kind: str, M: int, N: int, W: int, H: int, g_max: int, m: int = 1, convention: str = "cup"):
    """Least g <= g_max whose chain dimensions equal the stable ones, or None.

    The maps from the stable complex factor through every higher genus, so
    the ranks grow with g and the first match persists.
    """
    kind = kind[0]
    stable = build_stable(kind, M, N, W, H, False, m, convention)
    target = {k: stable.dim(k) for k in stable.degrees()}
    for g in range(0, g_max + 1):
        ok = True
        for k in stable.degrees():
            r = _vectors_rank([specialize_to_g(b, g, convention) for b in stable.bases[k]])
            if r != target[k]:
                ok = False
                break
        if ok:
            return g
    return None


def stable_probe_degrees(W: int, H: int, m: int = 1, convention: str = "cup") -> dict[tuple[int, int], dict[int, int]]:
    """Cohomology of the stable kind G complexes for every probe M + N <= W + 2, keyed by (M, N)."""
    from .gcore import stored_betti

    out = {}
    for M in range(W + 3):
        for N in range(W + 3 - M):
            cx = build_stable("G", M, N, W, H, False, m, convention)
            if cx.total_dim():
                b = {k: v for k, v in stored_betti(cx, "exact").items() if v}
                if b:
                    out[(M, N)] = b
    return out


def vanishing_prediction(g: int, m: int, W: int, H: int, convention: str = "cup") -> dict[int, bool] | None:
    """Degrees k (free-graph convention) where gr^(W,H) H^k of the connected complex must vanish.

    A representation all of whose invariant probes of order <= W + 2 vanish
    is zero; for g >= W + 2 every probe is a stable cohomology group.  Returns
    {k: predicted to vanish} over the degrees occupied by the connected complex,
    or None when g is below the range.
    """
    if g < W + 2:
        return None
    from .gcore import Bidegree, assemble_complex

    live = set()
    for b in stable_probe_degrees(W, H, m, convention).values():
        live.update(b)
    cx = assemble_complex("G", g, m, Bidegree(W, H))
    return {k: k not in live for k in cx.degrees()}


# ----------------------------------------------------------------------------
# finite extended Chevalley-Eilenberg complex


def ce_extended_complex(g: int, m: int, W: int, H: int, convention: str = "cup") -> TriGradedComplex:
    """Polynomials in the dual osp generators (degree 2, imbalance -2) tensor the free complex with its unit."""
    from .graphs import degree

    dosp = len(osp_nil_basis(g, m, False, convention))
    bases: dict[int, list] = {}
    d = 0
    while True:
        Hg = H + 2 * d
        if Hg > W + 3 * W + 2 and d > 0:
            break
        graphs = list(enumerate_basis(g, m, W, Hg, False)) if W >= 1 else []
        units = [None] if (W == 0 and Hg == 0) else []
        if d > 0 and dosp == 0:
            break
        for mono in _monomials(dosp, d):
            for gr in units + graphs:
                el = ExtendedElement(g, m, mono, gr)
                bases.setdefault(el.degree(), []).append(el)
        d += 1
        if d > 3 * W + 2 + max(0, -H):
            break
    diffs = {}
    for k in sorted(bases):
        if k + 1 in bases:
            diffs[k] = differential_matrix(bases[k], bases[k + 1], lambda x: d_extended(x, convention))
    weights = {k: [b.torus_weight() for b in v] for k, v in bases.items()}
    return TriGradedComplex("CEex", {"g": g, "m": m, "convention": convention}, Bidegree(W, H), bases, diffs, weights, "fG", lambda b: b.serialize())


def _monomials(k: int, d: int):
    """Multisets of size d from range(k), as sorted tuples."""
    from itertools import combinations_with_replacement

    return list(combinations_with_replacement(range(k), d))


# ----------------------------------------------------------------------------
# associated graded checks


def solid_tree_check(M: int, N: int, W: int, H: int, m: int = 1, convention: str = "cup") -> bool:
    """In the vertex-graded transformed kind G complex, cohomology sits only where the solid part is a tree."""
    from .gcore import stored_betti

    basis = enumerate_stable("G", M, N, W, H, True, m, convention)
    by_n: dict[int, list] = {}
    for b in basis:
        by_n.setdefault(b.n, []).append(b)
    for n, bl in by_n.items():
        bases: dict[int, list] = {}
        for b in bl:
            bases.setdefault(b.degree(), []).append(b)
        diffs = {}
        for k in sorted(bases):
            if k + 1 in bases:
                diffs[k] = differential_matrix(bases[k], bases[k + 1], lambda x: d_cut_stable(x, convention))
        cx = TriGradedComplex("Gvgr", {}, None, bases, diffs, None, "fG")
        for k, v in stored_betti(cx, "exact", False).items():
            if v and any(len(b.solid) != n - 1 for b in bases[k]):
                return False
    return True
