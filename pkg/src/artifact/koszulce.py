"""Chevalley-Eilenberg layer: the free graph complex plus a unit, edge grading, Koszul data."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from collections import Counter
from itertools import combinations_with_replacement, permutations
from math import factorial

from .diff import LinearCombination, d_total, differential_matrix, lie_bracket
from .exactla import SparseExactMatrix, rank
from .gcore import Bidegree, TriGradedComplex, _graph_complex, _rref_kernel, stored_betti
from .graphs import DecoratedGraph, ZERO, alpha, beta, canonicalize, degree, enumerate_basis, sym_parity

UNIT = "1"


def ce_complex(g: int, m: int, W: int, H: int) -> TriGradedComplex:
    """Weight (W, H) piece of fG (+ Q in weight 0) with d_c + d_cut, disconnected graphs kept."""
    if W < 0:
        raise ValueError("weight must be nonnegative")
    if W == 0:
        bases = {0: [UNIT]} if H == 0 else {}
        return TriGradedComplex("CE", {"g": g, "m": m}, Bidegree(0, H), bases, {}, {0: [(0,) * g]} if H == 0 else None, "fG")
    cx = _graph_complex("fG", g, m, Bidegree(W, H))
    cx.kind = "CE"
    return cx


def critical_degree_ce(m: int, W: int, H: int) -> Fraction:
    return Fraction(W * (2 * m + 1) - H, 2)


def critical_degree_lie(m: int, W: int, H: int) -> Fraction:
    return Fraction(-W * (2 * m - 1) + H, 2)


# ----------------------------------------------------------------------------
# edge grading


def edge_count(b) -> int:
    if b == UNIT or b is None:
        return 0
    if isinstance(b, DecoratedGraph):
        return len(b.edges)
    graph = getattr(b, "graph", None)
    return 0 if graph is None else len(graph.edges)


def edge_degree_split(cx: TriGradedComplex) -> dict[int, dict[int, list]]:
    """edges -> degree -> basis elements; the differential maps edge count e to e - 1."""
    out: dict[int, dict[int, list]] = {}
    for k in cx.degrees():
        for b in cx.bases[k]:
            out.setdefault(edge_count(b), {}).setdefault(k, []).append(b)
    return out


def edge_graded_betti(cx: TriGradedComplex, mode: str = "exact") -> dict[tuple[int, int], int]:
    """Cohomology dimension per (stored degree, edge count)."""
    ranks: dict[tuple[int, int], int] = {}
    for k in cx.degrees():
        if not cx.dim(k + 1):
            continue
        M = cx.matrix(k)
        for (r, c) in M.entries:
            if edge_count(cx.bases[k + 1][r]) != edge_count(cx.bases[k][c]) - 1:
                raise ValueError("differential is not homogeneous in the edge count")
        wc = [edge_count(b) for b in cx.bases[k]]
        wr = [edge_count(b) + 1 for b in cx.bases[k + 1]]
        for e in set(wc):
            cols = [i for i, w in enumerate(wc) if w == e]
            rows = [i for i, w in enumerate(wr) if w == e]
            if rows and cols:
                sub = M.submatrix(rows, cols)
                if sub.entries:
                    ranks[(k, e)] = rank(sub, mode)
    out = {}
    for k in cx.degrees():
        cnt: dict[int, int] = {}
        for b in cx.bases[k]:
            cnt[edge_count(b)] = cnt.get(edge_count(b), 0) + 1
        for e, n in cnt.items():
            v = n - ranks.get((k, e), 0) - ranks.get((k - 1, e + 1), 0)
            if v:
                out[(k, e)] = v
    return out


def ce_vanishes_above_edge_degree_zero(g: int, m: int, W: int, H: int) -> bool:
    return all(e == 0 for (_, e) in edge_graded_betti(ce_complex(g, m, W, H)))


# ----------------------------------------------------------------------------
# the commutative presentation on single-vertex generators


def _block_parity(block, m: int) -> int:
    return sum(sym_parity(s, m) for s in block) % 2


def single_vertex(g: int, m: int, U: tuple):
    """S_U as a canonical graph (None when U is killed by graded symmetry)."""
    if len(U) < 3:
        raise ValueError("generators need at least three decorations")
    c = canonicalize(DecoratedGraph(g, m, 1, (), (tuple(U),)))
    return None if c is ZERO else c


def product_graph(g: int, m: int, blocks: list[tuple]):
    """S_{U_1} ... S_{U_r} as (canonical graph, sign) or None."""
    c = canonicalize(DecoratedGraph(g, m, len(blocks), (), tuple(tuple(b) for b in blocks)))
    return None if c is ZERO else (c.graph, c.sign)


def presentation_relation(g: int, m: int, U1: tuple, U2: tuple) -> LinearCombination:
    """S_{U1 U2} + (-1)^m sum_i ((-1)^{(m+1)|U1|} S_{a_i U1} S_{b_i U2} - (-1)^{m|U1|} S_{b_i U1} S_{a_i U2}).

    The two signs are the Koszul signs of moving the letters of the diagonal
    element past the first block; the relation generates the image of the
    one-edge graphs under the differential.
    """
    out = LinearCombination()
    p1 = _block_parity(U1, m)
    c = canonicalize(DecoratedGraph(g, m, 1, (), (tuple(U1) + tuple(U2),)))
    out.add_canonical(c, 1)
    pre = -1 if m % 2 else 1
    for i in range(1, g + 1):
        for x, y, extra in ((alpha(i), beta(i), 1), (beta(i), alpha(i), -1)):
            sign = -1 if (sym_parity(y, m) and p1) else 1
            res = product_graph(g, m, [(x,) + tuple(U1), (y,) + tuple(U2)])
            if res:
                out.add(res[0], pre * extra * sign * res[1])
    return out


def _symbols(g: int) -> list[int]:
    return [s for i in range(1, g + 1) for s in (alpha(i), beta(i))]


def _multisets(g: int, m: int, size: int):
    """Graded-symmetric monomials of the given size (odd symbols at most once)."""
    for U in combinations_with_replacement(_symbols(g), size):
        if any(sym_parity(s, m) and U.count(s) > 1 for s in set(U)):
            continue
        yield U


def _split_pairs(g: int, m: int, size: int):
    """Unordered pairs (U1, U2) with |U1| + |U2| = size and both sizes >= 2."""
    seen = set()
    for a in range(2, size - 1):
        for U1 in _multisets(g, m, a):
            for U2 in _multisets(g, m, size - a):
                key = tuple(sorted((U1, U2)))
                if key not in seen:
                    seen.add(key)
                    yield U1, U2


def _imbalance(U) -> int:
    return sum(-1 if s & 1 else 1 for s in U)


@dataclass
class APresentation:
    g: int
    m: int
    W_max: int
    generators: dict = field(default_factory=dict)  # (W, H) -> list of S_U
    relations: dict = field(default_factory=dict)  # (W, H) -> number of relations
    dims: dict = field(default_factory=dict)  # (W, H) -> {degree: dim of the quotient}
    image_rank_match: dict = field(default_factory=dict)  # (W, H) -> relations span = d(edge degree 1)


def a_presentation(g: int, m: int, W_max: int) -> APresentation:
    """Graded-commutative algebra on S_U (|U| >= 3) modulo the relations, in each weight <= W_max (at most 2).

    In weight <= 2 the ideal is spanned by the relations themselves, since
    a one-edge graph has weight at least 2.
    """
    if W_max > 2:
        raise ValueError("presentation quotient implemented for weights <= 2")
    out = APresentation(g, m, W_max)
    for W in range(1, W_max + 1):
        for U in _multisets(g, m, W + 2):
            c = single_vertex(g, m, U)
            if c is not None:
                out.generators.setdefault((W, _imbalance(U)), []).append(c.graph)
    for W in range(1, W_max + 1):
        for H in range(-3 * W, 3 * W + 1):
            if (H + W) % 2:
                continue
            cx = ce_complex(g, m, W, H)
            edge0 = {k: [b for b in cx.bases[k] if edge_count(b) == 0] for k in cx.degrees()}
            rels = []
            if W == 2:
                for U1, U2 in _split_pairs(g, m, 4):
                    if _imbalance(U1) + _imbalance(U2) == H:
                        r = presentation_relation(g, m, U1, U2)
                        if r:
                            rels.append(r)
            out.relations[(W, H)] = len(rels)
            dims = {}
            for k, basis in edge0.items():
                if not basis:
                    continue
                index = {b: i for i, b in enumerate(basis)}
                rk = [r for r in rels if next(iter(r)) in index]
                triples = [(index[b], c, v) for c, r in enumerate(rk) for b, v in r.items()]
                rr = rank(SparseExactMatrix.from_triples(len(basis), len(rk), triples), "exact") if triples else 0
                dims[k] = len(basis) - rr
                # the same span must come from the differential on one-edge graphs
                one_edge = [b for b in cx.bases.get(k - 1, []) if edge_count(b) == 1] if W == 2 else []
                img = [d_total(b, False) for b in one_edge]
                t2 = [(index[b], c, v) for c, r in enumerate(img) for b, v in r.items() if b in index]
                ri = rank(SparseExactMatrix.from_triples(len(basis), len(img), t2), "exact") if t2 else 0
                both = rank(SparseExactMatrix.from_triples(len(basis), len(rk) + len(img), triples + [(r, c + len(rk), v) for r, c, v in t2]), "exact") if triples or t2 else 0
                out.image_rank_match[(W, H, k)] = rr == ri == both
            out.dims[(W, H)] = {k: v for k, v in dims.items() if v}
    return out


# ----------------------------------------------------------------------------
# quadratic data: generators in weight one, relations in weight two


def automorphism_order(graph) -> int:
    """Order of the automorphism group of a small decorated graph by brute force over vertex maps.

    Parallel edges and repeated decorations contribute factorials.
    """
    n = graph.n
    E = Counter(tuple(sorted(e)) for e in graph.edges)
    B = [Counter(b) for b in graph.dec]
    cnt = 0
    for p in permutations(range(n)):
        if all(B[p[v]] == B[v] for v in range(n)) and Counter(tuple(sorted((p[a], p[b]))) for a, b in graph.edges) == E:
            cnt += 1
    for c in E.values():
        cnt *= factorial(c)
    for b in B:
        for c in b.values():
            cnt *= factorial(c)
    return cnt


def _gc_parity(graph) -> int:
    """Parity of the dual (GC) degree 1 - deg."""
    return (1 - degree(graph)) % 2


@dataclass
class QuadraticPresentation:
    g: int
    m: int
    generators: dict  # H -> list of weight-1 classes (tripods)
    wedge_dims: dict  # H -> dim of the graded exterior square
    ungraded_wedge_dims: dict  # H -> dim of the ungraded exterior square
    gr2_dims: dict  # H -> dim gr^2 H(GC)
    bracket_rank: dict  # H -> rank of the bracket into cohomology
    R_dims: dict  # H -> dim of the kernel of the bracket
    S_dims: dict  # H -> dim of the quadratic relations of the commutative side
    bracket_closed: dict  # H -> brackets are cocycles
    annihilates: dict  # H -> S pairs to zero with R
    pairing_rank: dict  # H -> rank of the pairing of R with the products (= dim R)
    gr2_degrees: dict  # H -> {stored degree: dim gr^2 H}

    def complementary(self) -> bool:
        return all(self.R_dims[h] + self.gr2_dims.get(h, 0) == self.wedge_dims[h] for h in self.wedge_dims)


def _weight_two_pieces(g: int, m: int, H: int):
    basis = enumerate_basis(g, m, 2, H, True)
    bases: dict[int, list] = {}
    for b in basis:
        bases.setdefault(degree(b), []).append(b)
    return bases


def _horizontal(blocks: list[SparseExactMatrix]) -> SparseExactMatrix:
    rows = blocks[0].nrows
    triples, off = [], 0
    for B in blocks:
        triples += [(r, c + off, v) for (r, c), v in B.entries.items()]
        off += B.ncols
    return SparseExactMatrix.from_triples(rows, off, triples)


def _weight_groups(weights: list) -> dict:
    groups: dict = {}
    for i, w in enumerate(weights):
        groups.setdefault(w, []).append(i)
    return groups


def quadratic_data(g: int, m: int, Hs=None) -> QuadraticPresentation:
    """Bracket of weight-one classes into weight-two cohomology, its kernel R and the commutative relations S.

    R is the kernel of the bracket on the graded exterior square (computed in
    the dual complex, whose differential is the transpose).  S is the part of
    the image of the one-edge graphs under the CE differential that lies in
    the span of products of two tripods.  Both are computed per torus weight.
    """
    gens: dict[int, list] = {}
    for H in (-3, -1, 1, 3):
        gens[H] = enumerate_basis(g, m, 1, H, True)
    targets = sorted({h1 + h2 for h1 in gens for h2 in gens}) if Hs is None else list(Hs)
    res = {k: {} for k in ("wedge", "uwedge", "gr2", "gr2deg", "rank", "R", "S", "closed", "ann", "prank")}
    for H in targets:
        pairs = []
        for h1 in sorted(gens):
            h2 = H - h1
            if h2 < h1 or h2 not in gens:
                continue
            if h1 == h2:
                L = gens[h1]
                for i in range(len(L)):
                    for j in range(i, len(L)):
                        if i == j and not _gc_parity(L[i]):
                            continue
                        pairs.append((L[i], L[j]))
            else:
                pairs += [(x, y) for x in gens[h1] for y in gens[h2]]
        ug = 0
        for h1 in sorted(gens):
            h2 = H - h1
            if h2 < h1 or h2 not in gens:
                continue
            n1 = len(gens[h1])
            ug += n1 * (n1 - 1) // 2 if h1 == h2 else n1 * len(gens[h2])
        res["uwedge"][H] = ug
        res["wedge"][H] = len(pairs)
        bases = _weight_two_pieces(g, m, H)
        kt = None
        # target degree: one edge added, decorations lose one alpha and one beta
        if pairs:
            kt = degree(pairs[0][0]) + degree(pairs[0][1]) + 2 * m - (2 * m + 1)
        target = bases.get(kt, []) if kt is not None else []
        dk = differential_matrix(target, bases.get(kt + 1, []), lambda x: d_total(x, True)) if target and bases.get(kt + 1) else None
        dkm = differential_matrix(bases.get(kt - 1, []), target, lambda x: d_total(x, True)) if target and bases.get(kt - 1) else None
        # dual cohomology at kt: cocycles of the transpose modulo its coboundaries
        gr2 = 0
        if target:
            rk = rank(dk, "exact") if dk is not None and dk.entries else 0
            rkm = rank(dkm, "exact") if dkm is not None and dkm.entries else 0
            gr2 = len(target) - rk - rkm
        gb = {k: v for k, v in stored_betti(_graph_complex("G", g, m, Bidegree(2, H)), "exact").items() if v}
        res["gr2"][H] = sum(gb.values())
        res["gr2deg"][H] = gb
        if not pairs:
            for key in ("rank", "R", "S", "prank"):
                res[key][H] = 0
            res["closed"][H] = True
            res["ann"][H] = True
            continue
        if gr2 != res["gr2"][H]:
            raise ArithmeticError("weight-two cohomology is not concentrated in the bracket degree")
        index = {b: i for i, b in enumerate(target)}
        # bracket columns
        bcols = []
        for x, y in pairs:
            v = lie_bracket({x: 1}, {y: 1})
            for b in v:
                if b not in index:
                    raise KeyError(f"bracket term {b} outside the target degree")
            bcols.append(v)
        # the dual differential is A^-1 d^T A for A = automorphism orders
        aut_t = [automorphism_order(b) for b in target]
        closed = True
        if dkm is not None:
            src = bases[kt - 1]
            aut_s = [automorphism_order(b) for b in src]
            for v in bcols:
                acc: dict = {}
                for (r, c), x in dkm.entries.items():
                    t = target[r]
                    if t in v:
                        acc[c] = acc.get(c, 0) + x * v[t] * Fraction(aut_t[r], aut_s[c])
                if any(acc.values()):
                    closed = False
                    break
        res["closed"][H] = closed
        # coboundaries of the dual differential: rows of dk divided by the target automorphism orders
        if dk is not None:
            cob = SparseExactMatrix.from_triples(len(target), dk.nrows, [(c, r, x / aut_t[c]) for (r, c), x in dk.entries.items()])
        else:
            cob = SparseExactMatrix.zero(len(target), 0)
        Bm = SparseExactMatrix.from_triples(len(target), len(pairs), [(index[b], c, v) for c, col in enumerate(bcols) for b, v in col.items()])
        # per torus weight
        pw = [tuple(a + b for a, b in zip(x.torus_weight(), y.torus_weight())) for x, y in pairs]
        tw = [b.torus_weight() for b in target]
        nxt = bases.get(kt + 1, [])
        nw = [b.torus_weight() for b in nxt]
        pg, tg, ng = _weight_groups(pw), _weight_groups(tw), _weight_groups(nw)
        brank = 0
        kernel: list[dict] = []
        for w, cols in pg.items():
            rows = tg.get(w, [])
            if not rows:
                kernel += [{c: Fraction(1)} for c in cols]
                continue
            sub = Bm.submatrix(rows, cols)
            cb = cob.submatrix(rows, ng.get(w, [])) if ng.get(w) else SparseExactMatrix.zero(len(rows), 0)
            stacked = _horizontal([sub, cb])
            r_all = rank(stacked, "exact") if stacked.entries else 0
            r_cb = rank(cb, "exact") if cb.entries else 0
            brank += r_all - r_cb
            _, kb = _rref_kernel(stacked)
            part = []
            for vec in kb:
                pv = {cols[c]: x for c, x in vec.items() if c < len(cols)}
                if pv:
                    part.append(pv)
            # independent projections only
            if part:
                M = SparseExactMatrix.from_triples(len(pairs), len(part), [(r, c, x) for c, v in enumerate(part) for r, x in v.items()])
                if rank(M, "exact") != len(part):
                    raise ArithmeticError("kernel projection is degenerate")
            kernel += part
        res["rank"][H] = brank
        res["R"][H] = len(kernel)
        # commutative side: products of tripods and the image of one-edge graphs
        Sdim, ann, prank = _commutative_relations(g, m, H, pairs, kernel)
        res["S"][H] = Sdim
        res["ann"][H] = ann
        res["prank"][H] = prank
    return QuadraticPresentation(g, m, gens, res["wedge"], res["uwedge"], res["gr2"], res["rank"], res["R"], res["S"], res["closed"], res["ann"], res["prank"], res["gr2deg"])


def _commutative_relations(g: int, m: int, H: int, pairs: list, kernel: list[dict]):
    """(dim S, S annihilates R, rank of the pairing of R with the products)."""
    # products S_x S_y; the pairing is <P, x^y> = sign * |Aut P|, matching the dual differential
    prod_index: dict = {}
    pair_to_prod = []
    for x, y in pairs:
        res = product_graph(g, m, [x.dec[0], y.dec[0]])
        if res is None:
            raise ArithmeticError(f"product of {x} and {y} vanishes")
        gph, s = res
        pair_to_prod.append((prod_index.setdefault(gph, len(prod_index)), s * automorphism_order(gph)))
    singles = {}
    for U in _multisets(g, m, 4):
        if _imbalance(U) == H:
            c = single_vertex(g, m, U)
            if c is not None:
                singles.setdefault(c.graph, len(singles))
    P, Q = len(prod_index), len(singles)
    one_edge = [b for b in enumerate_basis(g, m, 2, H, False) if len(b.edges) == 1 and b.n == 2]
    # image columns over rows P (first) then Q, grouped by torus weight
    groups: dict = {}
    for b in one_edge:
        groups.setdefault(b.torus_weight(), []).append(b)
    S_vectors = []
    for w, bl in groups.items():
        cols = [d_total(b, False) for b in bl]
        prow = {}
        qrow = {}
        for c, col in enumerate(cols):
            for gph, v in col.items():
                if gph in prod_index:
                    prow.setdefault(prod_index[gph], {})[c] = v
                elif gph in singles:
                    qrow.setdefault(singles[gph], {})[c] = v
                else:
                    raise KeyError(f"unexpected term {gph}")
        qkeys = sorted(qrow)
        Mq = SparseExactMatrix.from_triples(len(qkeys), len(cols), [(i, c, v) for i, q in enumerate(qkeys) for c, v in qrow[q].items()])
        _, kb = _rref_kernel(Mq) if qkeys else (None, [{c: Fraction(1)} for c in range(len(cols))])
        for vec in kb:
            s = {}
            for p, row in prow.items():
                val = sum(row.get(c, 0) * x for c, x in vec.items())
                if val:
                    s[p] = val
            if s:
                S_vectors.append(s)
    if S_vectors:
        M = SparseExactMatrix.from_triples(P, len(S_vectors), [(r, c, v) for c, s in enumerate(S_vectors) for r, v in s.items()])
        Sdim = rank(M, "exact")
    else:
        Sdim = 0
    # pull back S to the exterior square through the product map and pair with R
    pulled = []
    for s in S_vectors:
        pulled.append({i: s.get(p, 0) * sg for i, (p, sg) in enumerate(pair_to_prod) if s.get(p)})
    ann = True
    for s in pulled:
        for r in kernel:
            if sum(s.get(i, 0) * x for i, x in r.items()):
                ann = False
                break
        if not ann:
            break
    # R pairs nondegenerately with the products, so R is exactly the annihilator of S
    prank = 0
    if kernel:
        M = SparseExactMatrix.from_triples(P, len(kernel), [(pair_to_prod[i][0], b, x * pair_to_prod[i][1]) for b, r in enumerate(kernel) for i, x in r.items()])
        prank = rank(M, "exact") if M.entries else 0
    return Sdim, ann, prank


# ----------------------------------------------------------------------------
# low-weight Koszulness


@dataclass
class KoszulReport:
    g: int
    m: int
    W0: int
    cohomology: dict  # (W, H) -> {degree: dim}
    predicted: dict  # (W, H) -> degree
    concentrated: dict  # (W, H) -> bool

    def ok(self) -> bool:
        return all(self.concentrated.values())


def koszul_low_weight_check(g: int, m: int, W0: int, qd: QuadraticPresentation | None = None) -> KoszulReport:
    """Weight <= W0 part of the Chevalley-Eilenberg complex of the quadratic Lie algebra.

    Weight one is the dual of the generators; in weight two the complex is
    (gr^2)^* -> (Lambda^2 V)^* with the transposed bracket, so its cohomology
    is R^* in the exterior-square degree plus the kernel of the transposed
    bracket one degree lower.  Degrees are CE degrees of the corresponding
    free graphs (sums of the tripod degrees).
    """
    if W0 > 2:
        raise ValueError("only weights <= 2 are implemented")
    coh, pred, conc = {}, {}, {}
    gens = {H: enumerate_basis(g, m, 1, H, True) for H in (-3, -1, 1, 3)}
    for H, L in gens.items():
        if L:
            k = degree(L[0])
            coh[(1, H)] = {k: len(L)}
            pred[(1, H)] = critical_degree_ce(m, 1, H)
            conc[(1, H)] = k == pred[(1, H)]
    if W0 >= 2:
        qd = qd or quadratic_data(g, m)
        for H, wd in qd.wedge_dims.items():
            if not wd and not qd.gr2_dims.get(H):
                continue
            dims = {}
            if qd.R_dims[H]:
                h1 = next(h for h in sorted(gens) if H - h in gens and gens[h] and gens[H - h])
                k = degree(gens[h1][0]) + degree(gens[H - h1][0])
                dims[k] = qd.R_dims[H]
            # classes of gr^2 missed by the bracket survive one degree below the exterior square
            missed = qd.gr2_dims.get(H, 0) - qd.bracket_rank[H]
            if missed:
                for k2, v in qd.gr2_degrees.get(H, {}).items():
                    dims[k2] = dims.get(k2, 0) + v
                if missed != sum(qd.gr2_degrees.get(H, {}).values()):
                    raise ArithmeticError("partial bracket image not resolved by degree")
            coh[(2, H)] = dims
            pred[(2, H)] = critical_degree_ce(m, 2, H)
            conc[(2, H)] = all(d == pred[(2, H)] for d in dims)
    return KoszulReport(g, m, W0, coh, pred, conc)
