"""Differentials and brackets on decorated and hairy graphs."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable

from .exactla import SparseExactMatrix
from .graphs import (
    ZERO,
    CanonicalGraph,
    DecoratedGraph,
    HairyGraph,
    alpha,
    beta,
    canonicalize,
    canonicalize_hairy,
    degree,
    hairy_admissible,
    sym_parity,
)


class LinearCombination(dict):
    """Finite map basis element -> nonzero Fraction."""

    def add(self, key, coef) -> None:
        if not coef:
            return
        v = self.get(key, 0) + coef
        if v:
            self[key] = Fraction(v)
        else:
            self.pop(key, None)

    def add_canonical(self, c, coef) -> None:
        if c is not ZERO:
            self.add(c.graph, coef * c.sign)

    def iadd(self, other: LinearCombination, scale=1) -> LinearCombination:
        for k, v in other.items():
            self.add(k, v * scale)
        return self

    def scaled(self, s) -> LinearCombination:
        out = LinearCombination()
        for k, v in self.items():
            out.add(k, v * s)
        return out

    def __add__(self, other: LinearCombination) -> LinearCombination:
        return LinearCombination(self).iadd(other)

    def __sub__(self, other: LinearCombination) -> LinearCombination:
        return LinearCombination(self).iadd(other, -1)


class MissingTermError(KeyError):
    """A differential produced a graph absent from the codomain basis."""


def _graph(x) -> DecoratedGraph:
    if isinstance(x, CanonicalGraph):
        return x.graph
    if x is ZERO:
        raise ValueError("operation on Zero")
    return x


def _block_parity(block, m: int) -> int:
    return sum(sym_parity(s, m) for s in block) % 2


def contract_edge(graph: DecoratedGraph, t: int):
    """(-1)^j Gamma/e for the t-th edge e=(i,j), canonicalized; ZERO for a tadpole."""
    i, j = graph.edges[t]
    if i == j:
        return ZERO, 0
    m = graph.m
    blocks = list(graph.dec)
    lo, hi = (i, j) if i < j else (j, i)
    between = sum(_block_parity(blocks[k], m) for k in range(lo + 1, hi)) % 2
    sign = -1 if (_block_parity(blocks[j], m) and between) else 1
    sign *= -1 if (j + 1) % 2 else 1
    blocks[i] = blocks[i] + blocks[j] if j > i else blocks[j] + blocks[i]
    del blocks[j]

    def mp(x):
        if x == j:
            x = i
        return x - 1 if x > j else x

    edges = tuple((mp(a), mp(b)) for k, (a, b) in enumerate(graph.edges) if k != t)
    return canonicalize(DecoratedGraph(graph.g, graph.m, graph.n - 1, edges, tuple(blocks))), sign


def d_contract(graph) -> LinearCombination:
    """Sum over edges e=(i,j) of (-1)^j Gamma/e."""
    graph = _graph(graph)
    out = LinearCombination()
    for t in range(len(graph.edges)):
        c, s = contract_edge(graph, t)
        if c is not ZERO:
            out.add_canonical(c, s)
    return out


def diagonal_terms(g: int, m: int) -> list[tuple[int, int, int]]:
    """(coefficient, left, right) for (-1)^m sum_i (a_i (x) b_i - b_i (x) a_i)."""
    s = -1 if m % 2 else 1
    out = []
    for i in range(1, g + 1):
        out.append((s, alpha(i), beta(i)))
        out.append((-s, beta(i), alpha(i)))
    return out


def insert_pair(blocks: list[tuple], i: int, j: int, x: int, y: int, m: int) -> int:
    """Multiply x (x) y from the left into blocks i and j in place; returns the Koszul sign."""
    sign = 1
    if sym_parity(y, m) and sum(_block_parity(blocks[k], m) for k in range(j)) % 2:
        sign = -sign
    blocks[j] = (y,) + blocks[j]
    if sym_parity(x, m) and sum(_block_parity(blocks[k], m) for k in range(i)) % 2:
        sign = -sign
    blocks[i] = (x,) + blocks[i]
    return sign


def cut_edge(graph: DecoratedGraph, t: int) -> LinearCombination:
    """cut(Gamma, e) for the t-th edge, without the vertex-count prefactor."""
    i, j = graph.edges[t]
    out = LinearCombination()
    if i == j:
        return out
    edges = graph.edges[:t] + graph.edges[t + 1 :]
    for coef, x, y in diagonal_terms(graph.g, graph.m):
        blocks = list(graph.dec)
        s = insert_pair(blocks, i, j, x, y, graph.m)
        out.add_canonical(canonicalize(DecoratedGraph(graph.g, graph.m, graph.n, edges, tuple(blocks))), coef * s)
    return out


def d_cut(graph, connected: bool = False) -> LinearCombination:
    """(-1)^{|V|} sum over edges of cut(Gamma, e); connected=True drops disconnected terms."""
    graph = _graph(graph)
    pre = -1 if graph.n % 2 else 1
    out = LinearCombination()
    for t in range(len(graph.edges)):
        out.iadd(cut_edge(graph, t), pre)
    if connected:
        for k in [k for k in out if not k.is_connected()]:
            del out[k]
    return out


def d_total(graph, connected: bool = False) -> LinearCombination:
    return d_contract(graph).iadd(d_cut(graph, connected))


def differential_matrix(
    domain_basis: list, codomain_basis: list, d: Callable[[object], dict], strict: bool = True
) -> SparseExactMatrix:
    """Matrix of d with rows indexed by codomain_basis and columns by domain_basis."""
    index = {b: k for k, b in enumerate(codomain_basis)}
    entries = {}
    for c, b in enumerate(domain_basis):
        for key, v in d(b).items():
            r = index.get(key)
            if r is None:
                if strict:
                    raise MissingTermError(f"{key} not in codomain basis (image of {b})")
                continue
            entries[(r, c)] = Fraction(v)
    return SparseExactMatrix(len(codomain_basis), len(domain_basis), entries)


# ----------------------------------------------------------------------------
# Lie bracket by gluing decorations of two graphs


def pairing(x: int, y: int) -> int:
    """<a_i, b_j> = delta_ij = -<b_j, a_i>; all other pairings vanish."""
    if x // 2 != y // 2 or (x & 1) == (y & 1):
        return 0
    return 1 if not x & 1 else -1


def disjoint_union(g1: DecoratedGraph, g2: DecoratedGraph) -> tuple[DecoratedGraph, int]:
    """Product in the free graph complex with its Koszul sign (vertex markers of g2 pass g1's decorations)."""
    m = g1.m
    p1 = sum(_block_parity(b, m) for b in g1.dec) % 2
    sign = -1 if (g2.n % 2 and p1) else 1
    n1 = g1.n
    edges = g1.edges + tuple((a + n1, b + n1) for a, b in g2.edges)
    return DecoratedGraph(g1.g, m, g1.n + g2.n, edges, g1.dec + g2.dec), sign


def extract_pair(blocks: list[tuple], u: int, p: int, w: int, q: int, m: int) -> int:
    """Remove blocks[u][p] = x and blocks[w][q] = y, moving x (x) y to the far left; inverse of insert_pair."""
    x = blocks[u][p]
    y = blocks[w][q]
    sign = 1
    # bring each symbol to the front of its block
    if sym_parity(x, m) and sum(sym_parity(s, m) for s in blocks[u][:p]) % 2:
        sign = -sign
    blocks[u] = (x,) + blocks[u][:p] + blocks[u][p + 1 :]
    if sym_parity(y, m) and sum(sym_parity(s, m) for s in blocks[w][:q]) % 2:
        sign = -sign
    blocks[w] = (y,) + blocks[w][:q] + blocks[w][q + 1 :]
    sign *= insert_pair_sign(blocks, u, w, m)
    blocks[u] = blocks[u][1:]
    blocks[w] = blocks[w][1:]
    return sign


def insert_pair_sign(blocks: list[tuple], u: int, w: int, m: int) -> int:
    """Sign of insert_pair for blocks that already start with the inserted symbols."""
    x, y = blocks[u][0], blocks[w][0]
    trial = [b for b in blocks]
    trial[u] = trial[u][1:]
    trial[w] = trial[w][1:]
    return insert_pair(trial, u, w, x, y, m)


def glue_pairs(graph: DecoratedGraph, pairs: Iterable[tuple[int, int, int, int]]) -> LinearCombination:
    """Adjoint of cutting: for each (u, p, w, q) join vertices u, w by an edge through decorations."""
    m = graph.m
    pre = -1 if graph.n % 2 else 1
    dsign = -1 if m % 2 else 1
    out = LinearCombination()
    for u, p, w, q in pairs:
        c = pairing(graph.dec[u][p], graph.dec[w][q])
        if not c:
            continue
        blocks = list(graph.dec)
        s = extract_pair(blocks, u, p, w, q, m)
        new = DecoratedGraph(graph.g, m, graph.n, graph.edges + ((u, w),), tuple(blocks))
        out.add_canonical(canonicalize(new), pre * dsign * c * s)
    return out


def lie_bracket(x: dict, y: dict) -> LinearCombination:
    """Bracket of connected graphs: glue one decoration of the first to one of the second.

    The factor (-1)^deg(first) is the desuspension sign that turns the
    symmetric gluing of the free complex into a graded Lie bracket.
    """
    out = LinearCombination()
    for g1, c1 in x.items():
        for g2, c2 in y.items():
            u, s = disjoint_union(g1, g2)
            s = -s if degree(g1) % 2 else s
            n1 = g1.n
            pairs = [
                (a, p, b, q)
                for a in range(n1)
                for p in range(len(u.dec[a]))
                for b in range(n1, u.n)
                for q in range(len(u.dec[b]))
            ]
            out.iadd(glue_pairs(u, pairs), c1 * c2 * s)
    return out


def as_combination(graph) -> LinearCombination:
    out = LinearCombination()
    if isinstance(graph, CanonicalGraph):
        out.add(graph.graph, graph.sign)
    else:
        out.add(graph, 1)
    return out


# ----------------------------------------------------------------------------
# hairy graphs


def hairy_split(graph, kind: str = "ICG") -> LinearCombination:
    """Vertex splitting: one new internal vertex joined to the split vertex by a new edge."""
    if isinstance(graph, CanonicalGraph):
        graph = graph.graph
    h: HairyGraph = graph
    ni = h.ni
    w = ni
    out = LinearCombination()
    half = Fraction(1, 2)
    verts = list(range(ni)) + [-j for j in range(1, h.r + 1)]
    for v in verts:
        inc = [(k, side) for k, e in enumerate(h.edges) for side in (0, 1) if e[side] == v]
        d = len(inc)
        for size in range(0, d + 1):
            for T in combinations(range(d), size):
                if v >= 0:
                    if size + 1 < 3 or d - size + 1 < 3:
                        continue
                    coef = half
                else:
                    if size + 1 < 3:
                        continue
                    coef = 1
                edges = [list(e) for e in h.edges]
                for t in T:
                    k, side = inc[t]
                    edges[k][side] = w
                new = HairyGraph(h.n, ni + 1, h.r, tuple(tuple(e) for e in edges) + ((v, w),))
                if not hairy_admissible(new, kind):
                    continue
                c = canonicalize_hairy(new)
                if c is not ZERO:
                    out.add(c.graph, coef * c.sign)
    return out
