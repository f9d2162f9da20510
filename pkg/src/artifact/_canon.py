"""Sign-aware canonical labeling shared by all graph families.

A labeled object is described by per-vertex colors, marker parities and
decoration blocks, plus a list of typed edges.  The orientation sign of a
relabeling is the Koszul sign of the induced reorderings of the marker word,
the block word and the edge word, times the flip sign of every symmetric edge
whose endpoints get swapped during normalization.
"""
from __future__ import annotations

from itertools import permutations, product
from typing import Hashable, Sequence


class EdgeType:
    """parity: degree parity of the edge; flip: +1/-1 for undirected types, 0 for directed."""

    __slots__ = ("parity", "flip")

    def __init__(self, parity: int, flip: int) -> None:
        self.parity = parity % 2
        self.flip = flip


def koszul_sort(items: Sequence, parities: Sequence[int]) -> tuple[list, int]:
    """Stable sort with the Koszul sign of the permutation; sign 0 if two equal odd items."""
    n = len(items)
    idx = sorted(range(n), key=lambda i: items[i])
    sign = 1
    odd = [i for i in idx if parities[i]]
    for a in range(len(odd)):
        for b in range(a + 1, len(odd)):
            if odd[a] > odd[b]:
                sign = -sign
    for a in range(len(idx) - 1):
        i, j = idx[a], idx[a + 1]
        if parities[i] and parities[j] and items[i] == items[j]:
            return [items[i] for i in idx], 0
    return [items[i] for i in idx], sign


def perm_koszul_sign(order: Sequence[int], parities: Sequence[int]) -> int:
    """Sign of moving item order[k] to slot k, counting only odd items."""
    odd = [o for o in order if parities[o]]
    inv = 0
    for a in range(len(odd)):
        oa = odd[a]
        for b in range(a + 1, len(odd)):
            if oa > odd[b]:
                inv += 1
    return -1 if inv % 2 else 1


def _normalize_edges(edges, pos, etypes):
    out = []
    sign = 1
    for u, v, t in edges:
        a, b = pos[u], pos[v]
        et = etypes[t]
        if et.flip and a > b:
            a, b = b, a
            sign *= et.flip
        out.append((t, a, b))
    return out, sign


def _refine(n: int, colors, vpar, blocks, edges, etypes) -> list[int]:
    inv = [(colors[v], vpar[v], blocks[v]) for v in range(n)]
    ranks = _rank_values(inv)
    nclasses = len(set(ranks))
    while True:
        nbr: list[list] = [[] for _ in range(n)]
        for u, v, t in edges:
            if etypes[t].flip:
                nbr[u].append((t, 0, ranks[v]))
                nbr[v].append((t, 0, ranks[u]))
            else:
                nbr[u].append((t, 1, ranks[v]))
                nbr[v].append((t, -1, ranks[u]))
        new = _rank_values([(ranks[v], tuple(sorted(nbr[v]))) for v in range(n)])
        k = len(set(new))
        ranks = new
        if k == nclasses:
            return ranks
        nclasses = k


def _rank_values(values: list) -> list[int]:
    distinct = sorted(set(values))
    index = {v: i for i, v in enumerate(distinct)}
    return [index[v] for v in values]


def canonical_order(
    n: int,
    colors: Sequence[Hashable],
    vpar: Sequence[int],
    blocks: Sequence[tuple],
    bpar: Sequence[int],
    edges: Sequence[tuple[int, int, int]],
    etypes: dict[int, EdgeType],
) -> tuple[list[int], int, tuple] | None:
    """Return (order, sign, edge_key) for the canonical relabeling, or None if zero.

    order[k] is the old index of the vertex placed at new position k.  Blocks
    must already be sorted internally; only whole blocks are permuted here.
    """
    ident = list(range(n))
    norm, _ = _normalize_edges(edges, ident, etypes)
    for (t, a, b) in norm:
        if a == b and etypes[t].flip == -1:
            return None
    seen = set()
    for e in norm:
        if etypes[e[0]].parity:
            if e in seen:
                return None
            seen.add(e)

    ranks = _refine(n, colors, vpar, blocks, edges, etypes)
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(ranks[v], []).append(v)
    cell_list = [cells[k] for k in sorted(cells)]
    eparity_of = {t: et.parity for t, et in etypes.items()}

    best_key = None
    best_sign = 0
    best_order = None
    for choice in product(*(permutations(c) for c in cell_list)):
        order = [v for cell in choice for v in cell]
        pos = [0] * n
        for k, v in enumerate(order):
            pos[v] = k
        nedges, sign = _normalize_edges(edges, pos, etypes)
        sorted_edges, esign = koszul_sort(nedges, [eparity_of[e[0]] for e in nedges])
        key = tuple(sorted_edges)
        sign *= esign * perm_koszul_sign(order, vpar) * perm_koszul_sign(order, bpar)
        if best_key is None or key < best_key:
            best_key, best_sign, best_order = key, sign, order
        elif key == best_key and sign != best_sign:
            return None
    return best_order, best_sign, best_key
