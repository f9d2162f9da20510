"""Cell-by-cell comparison of the package complexes with the labeled-graph oracle."""
from artifact.gcore import Bidegree, assemble_complex

from oracle import normalize, oracle_complex

MAX_CELL = 50


def compare_cell(kind, g, m, W, H):
    """True on agreement of bases and every matrix entry (signs included); None if the cell is too big."""
    conn = kind == "G"
    cx = assemble_complex(kind, g, m, Bidegree(W, H))
    if cx.total_dim() > MAX_CELL:
        return None
    bases, mats, orb = oracle_complex(g, m, W, H, conn)
    ours = {k: len(v) for k, v in cx.bases.items() if v}
    if {k: len(v) for k, v in bases.items()} != ours:
        return ("dimensions", ours, {k: len(v) for k, v in bases.items()})
    pos, sgn = {}, {}
    for k, bs in cx.bases.items():
        idx = {b: q for q, b in enumerate(bases.get(k, []))}
        for q, b in enumerate(bs):
            key, s = normalize(b.n, b.edges, b.dec, m)
            rep, s2 = orb.project(key)
            pos[(k, q)] = idx[rep]
            sgn[(k, q)] = s * s2
    for k in cx.degrees():
        if not cx.dim(k + 1):
            continue
        M, ent = cx.matrix(k), mats[k]
        for c in range(cx.dim(k)):
            for r in range(cx.dim(k + 1)):
                a = M.entries.get((r, c), 0)
                b = ent.get((pos[(k + 1, r)], pos[(k, c)]), 0) * sgn[(k, c)] * sgn[(k + 1, r)]
                if a != b:
                    return ("entry", k, r, c, a, b)
    return True


def oracle_cells(gs=(0, 1, 2), ms=(1, 2), Ws=(1, 2, 3)):
    for kind in ("fG", "G"):
        for g in gs:
            for m in ms:
                for W in Ws:
                    hb = W + 2 if kind == "G" else 3 * W
                    for H in range(-hb, hb + 1):
                        yield kind, g, m, W, H


def run_oracle(**kw):
    """(number of compared cells, first disagreement or None)."""
    n = 0
    for cell in oracle_cells(**kw):
        r = compare_cell(*cell)
        if r is None:
            continue
        n += 1
        if r is not True:
            return n, (cell, r)
    return n, None
