"""Decorated graphs, hairy graphs, canonical forms and basis enumeration.

Vertices are indexed from 0 internally; serialization is 1-based.
Decoration symbols are small integers: ``2*(i-1)`` is alpha_i and
``2*(i-1)+1`` is beta_i, so the global symbol order is
alpha_1 < beta_1 < alpha_2 < beta_2 < ...
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from typing import Iterator

from ._canon import EdgeType, canonical_order, koszul_sort, perm_koszul_sign

ALPHA = 0
BETA = 1

_FG_EDGE = {0: EdgeType(0, -1)}


def alpha(i: int) -> int:
    return 2 * (i - 1)


def beta(i: int) -> int:
    return 2 * (i - 1) + 1


def sym_is_beta(s: int) -> bool:
    return bool(s & 1)


def sym_index(s: int) -> int:
    return s // 2 + 1


def sym_parity(s: int, m: int) -> int:
    """alpha has degree m, beta degree m+1."""
    return (m + (s & 1)) % 2


def sym_degree(s: int, m: int) -> int:
    return m + (s & 1)


def sym_name(s: int) -> str:
    return ("b" if s & 1 else "a") + str(s // 2 + 1)


def parse_sym(name: str) -> int:
    kind, idx = name[0], int(name[1:])
    if kind == "a":
        return alpha(idx)
    if kind == "b":
        return beta(idx)
    raise ValueError(f"bad decoration symbol {name!r}")


class _Zero:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "Zero"

    def __bool__(self) -> bool:
        return False


ZERO = _Zero()


@dataclass(frozen=True)
class DecoratedGraph:
    """n vertices, ordered directed edges, one decoration tuple per vertex."""

    g: int
    m: int
    n: int
    edges: tuple[tuple[int, int], ...]
    dec: tuple[tuple[int, ...], ...]

    def validate(self) -> None:
        if self.n < 1 or len(self.dec) != self.n:
            raise ValueError("decoration list must have one entry per vertex")
        for i, j in self.edges:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i},{j}) out of range for {self.n} vertices")
        for d in self.dec:
            for s in d:
                if not (0 <= s < 2 * self.g):
                    raise ValueError(f"decoration {s} out of range for g={self.g}")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def counts(self) -> tuple[int, int]:
        """(a, b): numbers of alpha and beta decorations."""
        b = sum(1 for d in self.dec for s in d if s & 1)
        a = sum(len(d) for d in self.dec) - b
        return a, b

    def valences(self) -> list[int]:
        val = [len(d) for d in self.dec]
        for i, j in self.edges:
            val[i] += 1
            val[j] += 1
        return val

    def weight(self) -> int:
        a, b = self.counts()
        return 2 * (len(self.edges) - self.n) + a + b

    def imbalance(self) -> int:
        a, b = self.counts()
        return a - b

    def torus_weight(self) -> tuple[int, ...]:
        w = [0] * self.g
        for d in self.dec:
            for s in d:
                w[s // 2] += -1 if s & 1 else 1
        return tuple(w)

    def is_connected(self) -> bool:
        return _connected(self.n, self.edges)

    def components(self) -> list[list[int]]:
        return _components(self.n, self.edges)

    def serialize(self) -> str:
        edges = ",".join(f"({i + 1},{j + 1})" for i, j in self.edges)
        dec = ",".join(f"{v + 1}:[{','.join(sym_name(s) for s in d)}]" for v, d in enumerate(self.dec))
        return f"{self.g};{self.m};{self.n};edges=[{edges}];dec=[{dec}]"

    def __str__(self) -> str:
        return self.serialize()


def parse_graph(text: str) -> DecoratedGraph:
    g, m, n, edges, dec = text.split(";")
    g, m, n = int(g), int(m), int(n)
    body = edges[len("edges=[") : -1]
    elist = []
    if body:
        for part in body[1:-1].split("),("):
            i, j = part.split(",")
            elist.append((int(i) - 1, int(j) - 1))
    dbody = dec[len("dec=[") : -1]
    dlist: list[tuple[int, ...]] = [()] * n
    if dbody:
        for part in dbody.split("],"):
            part = part.rstrip("]")
            v, syms = part.split(":[")
            dlist[int(v) - 1] = tuple(parse_sym(s) for s in syms.split(",") if s)
    gr = DecoratedGraph(g, m, n, tuple(elist), tuple(dlist))
    gr.validate()
    return gr


@dataclass(frozen=True)
class CanonicalGraph:
    """A canonical representative together with the sign raw = sign * graph."""

    graph: object
    sign: int


def _connected(n: int, edges) -> bool:
    return n <= 1 or len(_components(n, edges)) == 1


def _components(n: int, edges) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        a, b = find(e[0]), find(e[1])
        if a != b:
            parent[a] = b
    comps: dict[int, list[int]] = {}
    for v in range(n):
        comps.setdefault(find(v), []).append(v)
    return sorted(comps.values())


def sort_block(block: tuple[int, ...], m: int) -> tuple[tuple[int, ...], int]:
    """Sort a decoration monomial; sign 0 when an odd symbol repeats."""
    out, sign = koszul_sort(list(block), [sym_parity(s, m) for s in block])
    return tuple(out), sign


def canonicalize(raw: DecoratedGraph):
    """Canonical representative and orientation sign, or ZERO."""
    raw.validate()
    m = raw.m
    sign = 1
    blocks = []
    for d in raw.dec:
        b, s = sort_block(d, m)
        if s == 0:
            return ZERO
        sign *= s
        blocks.append(b)
    bpar = [sum(sym_parity(s, m) for s in b) % 2 for b in blocks]
    res = canonical_order(
        raw.n,
        [0] * raw.n,
        [1] * raw.n,
        blocks,
        bpar,
        [(i, j, 0) for i, j in raw.edges],
        _FG_EDGE,
    )
    if res is None:
        return ZERO
    order, s, key = res
    graph = DecoratedGraph(raw.g, raw.m, raw.n, tuple((a, b) for _, a, b in key), tuple(blocks[v] for v in order))
    return CanonicalGraph(graph, sign * s)


def degree(graph) -> int:
    """Cohomological degree 2m*e - (2m+1)*v + m*a + (m+1)*b of a decorated graph."""
    if isinstance(graph, CanonicalGraph):
        graph = graph.graph
    if graph is ZERO or graph is None:
        raise ValueError("degree of Zero is undefined")
    m = graph.m
    a, b = graph.counts()
    return 2 * m * len(graph.edges) - (2 * m + 1) * graph.n + m * a + (m + 1) * b


# ----------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def multigraphs(v: int, e: int, connected: bool) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Loopless multigraphs on v vertices with e edges, one per isomorphism class."""
    pairs = list(combinations(range(v), 2))
    seen = {}
    for es in combinations_with_replacement(pairs, e):
        if connected and not _connected(v, es):
            continue
        key = _plain_canonical(v, es)
        seen.setdefault(key, key)
    return tuple(sorted(seen))


def _plain_canonical(v: int, es) -> tuple[tuple[int, int], ...]:
    res = canonical_order(v, [0] * v, [0] * v, [()] * v, [0] * v, [(a, b, 0) for a, b in es], {0: EdgeType(0, 1)})
    return tuple((a, b) for _, a, b in res[2])


def _monomials(g: int, m: int, na: int, nb: int) -> list[tuple[int, ...]]:
    """Sorted nonzero monomials with na alphas and nb betas."""
    apar = m % 2
    bpar = (m + 1) % 2
    pick_a = combinations if apar else combinations_with_replacement
    pick_b = combinations if bpar else combinations_with_replacement
    out = []
    for ai in pick_a(range(1, g + 1), na):
        for bi in pick_b(range(1, g + 1), nb):
            out.append(tuple(sorted([alpha(i) for i in ai] + [beta(i) for i in bi])))
    return out


def _splits(total: int, parts: int, minimum: list[int]) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    lo = minimum[0]
    for k in range(lo, total + 1):
        for rest in _splits(total - k, parts - 1, minimum[1:]):
            yield (k,) + rest


def enumerate_basis(g: int, m: int, W: int, H: int, connected: bool = True) -> list[DecoratedGraph]:
    """All canonical nonzero graphs of weight W and imbalance H, sorted by serialization."""
    found: dict[DecoratedGraph, None] = {}
    if W < 0:
        return []
    dmax = W + 2 if connected else 3 * W
    for v in range(1, W + 1):
        for D in range(abs(H), dmax + 1):
            if (D - W) % 2 or (D + H) % 2:
                continue
            e = v + (W - D) // 2
            if e < 0 or 2 * e + D < 3 * v:
                continue
            a, b = (D + H) // 2, (D - H) // 2
            for es in multigraphs(v, e, connected):
                deg = [0] * v
                for i, j in es:
                    deg[i] += 1
                    deg[j] += 1
                need = [max(0, 3 - d) for d in deg]
                for dv in _splits(D, v, need):
                    for av in _splits(a, v, [max(0, dv[k] - b) for k in range(v)]):
                        if any(av[k] > dv[k] for k in range(v)):
                            continue
                        bv = [dv[k] - av[k] for k in range(v)]
                        if sum(bv) != b:
                            continue
                        opts = [_monomials(g, m, av[k], bv[k]) for k in range(v)]
                        for blocks in product(*opts):
                            c = canonicalize(DecoratedGraph(g, m, v, es, tuple(blocks)))
                            if c is not ZERO:
                                found.setdefault(c.graph, None)
    return sorted(found, key=DecoratedGraph.serialize)


# ----------------------------------------------------------------------------
# hairy graphs


@dataclass(frozen=True)
class HairyGraph:
    """Internal vertices 0..ni-1, external vertices -1..-r, undirected edges."""

    n: int
    ni: int
    r: int
    edges: tuple[tuple[int, int], ...]

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def complexity(self) -> int:
        return len(self.edges) - self.ni

    def loop_order(self) -> int:
        return self.complexity() + self.r - 1

    def valence(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def external_valences(self) -> list[int]:
        return [self.valence(-j) for j in range(1, self.r + 1)]

    def defect(self) -> int:
        return sum(self.external_valences()) - self.r

    def internally_connected(self) -> bool:
        # drop external vertices, keep each edge as an arc; ext-ext edges become free arcs
        nodes = self.ni + len(self.edges)
        parent = list(range(nodes))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k, (a, b) in enumerate(self.edges):
            for end in (a, b):
                if end >= 0:
                    x, y = find(self.ni + k), find(end)
                    if x != y:
                        parent[x] = y
        return nodes > 0 and len({find(x) for x in range(nodes)}) == 1

    def serialize(self) -> str:
        def name(x):
            return f"e{-x}" if x < 0 else f"i{x + 1}"

        edges = ",".join(f"({name(a)},{name(b)})" for a, b in self.edges)
        return f"n={self.n};r={self.r};int={self.ni};edges=[{edges}]"

    def __str__(self) -> str:
        return self.serialize()


HAIRY_KINDS = ("ICG", "pICG", "ppICG")


def hairy_admissible(h: HairyGraph, kind: str, allow_empty: bool = False) -> bool:
    if kind not in HAIRY_KINDS:
        raise ValueError(f"unknown hairy kind {kind!r}")
    if any(a == b for a, b in h.edges):
        return False
    if any(h.valence(v) < 3 for v in range(h.ni)):
        return False
    ext = h.external_valences()
    if kind == "ppICG" and any(x != 1 for x in ext):
        return False
    if kind == "pICG" and any(x < 1 for x in ext):
        return False
    if not h.edges and h.ni == 0:
        return allow_empty and kind == "ICG"
    if h.ni and not any(min(e) < 0 for e in h.edges):
        # Graphs_n has no vacuum components
        return False
    return h.internally_connected()


def _hairy_edge_type(n: int) -> dict[int, EdgeType]:
    return {0: EdgeType((n - 1) % 2, -1 if n % 2 else 1)}


def canonicalize_hairy(raw: HairyGraph):
    """Canonical hairy graph and sign; externals stay fixed, internal vertices have parity n."""
    ni, r = raw.ni, raw.r
    tot = ni + r

    def idx(x):
        return ni + (-x) - 1 if x < 0 else x

    colors = [0] * ni + list(range(1, r + 1))
    vpar = [raw.n % 2] * ni + [0] * r
    res = canonical_order(
        tot, colors, vpar, [()] * tot, [0] * tot, [(idx(a), idx(b), 0) for a, b in raw.edges], _hairy_edge_type(raw.n)
    )
    if res is None:
        return ZERO
    order = res[0]
    res2 = _relabel_sign(raw, [v for v in order if v < ni])
    if res2 is None:
        return ZERO
    edges, sign = res2
    return CanonicalGraph(HairyGraph(raw.n, ni, r, edges), sign)


def _hedge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if _hkey(a) <= _hkey(b) else (b, a)


def _hkey(x: int) -> tuple[int, int]:
    # internal vertices first, then externals 1..r
    return (0, x) if x >= 0 else (1, -x)


def _relabel_sign(raw: HairyGraph, internal_order: list[int]):
    """Edges and Koszul sign after placing internal vertex internal_order[k] at k."""
    n = raw.n
    et = _hairy_edge_type(n)[0]
    pos = {v: k for k, v in enumerate(internal_order)}

    def mp(x):
        return pos[x] if x >= 0 else x

    sign = perm_koszul_sign(internal_order, [n % 2] * raw.ni)
    items = []
    for a, b in raw.edges:
        a2, b2 = mp(a), mp(b)
        if _hkey(a2) > _hkey(b2):
            a2, b2 = b2, a2
            sign *= et.flip
        items.append((_hkey(a2), _hkey(b2), a2, b2))
    srt, s2 = koszul_sort(items, [et.parity] * len(items))
    if s2 == 0:
        return None
    return tuple((x[2], x[3]) for x in srt), sign * s2


def hairy_degree(graph) -> int:
    """n * (#internal vertices) - (n-1) * (#edges) + 1."""
    if isinstance(graph, CanonicalGraph):
        graph = graph.graph
    return graph.n * graph.ni - (graph.n - 1) * len(graph.edges) + 1


def enumerate_hairy(kind: str, n: int, r: int, C: int, allow_empty: bool = False) -> list[HairyGraph]:
    """Canonical nonzero hairy graphs of the given kind, arity r and complexity C."""
    if kind not in HAIRY_KINDS:
        raise ValueError(f"unknown hairy kind {kind!r}")
    found: dict[HairyGraph, None] = {}
    min_ext = 1 if kind in ("pICG", "ppICG") else 0
    ni_max = 2 * C - min_ext * r
    for ni in range(0, max(ni_max, 0) + 1):
        e = C + ni
        if e < 0:
            continue
        verts = list(range(ni)) + [-j for j in range(1, r + 1)]
        pairs = [p for p in combinations(verts, 2)]
        for es in combinations_with_replacement(pairs, e):
            h = HairyGraph(n, ni, r, tuple(es))
            if not hairy_admissible(h, kind, allow_empty):
                continue
            c = canonicalize_hairy(h)
            if c is not ZERO:
                found.setdefault(c.graph, None)
    return sorted(found, key=HairyGraph.serialize)
