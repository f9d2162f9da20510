"""Nilpotent endomorphisms of the cohomology of W_g preserving the intersection pairing.

Closed-manifold basis: ``ONE``, alpha_i, beta_i, ``OMEGA`` in degrees 0, m, m+1,
2m+1.  Three families of negative degree:

* ``A`` (degree -1):    beta_i -> sum_j A[i][j] alpha_j
* ``lambda`` (degree -m):   omega -> sum_j l_j beta_j, alpha_i -> s_l l_i 1
* ``mu`` (degree -m-1): omega -> sum_j u_j alpha_j, beta_i -> s_u u_i 1

Only the ``A`` family survives on the open manifold.  The symmetry of A and
the signs s_l, s_u depend on the pairing convention:

* ``"cup"`` uses the graded-commutative cup product, so <b_i, a_j> = <a_j, b_i>.
  This gives A = (-1)^m A^T, s_l = (-1)^(m+1) and s_u = (-1)^m.  It is the
  convention under which x . Delta~ = 0 and the action commutes with the
  graph differential; it is the default.
* ``"antisymmetric"`` declares <b_j, a_i> = -<a_i, b_j>.  This gives
  A = (-1)^(m+1) A^T and s_u = (-1)^(m+1).  It is kept to reproduce counts
  stated under that convention.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .diff import LinearCombination
from .gcore import TriGradedComplex
from .graphs import (
    CanonicalGraph,
    DecoratedGraph,
    alpha,
    beta,
    canonicalize,
    sym_index,
    sym_is_beta,
    sym_parity,
)

ONE = "1"
OMEGA = "w"
CONVENTIONS = ("cup", "antisymmetric")
FAMILIES = ("A", "lambda", "mu")


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def a_symmetry(m: int, convention: str = "cup") -> int:
    """+1 if A must be symmetric, -1 if antisymmetric."""
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    return _sign(m) if convention == "cup" else _sign(m + 1)


def unit_signs(m: int, convention: str = "cup") -> tuple[int, int]:
    """(s_l, s_u): coefficients of the unit in the lambda and mu families."""
    if convention == "cup":
        return _sign(m + 1), _sign(m)
    return _sign(m + 1), _sign(m + 1)


@dataclass(frozen=True)
class OspElement:
    family: str
    g: int
    m: int
    data: tuple
    convention: str = "cup"

    def degree(self) -> int:
        return {"A": -1, "lambda": -self.m, "mu": -self.m - 1}[self.family]

    def parity(self) -> int:
        return self.degree() % 2

    def is_constrained(self) -> bool:
        """True if the data satisfies the symmetry constraint of its family."""
        if self.family != "A":
            return True
        s = a_symmetry(self.m, self.convention)
        A = self.data
        return all(A[i][j] == s * A[j][i] for i in range(self.g) for j in range(self.g))

    def torus_weight(self) -> tuple[int, ...]:
        # dual pairing picture: the A family sits at imbalance -2
        if self.family != "A":
            raise ValueError("torus weight is defined for the open-manifold part only")
        w = [0] * self.g
        for i, j in product(range(self.g), repeat=2):
            if self.data[i][j]:
                w[i] -= 1
                w[j] -= 1
                return tuple(w)
        return tuple(w)

    def serialize(self) -> str:
        if self.family == "A":
            body = ";".join(",".join(str(x) for x in row) for row in self.data)
        else:
            body = ",".join(str(x) for x in self.data)
        return f"osp:{self.family}:g={self.g};m={self.m};[{body}]"

    def __str__(self) -> str:
        return self.serialize()

    def apply(self, sym) -> list[tuple[Fraction, object]]:
        """Image of one closed-basis symbol as (coefficient, symbol) pairs."""
        g, m = self.g, self.m
        out = []
        if self.family == "A":
            if isinstance(sym, int) and sym_is_beta(sym):
                i = sym_index(sym) - 1
                out = [(Fraction(self.data[i][j]), alpha(j + 1)) for j in range(g) if self.data[i][j]]
        elif self.family == "lambda":
            s_l, _ = unit_signs(m, self.convention)
            if sym == OMEGA:
                out = [(Fraction(c), beta(j + 1)) for j, c in enumerate(self.data) if c]
            elif isinstance(sym, int) and not sym_is_beta(sym):
                c = self.data[sym_index(sym) - 1]
                out = [(Fraction(s_l * c), ONE)] if c else []
        else:
            _, s_u = unit_signs(m, self.convention)
            if sym == OMEGA:
                out = [(Fraction(c), alpha(j + 1)) for j, c in enumerate(self.data) if c]
            elif isinstance(sym, int) and sym_is_beta(sym):
                c = self.data[sym_index(sym) - 1]
                out = [(Fraction(s_u * c), ONE)] if c else []
        return out


def _unit_matrix(g: int, entries) -> tuple:
    A = [[0] * g for _ in range(g)]
    for i, j, v in entries:
        A[i][j] = v
    return tuple(tuple(r) for r in A)


def osp_nil_basis(g: int, m: int, closed: bool = False, convention: str = "cup") -> list[OspElement]:
    """Basis of the degree -1 part, plus the lambda and mu families when closed."""
    if g < 0:
        raise ValueError("g must be nonnegative")
    s = a_symmetry(m, convention)
    out = []
    for i in range(g):
        for j in range(i, g):
            if i == j and s == -1:
                continue
            ents = [(i, j, 1)] if i == j else [(i, j, 1), (j, i, s)]
            out.append(OspElement("A", g, m, _unit_matrix(g, ents), convention))
    if closed:
        for fam in ("lambda", "mu"):
            for i in range(g):
                out.append(OspElement(fam, g, m, tuple(1 if j == i else 0 for j in range(g)), convention))
    return out


def osp_nil_dimension(g: int, m: int, closed: bool = False, convention: str = "cup") -> int:
    s = a_symmetry(m, convention)
    base = g * (g + 1) // 2 if s == 1 else g * (g - 1) // 2
    return base + (2 * g if closed else 0)


# ----------------------------------------------------------------------------
# the closed diagonal element


def closed_degree(sym, m: int) -> int:
    if sym == ONE:
        return 0
    if sym == OMEGA:
        return 2 * m + 1
    return m + 1 if sym_is_beta(sym) else m


def closed_diagonal(g: int, m: int) -> list[tuple[int, object, object]]:
    """1(x)w - w(x)1 + (-1)^m sum_i (a_i (x) b_i - b_i (x) a_i) as (coef, left, right) terms."""
    s = _sign(m)
    out = [(1, ONE, OMEGA), (-1, OMEGA, ONE)]
    for i in range(1, g + 1):
        out.append((s, alpha(i), beta(i)))
        out.append((-s, beta(i), alpha(i)))
    return out


def act_on_diagonal(x: OspElement) -> dict:
    """x . Delta~ in the tensor square, as {(left, right): coefficient}."""
    res: dict = {}
    px = x.degree()
    for c, a, b in closed_diagonal(x.g, x.m):
        for k, a2 in x.apply(a):
            res[(a2, b)] = res.get((a2, b), 0) + c * k
        ks = _sign(px * closed_degree(a, x.m))
        for k, b2 in x.apply(b):
            res[(a, b2)] = res.get((a, b2), 0) + c * ks * k
    return {key: v for key, v in res.items() if v}


def check_diagonal_invariance(x: OspElement) -> bool:
    return not act_on_diagonal(x)


# ----------------------------------------------------------------------------
# action on graphs


def act_on_basis(x: OspElement, graph) -> LinearCombination:
    """Derivation action of a degree -1 element on the decorations of a graph.

    Each beta occurrence is replaced in place; the Koszul sign counts the
    vertex markers and all decorations standing before it.
    """
    if x.family != "A":
        raise ValueError("only the degree -1 family acts on graphs of the open manifold")
    if isinstance(graph, CanonicalGraph):
        graph = graph.graph
    m = graph.m
    out = LinearCombination()
    passed = graph.n % 2
    for v, blk in enumerate(graph.dec):
        for p, s in enumerate(blk):
            if sym_is_beta(s):
                sg = _sign(passed)
                for k, new in x.apply(s):
                    nb = list(graph.dec)
                    nb[v] = blk[:p] + (new,) + blk[p + 1 :]
                    out.add_canonical(canonicalize(DecoratedGraph(graph.g, m, graph.n, graph.edges, tuple(nb))), k * sg)
            passed += sym_parity(s, m)
    return out


def act_on_combination(x: OspElement, comb: dict) -> LinearCombination:
    out = LinearCombination()
    for b, c in comb.items():
        out.iadd(act_on_basis(x, b), c)
    return out


class DualAction:
    """Action of x on the dual (GC) side: the transpose of act_on_basis for the automorphism-weighted pairing.

    x* b = sum over b' of [coefficient of b in x b'] * |Aut b| / |Aut b'| * b',
    with b' running over the piece of imbalance two lower.  This is the
    action that is a derivation of the bracket.
    """

    def __init__(self, x: OspElement, connected: bool = True):
        self.x = x
        self.connected = connected
        self._memo: dict = {}

    def _image(self, b) -> LinearCombination:
        from .graphs import enumerate_basis
        from .koszulce import automorphism_order

        if b not in self._memo:
            res = LinearCombination()
            W, H = b.weight(), b.imbalance()
            for src in enumerate_basis(b.g, b.m, W, H - 2, self.connected):
                v = act_on_basis(self.x, src).get(b, 0)
                if v:
                    res.add(src, Fraction(v) * automorphism_order(b) / automorphism_order(src))
            self._memo[b] = res
        return self._memo[b]

    def __call__(self, comb: dict) -> LinearCombination:
        out = LinearCombination()
        for b, c in comb.items():
            out.iadd(self._image(b), c)
        return out


# ----------------------------------------------------------------------------
# the extended complex


OSP_BIDEGREE = (0, -2)
# stored (free-graph) degree 2 reports as degree -1 in the dual view
OSP_STORED_DEGREE = 2


def extend_complex(gc: TriGradedComplex, convention: str = "cup") -> TriGradedComplex:
    """Semidirect extension: the osp summand lives only in bidegree (0, -2), degree -1, with zero differential."""
    bases = {k: list(v) for k, v in gc.bases.items()}
    weights = None if gc.weights is None else {k: list(v) for k, v in gc.weights.items()}
    bd = gc.bidegree
    g, m = gc.params["g"], gc.params["m"]
    if bd is not None and (bd.W, bd.H) == OSP_BIDEGREE and g > 0:
        osp = osp_nil_basis(g, m, False, convention)
        if osp:
            bases.setdefault(OSP_STORED_DEGREE, []).extend(osp)
            if weights is not None:
                weights.setdefault(OSP_STORED_DEGREE, []).extend(x.torus_weight() for x in osp)
    return TriGradedComplex(
        "GCex", dict(gc.params, convention=convention), bd, bases, dict(gc.diffs), weights, gc.view, lambda b: b.serialize()
    )
