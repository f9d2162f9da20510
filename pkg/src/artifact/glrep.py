"""GL_g representation layer: torus characters and their irreducible decomposition.

Characters are ``Counter`` objects mapping weight vectors in Z^g to
multiplicities.  Decomposition twists by a power of the determinant so that
all weights are polynomial, then peels off highest weights using Kostka
numbers on the dominant chamber.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import permutations
from math import factorial, prod
from typing import Iterable

TorusCharacter = Counter


def character_of_piece(basis: Iterable) -> TorusCharacter:
    """Multiset of torus weights (alpha_i count minus beta_i count) of a basis."""
    return Counter(b.torus_weight() for b in basis)


def is_symmetric(char: TorusCharacter) -> bool:
    for w, c in char.items():
        for p in set(permutations(w)):
            if char.get(p, 0) != c:
                return False
    return True


def tensor(a: TorusCharacter, b: TorusCharacter) -> TorusCharacter:
    out: Counter = Counter()
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            out[tuple(x + y for x, y in zip(w1, w2))] += c1 * c2
    return +out


def adams2(a: TorusCharacter) -> TorusCharacter:
    return Counter({tuple(2 * x for x in w): c for w, c in a.items()})


def exterior_square(a: TorusCharacter) -> TorusCharacter:
    sq, ad = tensor(a, a), adams2(a)
    keys = set(sq) | set(ad)
    out = Counter({k: (sq.get(k, 0) - ad.get(k, 0)) // 2 for k in keys})
    return +out


def symmetric_square(a: TorusCharacter) -> TorusCharacter:
    sq, ad = tensor(a, a), adams2(a)
    keys = set(sq) | set(ad)
    return +Counter({k: (sq.get(k, 0) + ad.get(k, 0)) // 2 for k in keys})


def defining(g: int) -> TorusCharacter:
    return Counter({tuple(1 if j == i else 0 for j in range(g)): 1 for i in range(g)})


def dual(a: TorusCharacter) -> TorusCharacter:
    return Counter({tuple(-x for x in w): c for w, c in a.items()})


def power(a: TorusCharacter, k: int, g: int) -> TorusCharacter:
    out = Counter({(0,) * g: 1})
    for _ in range(k):
        out = tensor(out, a)
    return out


# ----------------------------------------------------------------------------
# Kostka numbers and dimensions


def _horizontal_strips(lam: tuple[int, ...], k: int):
    """Partitions nu contained in lam with lam/nu a horizontal strip of size k."""
    n = len(lam)

    def rec(i, remaining, acc):
        if i == n:
            if remaining == 0:
                yield tuple(acc)
            return
        lower = lam[i + 1] if i + 1 < n else 0
        for nu_i in range(lam[i], lower - 1, -1):
            take = lam[i] - nu_i
            if take > remaining:
                break
            yield from rec(i + 1, remaining - take, acc + [nu_i])

    yield from rec(0, k, [])


@lru_cache(maxsize=None)
def kostka(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """Number of SSYT of shape lam and content mu."""
    lam = tuple(x for x in lam if x)
    mu = tuple(mu)
    if sum(lam) != sum(mu) or any(x < 0 for x in mu):
        return 0
    while mu and mu[-1] == 0:
        mu = mu[:-1]
    if not mu:
        return 1 if not lam else 0
    k = mu[-1]
    total = 0
    for nu in _horizontal_strips(lam, k):
        total += kostka(tuple(x for x in nu if x), mu[:-1])
    return total


def irrep_dimension(lam: tuple[int, ...], g: int | None = None) -> int:
    """Weyl dimension formula; negative entries allowed."""
    lam = tuple(lam)
    g = len(lam) if g is None else g
    if len(lam) != g:
        raise ValueError(f"highest weight {lam} must have length {g}")
    if any(lam[i] < lam[i + 1] for i in range(g - 1)):
        raise ValueError(f"{lam} is not non-increasing")
    num = prod(lam[i] - lam[j] + j - i for i in range(g) for j in range(i + 1, g))
    den = prod(j - i for i in range(g) for j in range(i + 1, g))
    return num // den


def ssyt_count(lam: tuple[int, ...], g: int) -> int:
    """Brute-force count of SSYT of shape lam with entries <= g."""
    shift = min(lam) if lam and min(lam) < 0 else 0
    shape = [x - shift for x in lam if x - shift > 0]
    cells = [(r, c) for r, L in enumerate(shape) for c in range(L)]
    fill: dict = {}

    def rec(i):
        if i == len(cells):
            return 1
        r, c = cells[i]
        lo = 1
        if c > 0:
            lo = max(lo, fill[(r, c - 1)])
        if r > 0:
            lo = max(lo, fill[(r - 1, c)] + 1)
        total = 0
        for v in range(lo, g + 1):
            fill[(r, c)] = v
            total += rec(i + 1)
        fill.pop((r, c), None)
        return total

    return rec(0)


@lru_cache(maxsize=None)
def _partitions_bounded(n: int, parts: int, maxpart: int) -> tuple[tuple[int, ...], ...]:
    if parts == 0:
        return ((),) if n == 0 else ()
    out = []
    for first in range(min(n, maxpart), -1, -1):
        if first * parts < n:
            break
        for rest in _partitions_bounded(n - first, parts - 1, first):
            out.append((first,) + rest)
    return tuple(out)


def dominates(lam, mu) -> bool:
    s1 = s2 = 0
    for a, b in zip(lam, mu):
        s1 += a
        s2 += b
        if s2 > s1:
            return False
    return True


def decompose(char: TorusCharacter, g: int) -> list[tuple[tuple[int, ...], int]]:
    """Irreducible constituents (highest weight, multiplicity), highest first."""
    char = +Counter(char)
    if not char:
        return []
    for w in char:
        if len(w) != g:
            raise ValueError("weight length does not match g")
    t = max(0, -min(min(w) for w in char))
    dom: Counter = Counter()
    for w, c in char.items():
        if all(w[i] >= w[i + 1] for i in range(g - 1)):
            dom[tuple(x + t for x in w)] = c
    out = []
    while dom:
        lam = max(dom)
        c = dom[lam]
        if c < 0:
            raise ValueError(f"not a character: negative multiplicity at {lam}")
        n = sum(lam)
        for nu in _partitions_bounded(n, g, lam[0]):
            if not dominates(lam, nu):
                continue
            k = kostka(lam, nu)
            if k:
                dom[nu] -= c * k
                if dom[nu] < 0:
                    raise ValueError(f"not a character: multiplicity at {nu} went negative")
                if dom[nu] == 0:
                    del dom[nu]
        out.append((tuple(x - t for x in lam), c))
    return out


def total_dimension(decomp) -> int:
    return sum(c * irrep_dimension(l, len(l)) for l, c in decomp)


def irrep_character(lam: tuple[int, ...], g: int) -> TorusCharacter:
    t = max(0, -min(lam))
    shifted = tuple(x + t for x in lam)
    out = Counter()
    for nu in _partitions_bounded(sum(shifted), g, shifted[0]):
        k = kostka(shifted, nu)
        if k:
            for p in set(permutations(nu)):
                out[tuple(x - t for x in p)] = k
    return out


# ----------------------------------------------------------------------------
# invariants


def num_syt(lam: tuple[int, ...]) -> int:
    lam = [x for x in lam if x]
    n = sum(lam)
    hooks = 1
    for r, L in enumerate(lam):
        for c in range(L):
            arm = L - c - 1
            leg = sum(1 for rr in range(r + 1, len(lam)) if lam[rr] > c)
            hooks *= arm + leg + 1
    return factorial(n) // hooks


def fft_invariant_dim(A: int, B: int, g: int) -> int:
    """dim (V^{(x)A} (x) V*^{(x)B})^{GL_g}."""
    if A != B:
        return 0
    if A <= g:
        return factorial(A)
    return sum(num_syt(lam) ** 2 for lam in _partitions_bounded(A, g, A))


def fft_invariant_dim_by_characters(A: int, B: int, g: int) -> int:
    char = tensor(power(defining(g), A, g), power(dual(defining(g)), B, g))
    return trivial_multiplicity(char, g)


def trivial_multiplicity(char: TorusCharacter, g: int) -> int:
    for lam, c in decompose(char, g):
        if all(x == 0 for x in lam):
            return c
    return 0


def invariant_probe(char: TorusCharacter, k: int, l: int, g: int) -> int:
    """dim (U (x) V^{(x)k} (x) V*^{(x)l})^{GL_g} for the representation U with character char."""
    if not char:
        return 0
    probe = tensor(power(defining(g), k, g), power(dual(defining(g)), l, g))
    return trivial_multiplicity(tensor(char, probe), g)


def format_weight(lam) -> str:
    return "(" + ",".join(str(x) for x in lam) + ")"


def decomposition_report(decomp, g: int) -> list[str]:
    rows = [f"λ={format_weight(l)} mult={c} dim={irrep_dimension(l, g)}" for l, c in decomp]
    if decomp:
        rows.append(f"total_dim={total_dimension(decomp)}")
    return rows


# ----------------------------------------------------------------------------
# quadratic part of a free Lie algebra on graded generators


def free_lie_square(generators: dict) -> dict:
    """Degree-two part of the free Lie algebra on generators keyed by imbalance H.

    Pairs with distinct H contribute a tensor product, equal H an exterior square.
    """
    out: dict = {}
    hs = sorted(generators)
    for a, h1 in enumerate(hs):
        for h2 in hs[a:]:
            c1, c2 = generators[h1], generators[h2]
            piece = exterior_square(c1) if h1 == h2 else tensor(c1, c2)
            if piece:
                out.setdefault(h1 + h2, Counter()).update(piece)
    return {h: +c for h, c in out.items() if +c}


def character_difference(a: TorusCharacter, b: TorusCharacter) -> TorusCharacter:
    """a - b; raises if b is not a subcharacter of a."""
    out = Counter(a)
    out.subtract(b)
    if any(v < 0 for v in out.values()):
        raise ValueError("subtrahend is not contained in the character")
    return +out
