from collections import Counter
from itertools import product
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.gcore import Bidegree, assemble_complex
from artifact.glrep import (
    character_of_piece,
    decompose,
    defining,
    dual,
    exterior_square,
    fft_invariant_dim,
    fft_invariant_dim_by_characters,
    invariant_probe,
    irrep_character,
    irrep_dimension,
    is_symmetric,
    power,
    ssyt_count,
    symmetric_square,
    tensor,
)


def ssyt_character(lam, g):
    """Weights of all semistandard fillings, by exhaustive search over fillings."""
    shape = [x for x in lam if x > 0]
    cells = [(r, c) for r, L in enumerate(shape) for c in range(L)]
    out = Counter()
    for fill in product(range(g), repeat=len(cells)):
        T = dict(zip(cells, fill))
        if all(T[(r, c)] <= T[(r, c + 1)] for (r, c) in cells if (r, c + 1) in T) and all(
            T[(r, c)] < T[(r + 1, c)] for (r, c) in cells if (r + 1, c) in T
        ):
            w = [0] * g
            for v in fill:
                w[v] += 1
            out[tuple(w)] += 1
    return out


def shifted(char, t):
    return Counter({tuple(x + t for x in w): c for w, c in char.items()})


def test_character_of_piece_examples():
    cx = assemble_complex("GC", 2, 2, Bidegree(1, 3))
    assert character_of_piece(cx.bases[1]) == Counter({(3, 0): 1, (2, 1): 1, (1, 2): 1, (0, 3): 1})
    assert character_of_piece([]) == Counter()
    A = [b for v in assemble_complex("G", 1, 1, Bidegree(2, 0)).bases.values() for b in v if b.num_edges == 3 and b.n == 2]
    assert character_of_piece(A) == Counter({(0,): 1})


def test_decompose_examples():
    s3 = Counter({(3, 0): 1, (2, 1): 1, (1, 2): 1, (0, 3): 1})
    assert decompose(s3, 2) == [((3, 0), 1)]
    vv = tensor(defining(2), dual(defining(2)))
    assert sorted(decompose(vv, 2)) == [((0, 0), 1), ((1, -1), 1)]
    assert decompose(Counter({(0, 0, 0): 1}), 3) == [((0, 0, 0), 1)]
    assert decompose(Counter(), 4) == []
    with pytest.raises(ValueError):
        decompose(Counter({(1, 0): 1}), 3)


def test_irrep_dimension_examples():
    assert irrep_dimension((3, 0, 0, 0, 0, 0)) == 56 == comb(8, 3)
    assert irrep_dimension((2, 2, 0, 0, 0, 0)) == 105 == 36 * 35 // 12
    assert irrep_dimension((0,) * 6) == 1
    with pytest.raises(ValueError):
        irrep_dimension((0, 1))


def weights(g, size):
    return st.lists(st.integers(0, size), min_size=g, max_size=g).map(lambda v: tuple(sorted(v, reverse=True))).filter(
        lambda l: sum(l) <= size
    )


@given(g=st.integers(1, 4), data=st.data())
@settings(max_examples=40, deadline=None)
def test_dimension_and_character_agree_with_tableaux(g, data):
    lam = data.draw(weights(g, 5 if g <= 3 else 4))
    brute = ssyt_character(lam, g)
    assert irrep_dimension(lam, g) == sum(brute.values()) == ssyt_count(lam, g)
    assert irrep_character(lam, g) == brute
    t = data.draw(st.integers(-3, 0))
    # twisting by a determinant power shifts the highest weight
    assert decompose(shifted(brute, t), g) == [(tuple(x + t for x in lam), 1)]


@given(g=st.integers(1, 3), data=st.data())
@settings(max_examples=30, deadline=None)
def test_decompose_recovers_sums_and_is_additive(g, data):
    lams = data.draw(st.lists(weights(g, 4), min_size=1, max_size=3))
    mults = data.draw(st.lists(st.integers(1, 3), min_size=len(lams), max_size=len(lams)))
    expected = Counter()
    char = Counter()
    for lam, c in zip(lams, mults):
        expected[lam] += c
        for w, k in ssyt_character(lam, g).items():
            char[w] += c * k
    assert is_symmetric(char)
    assert dict(decompose(char, g)) == dict(expected)


@pytest.mark.parametrize("g", [2, 3])
def test_decompose_multiplicative_on_small_products(g):
    V, D = defining(g), dual(defining(g))
    a, b = symmetric_square(V), tensor(V, D)
    prod_char = tensor(a, b)
    total = sum(c * irrep_dimension(l, g) for l, c in decompose(prod_char, g))
    assert total == sum(prod_char.values()) == (g * (g + 1) // 2) * g * g
    lhs = Counter()
    for l1, c1 in decompose(a, g):
        for l2, c2 in decompose(b, g):
            for l, c in decompose(tensor(irrep_character(l1, g), irrep_character(l2, g)), g):
                lhs[l] += c * c1 * c2
    assert dict(decompose(prod_char, g)) == dict(lhs)
    assert dict(decompose(exterior_square(V), g)) == ({(1, 1) + (0,) * (g - 2): 1})


def brute_invariants(A, B, g):
    """Trivial multiplicity by counting zero weights minus those lifted from nontrivial irreps, via a direct torus average."""
    char = tensor(power(defining(g), A, g), power(dual(defining(g)), B, g))
    # Weyl integration on the torus: multiply by the Vandermonde product and read the rho coefficient
    vand = Counter({(0,) * g: 1})
    for i in range(g):
        for j in range(i + 1, g):
            step = Counter()
            for w, c in vand.items():
                up = list(w)
                up[i] += 1
                step[tuple(up)] += c
                dn = list(w)
                dn[j] += 1
                step[tuple(dn)] -= c
            vand = step
    prod_char = tensor(char, vand)
    rho = tuple(g - 1 - i for i in range(g))
    return prod_char.get(rho, 0)


@pytest.mark.parametrize("A,B,g", [(2, 2, 2), (2, 2, 3), (1, 2, 3), (2, 2, 1), (3, 3, 2), (3, 3, 3), (1, 1, 1), (0, 0, 2)])
def test_fft_dimensions(A, B, g):
    assert fft_invariant_dim(A, B, g) == fft_invariant_dim_by_characters(A, B, g) == brute_invariants(A, B, g)


def test_fft_examples():
    assert fft_invariant_dim(2, 2, 2) == 2
    assert fft_invariant_dim(1, 2, 5) == 0
    assert fft_invariant_dim(2, 2, 1) == 1
    assert fft_invariant_dim(3, 3, 3) == factorial(3)


def test_invariant_probe_examples():
    for g in (1, 2, 4):
        assert invariant_probe(defining(g), 0, 1, g) == 1
        assert invariant_probe(defining(g), 1, 0, g) == 0
    cx = assemble_complex("GC", 2, 2, Bidegree(1, 3))
    s3 = character_of_piece(cx.bases[1])
    # S^3 V occurs once in V^{(x)3}
    assert invariant_probe(s3, 0, 3, 2) == 1
    assert invariant_probe(power(defining(3), 3, 3), 0, 3, 3) == 6
    assert invariant_probe(power(defining(2), 3, 2), 0, 3, 2) == 5
    assert invariant_probe(Counter(), 1, 1, 2) == 0


@pytest.mark.parametrize("g", [2, 3])
def test_probe_additive(g):
    a, b = symmetric_square(defining(g)), exterior_square(defining(g))
    for k, l in ((0, 2), (1, 3), (0, 1)):
        assert invariant_probe(a + b, k, l, g) == invariant_probe(a, k, l, g) + invariant_probe(b, k, l, g)
    assert invariant_probe(a + b, 0, 2, g) == 2
