import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact import exactla
from artifact.exactla import (
    SparseExactMatrix,
    betti_pair,
    dump_matrix,
    load_matrix,
    rank_certified,
    rank_exact,
    rank_mod_p,
)
from artifact.exactla import _modp_py


def dense_rank(rows):
    """Plain Gauss-Jordan over Fractions."""
    a = [[Fraction(x) for x in r] for r in rows]
    rk, col = 0, 0
    ncols = len(a[0]) if a else 0
    while rk < len(a) and col < ncols:
        piv = next((i for i in range(rk, len(a)) if a[i][col]), None)
        if piv is None:
            col += 1
            continue
        a[rk], a[piv] = a[piv], a[rk]
        for i in range(len(a)):
            if i != rk and a[i][col]:
                f = a[i][col] / a[rk][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rk])]
        rk += 1
        col += 1
    return rk


matrices = st.integers(1, 9).flatmap(
    lambda r: st.integers(1, 9).flatmap(
        lambda c: st.lists(st.lists(st.sampled_from([-2, -1, 0, 0, 0, 1, 1, 3]), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def test_small_examples():
    assert rank_exact(SparseExactMatrix.zero(3, 4)) == 0
    assert rank_exact(SparseExactMatrix.from_dense([[1, 0], [0, 1]])) == 2
    assert rank_certified(SparseExactMatrix.zero(0, 0)) == 0


@given(matrices)
@settings(max_examples=150, deadline=None)
def test_rank_agrees_with_dense_oracle(rows):
    M = SparseExactMatrix.from_dense(rows)
    r = dense_rank(rows)
    assert rank_exact(M) == r
    assert rank_certified(M) == r
    assert rank_exact(M.transpose()) == r


@given(matrices, st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_rank_permutation_invariant(rows, rnd):
    M = SparseExactMatrix.from_dense(rows)
    pr = list(range(M.nrows))
    pc = list(range(M.ncols))
    rnd.shuffle(pr)
    rnd.shuffle(pc)
    assert rank_exact(M.submatrix(pr, pc)) == rank_exact(M)


def test_certified_survives_entry_equal_to_prime():
    p = 2_147_483_629
    M = SparseExactMatrix.from_dense([[p, 0], [0, 1]])
    # modulo p the first row vanishes: the fixed prime list must not be trusted
    assert rank_certified(M, primes=[p, p], seed=1) == 2
    assert rank_mod_p(M, p) == 1


def test_kernels_agree():
    rng = random.Random(5)
    p = 1_000_003
    for _ in range(30):
        n, c = rng.randint(1, 30), rng.randint(1, 30)
        tr = [(i, j, rng.randint(0, p - 1)) for i in range(n) for j in range(c) if rng.random() < 0.2]
        r_py = _modp_py.rank_mod_p(n, c, tr, p)
        assert exactla._rank_mod_p_kernel(n, c, tr, p) == r_py


def test_betti_pair():
    z = SparseExactMatrix.zero(5, 5)
    assert betti_pair(z, z) == 5
    d_in = SparseExactMatrix.from_dense([[1], [0]])
    d_out = SparseExactMatrix.from_dense([[0, 1]])
    assert betti_pair(d_in, d_out) == 0
    with pytest.raises(ValueError):
        betti_pair(SparseExactMatrix.zero(3, 1), SparseExactMatrix.zero(1, 2))
    with pytest.raises(ValueError):
        betti_pair(SparseExactMatrix.from_dense([[1], [0]]), SparseExactMatrix.from_dense([[1, 0]]))


@given(matrices)
@settings(max_examples=40, deadline=None)
def test_dump_roundtrip(rows):
    M = SparseExactMatrix.from_dense([[Fraction(x, 3) for x in r] for r in rows])
    text = dump_matrix(M)
    assert text.splitlines()[0] == f"{M.nrows} {M.ncols} {M.nnz}"
    assert load_matrix(text) == M


def test_assembled_matrices_certified_equals_exact():
    from artifact.gcore import Bidegree, assemble_complex

    for g, m, W, H in ((2, 1, 3, 1), (2, 2, 3, -1), (1, 1, 3, 1)):
        cx = assemble_complex("fG", g, m, Bidegree(W, H))
        for M in cx.diffs.values():
            assert rank_certified(M) == rank_exact(M)
