import json
import random
from fractions import Fraction

import pytest

from artifact.gcore import (
    Bidegree,
    BettiTable,
    TriGradedComplex,
    assemble_complex,
    betti,
    betti_from_dict,
    betti_to_dict,
    cache_dir,
    cached_betti,
    complex_to_dict,
    euler_characteristic,
    load_matrices,
    stored_betti,
    truncate,
)
from artifact.stable import cgamma_complex

TRIANGLE = ([(0, 1), (1, 2), (0, 2)], 3)


def sizes(cx):
    return {k: len(v) for k, v in cx.bases.items() if v}


def test_assemble_examples():
    assert cx_total("GC", 2, 1, 1, 3) == 0
    cx = assemble_complex("GC", 2, 2, Bidegree(1, 3))
    assert sizes(cx) == {1: 4}
    assert assemble_complex("fG", 0, 1, Bidegree(1, 0)).total_dim() == 0


def cx_total(kind, g, m, W, H):
    return assemble_complex(kind, g, m, Bidegree(W, H)).total_dim()


@pytest.mark.parametrize(
    "args,kw",
    [
        (("XX", 1, 1, Bidegree(1, 1)), {}),
        (("ppICG", 1, 1, None), {"n": 3, "r": 1, "C": 0}),
        (("ppICG",), {"n": 3}),
        (("G", -1, 1, Bidegree(1, 1)), {}),
        (("G", 1, 0, Bidegree(1, 1)), {}),
        (("G", 1, 1, None), {}),
        (("G", 1, 1, Bidegree(1, 1)), {"n": 3}),
        (("Gstable", 2, None, Bidegree(1, 1)), {"M": 0, "N": 0}),
    ],
)
def test_assemble_rejects_bad_parameters(args, kw):
    with pytest.raises(ValueError):
        assemble_complex(*args, **kw)


def test_betti_examples():
    cx = assemble_complex("GC", 2, 2, Bidegree(1, 1))
    assert betti(cx, view="G").at(1, 1) == {1: 6}
    empty = assemble_complex("fG", 0, 1, Bidegree(1, 0))
    assert betti(empty).nonzero() == {}
    assert betti(cgamma_complex(*TRIANGLE)).nonzero() == {(None, None, -2): 2}


def test_truncation_examples():
    for m in (1, 2):
        for H in (-3, -1, 1, 3):
            cx = assemble_complex("GC", 2, m, Bidegree(1, H))
            t = truncate(cx, Fraction(-(2 * m - 1), 2), Fraction(1, 2))
            assert sizes(t) == sizes(cx.reported())
            assert betti(t).at(1, H) == betti(cx).at(1, H)
            assert truncate(cx, -10, 0).total_dim() == 0
    tri = truncate(cgamma_complex(*TRIANGLE), 0, 0, cutoff=-2)
    # the top differential of the triangle is zero, so every element of degree -2 is closed
    assert sizes(tri) == {-3: 1, -2: 3}
    assert betti(tri).nonzero() == {(None, None, -2): 2}


def test_truncation_cuts_in_the_middle():
    cx = assemble_complex("G", 1, 1, Bidegree(3, 1))
    rep = cx.reported()
    for cut in range(min(rep.degrees()), max(rep.degrees()) + 2):
        t = truncate(cx, 0, 0, cutoff=cut)
        assert t.check_dsq() == []
        full = betti(cx, view="fG").at(3, 1)
        got = betti(t).at(3, 1)
        # cohomology agrees strictly below the cutoff, and at the cutoff it is the quotient of cocycles
        assert {k: v for k, v in got.items() if k < cut} == {k: v for k, v in full.items() if k < cut}
        assert all(k <= cut for k in got)
    assert truncate(cx, 0, 0, cutoff=Fraction(1, 2)).total_dim() == sum(len(v) for k, v in rep.bases.items() if k < Fraction(1, 2))


def test_euler_examples():
    assert euler_characteristic(assemble_complex("GC", 2, 2, Bidegree(1, 3))) == -4
    assert euler_characteristic(assemble_complex("fG", 0, 1, Bidegree(1, 0))) == 0
    assert euler_characteristic(cgamma_complex(*TRIANGLE)) == 2
    cx = assemble_complex("GC", 2, 2, Bidegree(1, 3))
    assert euler_characteristic(cx, Bidegree(2, 0)) == 0


CELLS = [("fG", 2, 1, 3, 1), ("G", 2, 2, 2, 0), ("GC", 1, 1, 3, -1), ("fG", 1, 2, 3, 1), ("G", 3, 1, 2, 2)]


@pytest.mark.parametrize("cell", CELLS)
def test_euler_equals_alternating_betti(cell):
    kind, g, m, W, H = cell
    cx = assemble_complex(kind, g, m, Bidegree(W, H))
    sb = stored_betti(cx)
    assert sum((-1) ** (k % 2) * v for k, v in sb.items()) == euler_characteristic(cx)
    assert cx.check_dsq() == []
    cx.validate()


def _shuffled(cx, seed):
    rng = random.Random(seed)
    perms = {k: rng.sample(range(len(b)), len(b)) for k, b in cx.bases.items()}
    bases = {k: [cx.bases[k][i] for i in p] for k, p in perms.items()}
    weights = {k: [cx.weights[k][i] for i in p] for k, p in perms.items()}
    diffs = {}
    for k, M in cx.diffs.items():
        rinv = {old: new for new, old in enumerate(perms[k + 1])}
        cinv = {old: new for new, old in enumerate(perms[k])}
        diffs[k] = type(M)(M.nrows, M.ncols, {(rinv[r], cinv[c]): v for (r, c), v in M.entries.items()})
    return TriGradedComplex(cx.kind, cx.params, cx.bidegree, bases, diffs, weights, cx.view)


@pytest.mark.parametrize("cell", CELLS)
def test_betti_invariant_under_shuffles_and_blocking(cell):
    kind, g, m, W, H = cell
    cx = assemble_complex(kind, g, m, Bidegree(W, H))
    ref = betti(cx)
    for seed in range(3):
        s = _shuffled(cx, seed)
        s.validate()
        assert betti(s).dims == ref.dims
    assert betti(cx, blocked=False).dims == ref.dims
    assert betti(cx, mode="exact").dims == ref.dims


def test_cache_hit_matches_cold_run():
    cells = [("G", 2, 1, 2, 0), ("GC", 2, 2, 1, 1)]
    for kind, g, m, W, H in cells:
        cold = cached_betti(kind, g, m, W, H, use_cache=False)
        first = cached_betti(kind, g, m, W, H)
        second = cached_betti(kind, g, m, W, H)
        assert cold.dims == first.dims == second.dims
    assert list(cache_dir().glob("*.json"))


def test_serialization_roundtrip():
    cx = assemble_complex("fG", 2, 1, Bidegree(3, 1))
    doc = json.loads(json.dumps(complex_to_dict(cx)))
    mats = load_matrices(doc)
    assert set(mats) == set(cx.diffs)
    for k, M in cx.diffs.items():
        assert mats[k].entries == M.entries and mats[k].shape == M.shape
    assert [b for b in doc["bases"][str(cx.degrees()[0])]] == [b.serialize() for b in cx.bases[cx.degrees()[0]]]
    bt = betti(cx)
    again = betti_from_dict(json.loads(json.dumps(betti_to_dict(bt))))
    assert again.dims == bt.dims


def test_betti_table_merge():
    a = BettiTable({(1, 1, 0): 2})
    b = BettiTable({(1, 1, 0): 1, (2, 0, 1): 3})
    c = a.merge(b)
    assert c.dims == {(1, 1, 0): 3, (2, 0, 1): 3}
    assert c.euler(2, 0) == -3
