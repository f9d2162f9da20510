from collections import defaultdict
from math import comb, factorial

import pytest

from artifact._reference import EXTERIOR_SQUARE, WEIGHT_TWO
from artifact.gcore import Bidegree, assemble_complex, euler_characteristic, stored_betti
from artifact.glrep import irrep_dimension
from artifact.graphs import DecoratedGraph, alpha, canonicalize
from artifact.koszulce import (
    a_presentation,
    ce_complex,
    ce_vanishes_above_edge_degree_zero,
    critical_degree_ce,
    edge_count,
    edge_degree_split,
    edge_graded_betti,
    koszul_low_weight_check,
    presentation_relation,
    single_vertex,
)


def nonzero(cx):
    return {k: v for k, v in stored_betti(cx, "exact").items() if v}


def test_weight_zero_is_the_unit():
    cx = ce_complex(3, 1, 0, 0)
    assert {k: len(v) for k, v in cx.bases.items()} == {0: 1}
    assert nonzero(cx) == {0: 1}
    assert ce_complex(3, 1, 0, 2).total_dim() == 0
    with pytest.raises(ValueError):
        ce_complex(1, 1, -1, 0)


def test_dsq_and_euler_small_piece():
    cx = ce_complex(1, 1, 2, 0)
    assert cx.check_dsq() == []
    b = nonzero(cx)
    assert sum((-1) ** (k % 2) * v for k, v in b.items()) == euler_characteristic(cx)


@pytest.mark.parametrize("m", [1, 2])
def test_weight_one_concentration(m):
    for H in (-3, -1, 1, 3):
        b = nonzero(ce_complex(3, m, 1, H))
        assert set(b) <= {critical_degree_ce(m, 1, H)}


def test_edge_degrees():
    cx = ce_complex(2, 1, 1, 1)
    split = edge_degree_split(cx)
    assert set(split) <= {0}
    A = canonicalize(DecoratedGraph(1, 1, 2, ((0, 1),) * 3, ((), ()))).graph
    assert edge_count(A) == 3
    pieces = edge_degree_split(ce_complex(1, 1, 2, 0))
    assert any(A in v for v in pieces[3].values())
    eb = edge_graded_betti(ce_complex(1, 1, 2, 0))
    assert sum(eb.values()) == sum(nonzero(ce_complex(1, 1, 2, 0)).values())


@pytest.mark.parametrize("m", [1, 2])
def test_edge_degree_zero_in_range(m):
    for H in (-3, -1, 1, 3):
        assert ce_vanishes_above_edge_degree_zero(3, m, 1, H)


def test_presentation_weight_one():
    pres = a_presentation(3, 1, 1)
    for (W, H), gens in pres.generators.items():
        assert W == 1
        assert pres.relations[(W, H)] == 0
        assert sum(pres.dims[(W, H)].values()) == len(gens)
    # generators match the tripods: odd alphas at most once, even betas with repetition
    count = sum(comb(3, j) * comb(3 + (3 - j) - 1, 3 - j) for j in range(4))
    assert sum(len(v) for v in pres.generators.values()) == count == 38
    tripods = sum(assemble_complex("G", 3, 1, Bidegree(1, H)).total_dim() for H in (-3, -1, 1, 3))
    assert tripods == count
    with pytest.raises(ValueError):
        single_vertex(2, 1, (alpha(1), alpha(2)))
    with pytest.raises(ValueError):
        a_presentation(3, 1, 3)


def test_relations_span_image_of_one_edge_graphs():
    pres = a_presentation(2, 1, 2)
    assert pres.image_rank_match and all(pres.image_rank_match.values())
    r = presentation_relation(2, 2, (alpha(1), alpha(1)), (alpha(2), alpha(2)))
    assert r


def test_koszul_trivial_and_reported_cases():
    rep = koszul_low_weight_check(3, 1, 1)
    assert rep.ok() and all(len(v) == 1 for v in rep.cohomology.values())
    below = koszul_low_weight_check(2, 1, 2)
    # outside the range the report is informational only
    assert set(below.concentrated) == set(below.cohomology)
    with pytest.raises(ValueError):
        koszul_low_weight_check(6, 1, 3)


def table_dims(table, g=6):
    return {H: sum(c * irrep_dimension(l, g) for l, c in row.items()) for H, row in table.items()}


def test_quadratic_data_weight_two(qd61):
    assert qd61.gr2_dims[4] == 105
    gr2 = {H: v for H, v in qd61.gr2_dims.items() if v}
    assert gr2 == {H: v for H, v in table_dims(WEIGHT_TWO["odd"]).items() if v}
    uw = {H: v for H, v in qd61.ungraded_wedge_dims.items() if v}
    assert uw == {H: v for H, v in table_dims(EXTERIOR_SQUARE["odd"]).items() if v}
    assert qd61.complementary()
    for H in qd61.wedge_dims:
        assert qd61.bracket_closed[H] and qd61.annihilates[H]
        assert qd61.pairing_rank[H] == qd61.R_dims[H]
    rep = koszul_low_weight_check(6, 1, 2, qd61)
    assert rep.ok()


def _series_power(coeffs, W_max):
    """prod over (W,H) of (1 - x^W y^H)^(-c), truncated at weight W_max."""
    poly = {(0, 0): 1}
    for (W, H), c in sorted(coeffs.items()):
        if not c:
            continue
        # coefficient of z^n in (1 - z)^(-c) is c (c+1) ... (c+n-1) / n!
        factor, n, num = {}, 0, 1
        while n * W <= W_max:
            factor[n] = num // factorial(n)
            num *= c + n
            n += 1
        new = defaultdict(int)
        for (w1, h1), v in poly.items():
            for n, f in factor.items():
                if w1 + n * W <= W_max:
                    new[(w1 + n * W, h1 + n * H)] += v * f
        poly = new
    return poly


@pytest.mark.parametrize("g,m", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_euler_characteristic_matches_symmetric_algebra(g, m):
    W_max = 3 if g == 1 else 2
    chi_conn = {}
    for W in range(1, W_max + 1):
        for H in range(-W - 2, W + 3):
            chi_conn[(W, H)] = euler_characteristic(assemble_complex("G", g, m, Bidegree(W, H)))
    series = _series_power(chi_conn, W_max)
    assert any(v for (W, H), v in series.items() if W)
    for W in range(1, W_max + 1):
        for H in range(-3 * W - 2, 3 * W + 3):
            assert euler_characteristic(ce_complex(g, m, W, H)) == series.get((W, H), 0)
