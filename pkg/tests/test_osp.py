import random

import pytest

from artifact.diff import LinearCombination, as_combination, d_total, lie_bracket
from artifact.gcore import Bidegree, assemble_complex, betti
from artifact.graphs import DecoratedGraph, alpha, beta, canonicalize, degree, enumerate_basis
from artifact.osp import (
    DualAction,
    OspElement,
    act_on_basis,
    act_on_combination,
    check_diagonal_invariance,
    extend_complex,
    osp_nil_basis,
    osp_nil_dimension,
)


def test_basis_sizes_antisymmetric_convention():
    assert len(osp_nil_basis(2, 1, convention="antisymmetric")) == 3
    assert len(osp_nil_basis(2, 2, convention="antisymmetric")) == 1
    assert len(osp_nil_basis(1, 1, closed=True, convention="antisymmetric")) == 3


def test_basis_sizes_cup_convention():
    assert len(osp_nil_basis(2, 1)) == 1
    assert len(osp_nil_basis(2, 2)) == 3
    assert len(osp_nil_basis(1, 1, closed=True)) == 2


@pytest.mark.parametrize("convention", ["cup", "antisymmetric"])
def test_basis_dimensions_closed_form(convention):
    for g in range(6):
        for m in range(1, 5):
            for closed in (False, True):
                B = osp_nil_basis(g, m, closed, convention)
                assert len(B) == osp_nil_dimension(g, m, closed, convention)
                assert all(x.is_constrained() for x in B)
                assert len({x.serialize() for x in B}) == len(B)


def test_diagonal_invariance():
    for g in range(4):
        for m in range(1, 4):
            for x in osp_nil_basis(g, m, closed=True):
                assert check_diagonal_invariance(x)
    assert check_diagonal_invariance(OspElement("A", 2, 1, ((0, 0), (0, 0))))
    assert check_diagonal_invariance(OspElement("mu", 2, 1, (0, 0)))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_violating_elements_fail_invariance(m):
    for g in (1, 2):
        # a diagonal entry is forbidden exactly when A must be antisymmetric, otherwise break the symmetry
        bad = OspElement("A", g, m, ((1,),)) if g == 1 else OspElement("A", g, m, ((0, 1), (0, 0)))
        if g == 1 and bad.is_constrained():
            continue
        assert not bad.is_constrained()
        assert not check_diagonal_invariance(bad)
    for fam in ("lambda", "mu"):
        x = OspElement(fam, 1, m, (1,))
        assert check_diagonal_invariance(x)
    flipped = OspElement("mu", 1, m, (1,), convention="antisymmetric")
    # the other convention flips the unit coefficient of the mu family
    assert not check_diagonal_invariance(flipped)


def test_act_on_basis_examples():
    g, m = 1, 2
    x = OspElement("A", g, m, ((1,),))
    assert x.is_constrained()
    t = canonicalize(DecoratedGraph(g, m, 1, (), ((beta(1), alpha(1), alpha(1)),))).graph
    out = act_on_basis(x, t)
    target = canonicalize(DecoratedGraph(g, m, 1, (), ((alpha(1),) * 3,)))
    # one substitution; the sign comes from moving x past the odd vertex marker
    assert list(out) == [target.graph] and abs(out[target.graph]) == 1
    free_of_beta = canonicalize(DecoratedGraph(2, m, 1, (), ((alpha(1), alpha(2), alpha(2)),))).graph
    for y in osp_nil_basis(2, m):
        assert act_on_basis(y, free_of_beta) == {}
    with pytest.raises(ValueError):
        act_on_basis(OspElement("mu", 1, m, (1,)), t)


@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("connected", [True, False])
def test_action_anticommutes_with_differential(m, connected):
    # x is an odd derivation, so d x + x d = 0
    for x in osp_nil_basis(2, m):
        for W in (1, 2):
            for H in range(-W - 2, W + 3):
                for b in enumerate_basis(2, m, W, H, connected):
                    xb = act_on_basis(x, b)
                    lhs = LinearCombination()
                    for t, c in xb.items():
                        lhs.iadd(d_total(t, connected), c)
                    rhs = act_on_combination(x, d_total(b, connected))
                    assert not (lhs + rhs)
                    for t in xb:
                        assert degree(t) == degree(b) - 1 and t.imbalance() == b.imbalance() + 2


@pytest.mark.parametrize("m", [1, 2])
def test_dual_action_is_a_derivation_of_the_bracket(m):
    rng = random.Random(5)
    pool = [b for W in (1, 2) for H in range(-W - 2, W + 3) for b in enumerate_basis(2, m, W, H, True)]
    acts = [DualAction(x) for x in osp_nil_basis(2, m)]
    nontrivial = 0
    for _ in range(200):
        xa, y, z = rng.choice(acts), rng.choice(pool), rng.choice(pool)
        Y, Z = as_combination(y), as_combination(z)
        lhs = xa(lie_bracket(Y, Z))
        rhs = lie_bracket(xa(Y), Z) + lie_bracket(Y, xa(Z)).scaled((-1) ** (1 - degree(y)))
        assert not (lhs - rhs)
        nontrivial += bool(lhs)
    assert nontrivial > 10


def test_extended_complex():
    gc = assemble_complex("GC", 2, 1, Bidegree(0, -2))
    for conv, dim in (("antisymmetric", 3), ("cup", 1)):
        ex = extend_complex(gc, conv)
        assert ex.kind == "GCex"
        assert betti(ex).at(0, -2) == {-1: dim}
    assert betti(assemble_complex("GCex", 2, 1, Bidegree(0, -2))).at(0, -2) == {-1: 1}
    assert assemble_complex("GCex", 0, 1, Bidegree(0, -2)).total_dim() == 0
    for W in (1, 2):
        for H in range(-W - 2, W + 3):
            a = betti(assemble_complex("GCex", 2, 1, Bidegree(W, H))).at(W, H)
            assert a == betti(assemble_complex("GC", 2, 1, Bidegree(W, H))).at(W, H)


def test_torus_weight_and_serialization():
    x = osp_nil_basis(2, 2)[0]
    assert sum(x.torus_weight()) == -2
    assert x.serialize().startswith("osp:A:g=2;m=2;")
    with pytest.raises(ValueError):
        OspElement("lambda", 1, 1, (1,)).torus_weight()
