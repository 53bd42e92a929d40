"""Blowup trees, branch data, semigroups, and Noether bookkeeping."""

import pytest

from charplane.errors import (ZeroInput, NotReduced, InfiniteIntersection,
                              NotSupported)
from charplane.field import field_make
from charplane.poly import BivarPoly, parse_poly
from charplane.intersect import i0
from charplane.resolve import resolve, resolve_joint

Q = field_make(0)
F2 = field_make(2)
F3 = field_make(3)
F5 = field_make(5)
F7 = field_make(7)
F11 = field_make(11)


def test_smooth_branch():
    res = resolve(parse_poly("y", Q))
    assert len(res.nodes) == 1 and not res.nodes[0].children
    assert res.branch_count() == 1
    b = res.branches[0]
    assert b.mult_seq == [1]
    assert b.semigroup_gens == [1]
    assert b.conductor == 0 and b.delta == 0 and b.n_star == 1
    assert res.delta() == 0
    # smooth but curved
    res = resolve(parse_poly("y+x^2", Q))
    assert res.branches[0].mult_seq == [1]


def test_cusp_tree():
    for ctx in (Q, F7):
        res = resolve(parse_poly("y^2-x^3", ctx))
        assert res.branch_count() == 1
        b = res.branches[0]
        assert b.path_ids == [0, 1, 2]
        assert b.path_mults == [2, 1, 1]
        assert b.mult_seq == [2, 1, 1]
        assert b.semigroup_gens == [2, 3]
        assert b.conductor == 2 and b.delta == 1
        assert b.n_star == 2
        assert res.delta() == 1
        # the last point is a satellite: proximate to both earlier points
        assert res.nodes[2].prox == frozenset({0, 1})


def test_two_lines():
    res = resolve(parse_poly("x*y", F5))
    assert res.branch_count() == 2
    assert all(b.mult_seq == [1] for b in res.branches)
    assert res.delta() == 1
    b1, b2 = res.branches
    assert res.branch_pair_i0(b1, b2) == 1


def test_main_semigroup_example():
    # (y^2+x^3)^2 + x^5*y: one branch with semigroup <4, 6, 13>
    for ctx in (Q, F2):
        res = resolve(parse_poly("(y^2+x^3)^2+x^5*y", ctx))
        assert res.branch_count() == 1
        b = res.branches[0]
        assert b.path_mults == [4, 2, 2, 1, 1]
        assert b.mult_seq == [4, 2, 2, 1, 1]
        assert b.semigroup_gens == [4, 6, 13]
        assert b.e_seq == [4, 2, 1]
        assert b.n_seq == [2, 2]
        assert b.n_star == 2
        assert b.conductor == 16
        assert b.delta == 8
        assert res.delta() == 8
        # satellite structure: the last point is proximate to two points
        leaf = res.nodes[b.leaf_id]
        assert len(leaf.prox) == 2


def test_quasihomogeneous_branch():
    res = resolve(parse_poly("y^4+x^7", F11))
    b = res.branches[0]
    assert b.semigroup_gens == [4, 7]
    assert b.mult_seq == [4, 3, 1, 1, 1]
    assert b.conductor == 18 and b.delta == 9
    assert b.n_star == 4


def test_two_cusps():
    f = parse_poly("(y^2-x^3)*(y^2+x^3)", F7)
    res = resolve(f)
    assert res.branch_count() == 2
    assert all(b.mult_seq == [2, 1, 1] for b in res.branches)
    assert all(b.delta == 1 for b in res.branches)
    assert res.delta() == 8
    b1, b2 = res.branches
    assert res.branch_pair_i0(b1, b2) == 6
    # delta of a product: sum of branch deltas plus pairwise intersections
    assert res.delta() == b1.delta + b2.delta + res.branch_pair_i0(b1, b2)


def test_joint_resolution_matches_i0():
    cases = [("y^2-x^3", "y", Q, 3), ("y^2-x^3", "x", Q, 2),
             ("y^2-x^3", "y^2+x^3", F7, 6), ("x*y", "x+y", F5, 2),
             ("y^3-x^5", "y", F7, 5)]
    for a, b, ctx, want in cases:
        fa, fb = parse_poly(a, ctx), parse_poly(b, ctx)
        res = resolve_joint([fa, fb])
        assert res.pairwise_i0(0, 1) == want
        assert int(i0(fa, fb)) == want
        # branch refinement: input totals decompose over branches
        total = sum(res.branch_i0(br, 1) for br in res.branches_of(0))
        assert total == want


def test_tangent_directions_in_extension():
    # x^2 + y^2 over F_3 splits only over F_9
    res = resolve(parse_poly("x^2+y^2", F3))
    assert res.branch_count() == 2
    assert res.delta() == 1
    leaf_ctx = res.nodes[res.branches[0].leaf_id].ctx
    assert leaf_ctx.p == 3 and leaf_ctx.k == 2
    # over Q the same input is out of scope
    with pytest.raises(NotSupported):
        resolve(parse_poly("x^2+y^2", Q))


def test_input_validation():
    with pytest.raises(ZeroInput):
        resolve(BivarPoly.zero(Q))
    with pytest.raises(ZeroInput):
        resolve(parse_poly("1+x", Q))
    with pytest.raises(NotReduced):
        resolve(parse_poly("(y^2-x^3)^2", Q))
    with pytest.raises(InfiniteIntersection):
        resolve_joint([parse_poly("x*y", Q), parse_poly("x", Q)])
    with pytest.raises(ValueError):
        resolve_joint([parse_poly("x", Q), parse_poly("y", F5)])


def test_determinism():
    f = parse_poly("(y^2+x^3)^2+x^5*y", F5)
    r1, r2 = resolve(f), resolve(f)
    assert len(r1.nodes) == len(r2.nodes)
    for a, b in zip(r1.nodes, r2.nodes):
        assert a.id == b.id and a.mults == b.mults and a.axes == b.axes
    assert [b.semigroup_gens for b in r1.branches] == \
        [b.semigroup_gens for b in r2.branches]


def test_delta_decomposition_battery():
    # delta = sum of branch deltas + sum of pairwise branch intersections
    battery = [("y^2-x^3", F7), ("x*y", F7), ("(y^2-x^3)*(y^2+x^3)", F7),
               ("y^3-x^5", F7), ("(x+y)*(x-y)*x", F7),
               ("(y-x^2)*(y+x^2)", F5), ("y^4+x^7", F11),
               ("(y^2+x^3)^2+x^5*y", F3)]
    for text, ctx in battery:
        res = resolve(parse_poly(text, ctx))
        total = sum(b.delta for b in res.branches)
        for t1 in range(len(res.branches)):
            for t2 in range(t1 + 1, len(res.branches)):
                total += res.branch_pair_i0(res.branches[t1],
                                            res.branches[t2])
        assert res.delta() == total, text
