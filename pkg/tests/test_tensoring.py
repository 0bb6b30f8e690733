"""Tensor calculus: unit laws, frozen products, functoriality.

The frozen expectations were computed by hand on the pair bases (walk by
walk); they pin down both the dimensions and the anchor indices.
"""

import pytest

from nakayama.bimodules import (
    StringLabel,
    construct,
    hom_basis,
    identity_map,
    is_isomorphic,
    regular_bimodule,
    zero_bimodule,
)
from nakayama.tensoring import tensor, tensor_map


def lab(fam, i, j, k=None):
    return StringLabel(fam, i, j, k)


# -- unit laws ---------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_algebra_is_the_tensor_unit(n):
    reg = regular_bimodule(n)
    probes = [lab("P", 1, 1), lab("L", 1, n), lab("S", 1, 1, 1),
              lab("M", n, 1, 1)]
    for label in probes:
        x = construct(label, n)
        assert is_isomorphic(tensor(reg, x), x), f"left unit on {label}"
        assert is_isomorphic(tensor(x, reg), x), f"right unit on {label}"


def test_unit_squared():
    for n in (1, 2, 3):
        reg = regular_bimodule(n)
        assert is_isomorphic(tensor(reg, reg), reg)


def test_tensor_with_zero():
    n = 2
    x = construct(lab("S", 1, 1, 1), n)
    assert tensor(x, zero_bimodule(n)).is_zero()
    assert tensor(zero_bimodule(n), x).is_zero()


# -- frozen products ---------------------------------------------------------

def test_w_string_is_idempotent_without_wraparound():
    # at n = 3 the product of W^(1) at 1|1 with itself has no room to wrap,
    # so it comes back exactly as W^(1) at 1|1
    n = 3
    w = construct(lab("W", 1, 1, 1), n)
    t = tensor(w, w)
    assert t.total_dim == 3
    assert is_isomorphic(t, w)


def test_half_strings_compose_to_the_square():
    # S^(0) at 1|1 followed by N^(0) at 1|1 glue into the square at 1|1
    n = 2
    s = construct(lab("S", 1, 1, 0), n)
    nn = construct(lab("N", 1, 1, 0), n)
    t = tensor(s, nn)
    assert t == construct(lab("P", 1, 1), n)


def test_m0_squares_to_the_projective():
    n = 3
    m0 = construct(lab("M", 1, 1, 0), n)
    t = tensor(m0, m0)
    assert t == construct(lab("P", 1, 1), n)


def test_squares_absorb_or_annihilate():
    # P at i|j times P at r|s survives only when j lands on r or r+1
    n = 3
    p11 = construct(lab("P", 1, 1), n)
    p21 = construct(lab("P", 2, 1), n)
    assert is_isomorphic(tensor(p11, p11), p11)
    assert tensor(p11, p21).is_zero()
    # j = 2 hits r + 1 for r = 1
    p12 = construct(lab("P", 1, 2), n)
    assert is_isomorphic(tensor(p12, p11), p11)


def test_mismatched_anchors_need_not_vanish_but_dims_drop():
    # a wraparound case: at n = 1 every anchor matches every other
    n = 1
    w = construct(lab("W", 1, 1, 1), n)
    m = construct(lab("M", 1, 1, 1), n)
    t = tensor(w, m)
    assert t.total_dim == 8  # 15 pairs, 7 independent balancing rows
    t.check_relations()


# -- associativity -----------------------------------------------------------

@pytest.mark.parametrize("labels", [
    (lab("S", 1, 1, 0), lab("N", 1, 1, 0), lab("P", 1, 1)),
    (lab("W", 1, 1, 1), lab("W", 1, 1, 1), lab("S", 1, 2, 1)),
    (lab("M", 1, 2, 0), lab("M", 2, 1, 0), lab("M", 1, 1, 0)),
])
def test_associativity_samples(labels):
    n = 2
    x, y, z = (construct(l, n) for l in labels)
    left = tensor(tensor(x, y), z)
    right = tensor(x, tensor(y, z))
    assert left.dim_vector() == right.dim_vector()
    assert is_isomorphic(left, right)


# -- induced maps ------------------------------------------------------------

def test_tensor_map_of_identity():
    n = 2
    x = construct(lab("S", 1, 1, 1), n)
    y = construct(lab("N", 1, 1, 1), n)
    t = tensor(x, y)
    g = tensor_map(x, identity_map(y))
    assert g.source == t
    assert g.target == t
    for v, d in t.dims.items():
        assert g.component(*v).is_identity()


def test_tensor_map_intertwines_and_matches_tensor():
    n = 3
    x = construct(lab("W", 1, 1, 1), n)
    m = construct(lab("M", 1, 1, 1), n)
    nn = construct(lab("N", 1, 1, 1), n)
    fs = hom_basis(m, nn)
    assert fs
    for f in fs:
        g = tensor_map(x, f)
        assert g.source == tensor(x, m)
        assert g.target == tensor(x, nn)
        g.check()


def test_tensor_map_respects_composition():
    n = 2
    x = construct(lab("S", 1, 2, 1), n)
    m = construct(lab("M", 2, 1, 1), n)
    nn = construct(lab("N", 2, 1, 1), n)
    fs = hom_basis(m, nn)
    gs = hom_basis(nn, nn)
    f, g = fs[0], gs[0]
    lhs = tensor_map(x, g.compose(f))
    rhs = tensor_map(x, g).compose(tensor_map(x, f))
    for v in lhs.source.dims:
        assert lhs.component(*v) == rhs.component(*v)
