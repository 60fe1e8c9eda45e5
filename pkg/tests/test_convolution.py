from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dqhopf.convolution import (ConvContext, convolution_inverse, convolve, convolve_maps,
                                dual_convolve, maps_from_images, unit_map)
from dqhopf.errors import ArityMismatch, NotInvertible
from dqhopf.examples import sweedler_h4
from dqhopf.scalars import FieldSpec
from dqhopf.tensors import FUNCTIONAL, SparseTensor

Q = FieldSpec.rationals()
H4 = sweedler_h4(Q)


def functionals(k, n=4):
    keys = st.tuples(*(st.integers(0, n - 1) for _ in range(k)))
    return st.dictionaries(keys, st.integers(-3, 3), max_size=10).map(
        lambda e: SparseTensor(Q, (n,) * k, e, FUNCTIONAL))


@pytest.mark.parametrize("k", [1, 2])
@given(data=st.data())
@settings(max_examples=40, deadline=None)
def test_convolution_is_associative_with_unit(k, data):
    ctx = ConvContext(H4, k)
    f, g, h = (data.draw(functionals(k)) for _ in range(3))
    assert convolve(convolve(f, g, ctx), h, ctx) == convolve(f, convolve(g, h, ctx), ctx)
    u = ctx.unit()
    assert convolve(u, f, ctx) == f
    assert convolve(f, u, ctx) == f


@given(f=functionals(1), g=functionals(1))
def test_dual_convolve_matches_sparse(f, g):
    ctx = ConvContext(H4, 1)
    assert dual_convolve(H4, f.dense(), g.dense()) == convolve(f, g, ctx).dense()


def test_h4_dual_is_not_commutative():
    ctx = ConvContext(H4, 1)
    dg = SparseTensor(Q, (4,), {(H4.index("g"),): 1}, FUNCTIONAL)
    dx = SparseTensor(Q, (4,), {(H4.index("x"),): 1}, FUNCTIONAL)
    assert convolve(dg, dx, ctx) != convolve(dx, dg, ctx)


@pytest.mark.parametrize("name", ["kw2", "kw3", "kz3"])
def test_phi_inverse_is_pointwise_on_group_algebras(instances, name):
    # on a group algebra the coproduct is diagonal, so convolution is pointwise
    H = instances[name]
    inv = convolution_inverse(H.phi, ConvContext(H, 3))
    for t in product(range(H.n), repeat=3):
        assert inv[t] == H.phi[t].inverse()
    assert H.phi_inv == inv


@pytest.mark.parametrize("side", ["left", "right"])
def test_inverse_is_two_sided(side):
    ctx = ConvContext(H4, 1)
    f = SparseTensor(Q, (4,), {(0,): 2, (1,): 3, (2,): 5, (3,): -1}, FUNCTIONAL)
    g = convolution_inverse(f, ctx, side)
    assert convolve(f, g, ctx) == ctx.unit() == convolve(g, f, ctx)


def test_not_invertible():
    ctx = ConvContext(H4, 1)
    # vanishes at the grouplike 1, so f * g can never reach ε(1) = 1
    f = SparseTensor(Q, (4,), {(1,): 1, (2,): 1}, FUNCTIONAL)
    with pytest.raises(NotInvertible):
        convolution_inverse(f, ctx)
    with pytest.raises(NotInvertible):
        convolution_inverse(SparseTensor(Q, (4, 4), {}, FUNCTIONAL), ConvContext(H4, 2))


def test_shape_errors():
    ctx = ConvContext(H4, 2)
    with pytest.raises(ArityMismatch):
        convolve(SparseTensor(Q, (4,), {}, FUNCTIONAL), ctx.unit(), ctx)
    with pytest.raises(ValueError):
        ConvContext(H4, 0)


def test_convolve_maps_unit():
    H = H4
    images = {(i,): tuple(Q(i + j) for j in range(4)) for i in range(4)}
    F = maps_from_images(H, 1, images)
    u = unit_map(H, 1)
    assert convolve_maps(u, F, H) == F
    assert convolve_maps(F, u, H) == F
