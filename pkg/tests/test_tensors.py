import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dqhopf.errors import ArityMismatch, CostExceeded
from dqhopf.examples import sweedler_h4
from dqhopf.scalars import FieldSpec
from dqhopf.tensors import (ELEMENT, FUNCTIONAL, LinMap, SparseTensor, apply_leg, contract,
                            iterated_coproduct, permute_legs, set_term_ceiling, tensor_product,
                            term_ceiling)

Q = FieldSpec.rationals()


def tensors(dims, variance):
    keys = st.tuples(*(st.integers(0, d - 1) for d in dims))
    return st.dictionaries(keys, st.integers(-4, 4), max_size=8).map(
        lambda entries: SparseTensor(Q, dims, entries, variance))


def test_zero_entries_are_pruned():
    t = SparseTensor(Q, (2, 2), {(0, 0): 0, (1, 0): 3})
    assert t.items() == (((1, 0), Q(3)),)
    assert t[0, 0] == 0
    assert len(t) == 1


def test_index_validation():
    with pytest.raises(IndexError):
        SparseTensor(Q, (2,), {(2,): 1})
    with pytest.raises(ArityMismatch):
        SparseTensor(Q, (2, 2), {(0,): 1})


def test_entries_are_sorted_and_summed():
    t = SparseTensor(Q, (3,), [((2,), 1), ((0,), 1), ((2,), 1)])
    assert [k for k, _ in t.items()] == [(0,), (2,)]
    assert t[2] == 2


@given(f=tensors((3, 2), FUNCTIONAL), x=tensors((3, 2), ELEMENT), y=tensors((3, 2), ELEMENT),
       a=st.integers(-3, 3))
@settings(max_examples=80)
def test_contract_is_bilinear(f, x, y, a):
    assert contract(f, x + y.scale(a)) == contract(f, x) + a * contract(f, y)
    assert contract(f.scale(a), x) == a * contract(f, x)


def test_contract_rejects_mixed_shapes():
    f = SparseTensor(Q, (2,), {(0,): 1}, FUNCTIONAL)
    with pytest.raises(ArityMismatch):
        contract(f, SparseTensor(Q, (3,), {(0,): 1}))
    with pytest.raises(ArityMismatch):
        contract(f, f)


@given(a=tensors((2,), ELEMENT), b=tensors((3,), ELEMENT))
def test_tensor_product_entries(a, b):
    t = tensor_product(a, b)
    for i in range(2):
        for j in range(3):
            assert t[i, j] == a[i] * b[j]


@given(t=tensors((2, 3, 4), ELEMENT))
def test_permute_legs_roundtrip(t):
    p = permute_legs(t, (2, 0, 1))
    assert p.dims == (4, 2, 3)
    assert permute_legs(p, (1, 2, 0)) == t


def test_apply_leg_contracts_with_functional():
    t = SparseTensor(Q, (2, 2), {(0, 0): 1, (1, 1): 2, (0, 1): 5})
    eps = LinMap(1, 0, SparseTensor(Q, (2,), {(0,): 1, (1,): 1}))
    assert apply_leg(t, 1, eps) == SparseTensor(Q, (2,), {(0,): 6, (1,): 2})


def test_iterated_coproduct_of_x_in_h4():
    H = sweedler_h4(Q)
    one, g, x = H.index("1"), H.index("g"), H.index("x")
    expected = SparseTensor(Q, (4, 4, 4), {(x, one, one): 1, (g, x, one): 1, (g, g, x): 1})
    assert iterated_coproduct(H, 2, x) == expected
    # applying Δ on the first leg instead gives the same (coassociativity)
    first = apply_leg(iterated_coproduct(H, 1, x), 0, H.comult)
    assert first == expected
    assert iterated_coproduct(H, 0, x) == SparseTensor(Q, (4,), {(x,): 1})


def test_iterated_coproduct_term_counts():
    H = sweedler_h4(Q)
    # Δ^(m)(x) has m + 1 terms: x in exactly one position, g to its left, 1 to its right
    for m in range(6):
        assert len(iterated_coproduct(H, m, H.index("x"))) == m + 1


def test_cost_ceiling():
    H = sweedler_h4(Q)
    old = term_ceiling()
    try:
        set_term_ceiling(3)
        t = SparseTensor(Q, (4, 4), {(2, 0): 1, (2, 2): 1, (3, 3): 1, (1, 2): 1})
        with pytest.raises(CostExceeded):
            apply_leg(t, 0, H.comult)
    finally:
        set_term_ceiling(old)
    with pytest.raises(ValueError):
        set_term_ceiling(0)


def test_linmap_matrix_roundtrip():
    H = sweedler_h4(Q)
    S = H.antipode
    assert LinMap.from_matrix(S.to_matrix()) == S
