"""Property-based checks of the algebraic laws on the module layer."""

import numpy as np
from hypothesis import given, settings, strategies as st

from quiverhom.znmod import (
    FinMod,
    ModHom,
    Modulus,
    canonical_chain,
    hom_entry_orders,
    hom_entry_scales,
    identity_hom,
    matlis_dual_hom,
)

moduli = st.sampled_from([2, 3, 4, 6, 8, 9, 12])


@st.composite
def finmod(draw, n):
    modulus = Modulus(n)
    divisors = [d for d in modulus.divisors if d > 1]
    orders = draw(st.lists(st.sampled_from(divisors), min_size=0, max_size=3))
    return FinMod(modulus, canonical_chain(orders, n))


@st.composite
def hom_between(draw, dom, cod):
    orders = hom_entry_orders(dom.factors, cod.factors)
    scales = hom_entry_scales(dom.factors, cod.factors)
    mat = np.zeros((cod.rank, dom.rank), dtype=np.int64)
    for j in range(cod.rank):
        for i in range(dom.rank):
            mat[j, i] = scales[j, i] * draw(st.integers(0, int(orders[j, i]) - 1))
    return ModHom(dom, cod, mat)


@st.composite
def composable_triple(draw):
    n = draw(moduli)
    a = draw(finmod(n))
    b = draw(finmod(n))
    c = draw(finmod(n))
    d = draw(finmod(n))
    f = draw(hom_between(a, b))
    g = draw(hom_between(b, c))
    h = draw(hom_between(c, d))
    return f, g, h


@given(composable_triple())
@settings(max_examples=80, deadline=None)
def test_composition_associative(triple):
    f, g, h = triple
    assert h.compose(g).compose(f) == h.compose(g.compose(f))


@given(composable_triple())
@settings(max_examples=80, deadline=None)
def test_identity_units(triple):
    f, _, _ = triple
    assert f.compose(identity_hom(f.domain)) == f
    assert identity_hom(f.codomain).compose(f) == f


@given(composable_triple())
@settings(max_examples=80, deadline=None)
def test_duality_is_contravariant_involution(triple):
    f, g, _ = triple
    assert matlis_dual_hom(g.compose(f)) == matlis_dual_hom(f).compose(matlis_dual_hom(g))
    dd = matlis_dual_hom(matlis_dual_hom(f))
    assert np.array_equal(dd.matrix, f.matrix)


@given(composable_triple())
@settings(max_examples=60, deadline=None)
def test_hom_application_is_linear(triple):
    f, _, _ = triple
    if f.domain.is_zero:
        return
    x = np.array([d - 1 for d in f.domain.factors], dtype=np.int64)
    y = np.array([1 % d for d in f.domain.factors], dtype=np.int64)
    lhs = f(f.domain.reduce(x + y))
    rhs = f.codomain.reduce(f(x) + f(y))
    assert np.array_equal(lhs, rhs)
