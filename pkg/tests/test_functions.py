import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bisemikit.functions import (
    Bifunction,
    GridMismatch,
    SampledFunction,
    discrete_inner,
    l11_membership,
    quadrature_l1,
    quadrature_l2,
    transform_BL_pL,
)
from bisemikit.scalars import close
from bisemikit.tensor import Mode, inner_product

cplx = st.builds(complex, st.floats(-5, 5), st.floats(-5, 5))
weights = st.floats(0.01, 2.0)


@st.composite
def grid_pair(draw, max_m=64):
    m = draw(st.integers(1, max_m))
    w = tuple(draw(st.lists(weights, min_size=m, max_size=m)))
    a = tuple(draw(st.lists(cplx, min_size=m, max_size=m)))
    b = tuple(draw(st.lists(cplx, min_size=m, max_size=m)))
    return SampledFunction(a, w), SampledFunction(b, w)


@pytest.mark.parametrize(
    "samples, w, expected",
    [((1,) * 10, None, 1.0), ((0, 0, 0), None, 0.0), ((1, -2, 3), (1, 1, 1), 6.0)],
)
def test_l1_examples(samples, w, expected):
    assert math.isclose(quadrature_l1(SampledFunction(samples, w)), expected, abs_tol=1e-15)


def test_l11_examples():
    one = SampledFunction((1, 1, 1, 1))
    assert math.isclose(l11_membership(Bifunction(one, one)).value, 1.0)
    zero = SampledFunction((0, 0, 0, 0))
    assert l11_membership(Bifunction(zero, one)).value == 0
    r = SampledFunction((2, -2), (0.5, 0.5))
    l = SampledFunction((3, 3j), (0.5, 0.5))
    res = l11_membership(Bifunction(r, l), bound=10)
    assert res.value == 6.0 and res.within_bound
    assert not l11_membership(Bifunction(r, l), bound=6).within_bound


def test_transform_examples():
    one = SampledFunction((1, 1))
    assert math.isclose(transform_BL_pL(Bifunction(one, one)).l2_value, 1.0)
    z = SampledFunction((0, 0))
    res = transform_BL_pL(Bifunction(one, z))
    assert res.l2_value == 0 and res.squared.phi_R.samples == (0, 0)
    w = (0.5, 0.5)
    res = transform_BL_pL(Bifunction(SampledFunction((9, 9), w), SampledFunction((1 + 1j, 2), w)))
    assert res.l2_value == 3.0
    assert res.squared.phi_R.samples == (1 - 1j, 2)


def test_validation():
    with pytest.raises(ValueError):
        SampledFunction((1, 2), (1,))
    with pytest.raises(ValueError):
        SampledFunction((1,), (0,))
    with pytest.raises(ValueError):
        SampledFunction(())
    with pytest.raises(GridMismatch):
        Bifunction(SampledFunction((1,), (1,)), SampledFunction((1,), (2,)))
    with pytest.raises(GridMismatch):
        Bifunction(SampledFunction((1,), domain_label="a"), SampledFunction((1,), domain_label="b"))


def brute_l11(bf):
    total = 0.0
    for wj, r in zip(bf.phi_R.weights, bf.phi_R.samples):
        for wk, l in zip(bf.phi_L.weights, bf.phi_L.samples):
            total += wj * wk * abs(r * l)
    return total


@given(grid_pair())
def test_l11_factorization(pair):
    bf = Bifunction(*pair)
    assert close(l11_membership(bf).value, brute_l11(bf), 1e-12)


@given(grid_pair())
def test_transform_invariants(pair):
    bf = Bifunction(*pair)
    res = transform_BL_pL(bf)
    for r, l in zip(res.squared.phi_R.samples, res.squared.phi_L.samples):
        assert r == l.conjugate()
        assert (r * l).imag == 0
    scaled = tuple(math.sqrt(w) * s for w, s in zip(bf.phi_L.weights, bf.phi_L.samples))
    diag = inner_product(tuple(c.conjugate() for c in scaled), scaled, Mode.DIAGONAL)
    assert close(res.l2_value, diag.real, 1e-12) and diag.imag == 0
    assert res.l2_value == quadrature_l2(bf.phi_L)


@given(grid_pair())
def test_cauchy_schwarz(pair):
    phi, psi = pair
    lhs = abs(discrete_inner(phi, psi)) ** 2
    rhs = quadrature_l2(phi) * quadrature_l2(psi)
    assert lhs <= rhs * (1 + 1e-12)


def test_discrete_inner_grid_check():
    with pytest.raises(GridMismatch):
        discrete_inner(SampledFunction((1, 2)), SampledFunction((1, 2, 3)))
