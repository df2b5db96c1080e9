import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fockherald.errors import CapExceeded, NotNilpotent, VarMismatch
from fockherald.jets import Jet, JetVars, derivative_at_zero, jet_add, jet_exp, jet_mul

EIGHT = JetVars(("f1", "f2", "g1", "g2", "h1", "h2", "s1", "s2"), (1, 1, 1, 1, 1, 1, 1, 1))
SMALL = JetVars(("x", "y", "z"), (2, 1, 3))


def var(v, name):
    return Jet.variable(v, name)


def test_truncated_square_vanishes():
    f1 = var(EIGHT, "f1")
    assert jet_mul(f1, f1).is_zero


def test_polynomial_product():
    one = Jet.constant(EIGHT)
    f1, f2 = var(EIGHT, "f1"), var(EIGHT, "f2")
    prod = jet_mul(one + f1, one + f2)
    assert prod == one + f1 + f2 + Jet.monomial(EIGHT, 1.0, f1=1, f2=1)


def test_distinct_variables_product():
    a = Jet.monomial(EIGHT, 1.0, h1=1, s2=1)
    b = Jet.monomial(EIGHT, 1.0, h2=1, s1=1)
    assert jet_mul(a, b) == Jet.monomial(EIGHT, 1.0, h1=1, h2=1, s1=1, s2=1)


def test_var_mismatch():
    with pytest.raises(VarMismatch):
        jet_add(Jet.constant(EIGHT), Jet.constant(SMALL))
    with pytest.raises(VarMismatch):
        jet_mul(Jet.constant(EIGHT), Jet.constant(JetVars(EIGHT.names, (2,) * 8)))


def test_exp_zero():
    assert jet_exp(Jet(EIGHT)) == Jet.constant(EIGHT)


def test_exp_nilpotent_square():
    v = JetVars(("f1", "f2"), (1, 1))
    e = jet_exp(Jet.monomial(v, 1.0, f1=1, f2=1))
    assert e == Jet.constant(v) + Jet.monomial(v, 1.0, f1=1, f2=1)


def test_exp_truncated_series():
    v = JetVars(("x",), (3,))
    e = jet_exp(var(v, "x"))
    assert e.coeffs == {(0,): 1.0, (1,): 1.0, (2,): 0.5, (3,): pytest.approx(1 / 6, abs=1e-16)}


def test_exp_requires_nilpotent():
    with pytest.raises(NotNilpotent):
        jet_exp(Jet.constant(SMALL, 0.5) + var(SMALL, "x"))


def test_derivative_reads_coefficient():
    a = Jet.constant(EIGHT) + Jet.monomial(EIGHT, 2.0, f1=1, f2=1)
    assert derivative_at_zero(a, (1, 1, 0, 0, 0, 0, 0, 0)) == 2.0


@pytest.mark.parametrize("n", [1, 2, 5])
def test_derivative_of_exponential(n):
    c = 1.7
    v = JetVars(("x",), (n,))
    assert derivative_at_zero(jet_exp(var(v, "x") * c), (n,)) == pytest.approx(c**n, rel=1e-14)


def test_derivative_cap_exceeded():
    with pytest.raises(CapExceeded):
        derivative_at_zero(Jet.constant(SMALL), (3, 0, 0))


def test_caps_drop_terms_on_construction():
    j = Jet(SMALL, {(3, 0, 0): 1.0, (1, 1, 1): 2.0})
    assert j.coeffs == {(1, 1, 1): 2.0}


# -- properties -------------------------------------------------------------------

INDICES = [(i, j, k) for i in range(3) for j in range(2) for k in range(4)]


@st.composite
def int_jets(draw):
    # integer coefficients keep every product and sum exact in floating point
    coeffs = draw(st.dictionaries(st.sampled_from(INDICES), st.integers(-5, 5), max_size=8))
    return Jet(SMALL, {k: float(v) for k, v in coeffs.items()})


@settings(max_examples=100, deadline=None)
@given(int_jets(), int_jets(), int_jets())
def test_ring_laws(a, b, c):
    assert jet_mul(a, b) == jet_mul(b, a)
    assert jet_mul(jet_mul(a, b), c) == jet_mul(a, jet_mul(b, c))
    assert jet_mul(a, jet_add(b, c)) == jet_add(jet_mul(a, b), jet_mul(a, c))
    assert jet_add(a, b) == jet_add(b, a)


@st.composite
def nilpotent_jets(draw):
    idx = [i for i in INDICES if i != (0, 0, 0)]
    coeffs = draw(
        st.dictionaries(st.sampled_from(idx), st.floats(-2, 2, allow_nan=False), max_size=6)
    )
    return Jet(SMALL, coeffs)


@settings(max_examples=60, deadline=None)
@given(nilpotent_jets(), nilpotent_jets())
def test_exp_of_sum_is_product(a, b):
    lhs = jet_exp(jet_add(a, b))
    rhs = jet_mul(jet_exp(a), jet_exp(b))
    for idx in set(lhs.coeffs) | set(rhs.coeffs):
        assert abs(lhs.coefficient(idx) - rhs.coefficient(idx)) < 1e-12


def test_exp_of_linear_form_multinomial(rng):
    v = JetVars(("x", "y", "z", "w"), (3, 2, 2, 1))
    for _ in range(20):
        c = rng.normal(size=4)
        lin = sum((var(v, n) * ci for n, ci in zip(v.names, c)), Jet(v))
        e = jet_exp(lin)
        orders = tuple(int(rng.integers(0, cap + 1)) for cap in v.caps)
        # d^o exp(c.x) at 0 = prod c_i^o_i
        expected = math.prod(ci**o for ci, o in zip(c, orders))
        assert derivative_at_zero(e, orders) == pytest.approx(expected, rel=1e-12, abs=1e-14)
        # and the stored coefficient carries the multinomial 1/prod(o_i!)
        coeff = e.coefficient(orders)
        assert coeff == pytest.approx(expected / math.prod(math.factorial(o) for o in orders), rel=1e-12, abs=1e-14)


def test_exp_terminates_early():
    # (f1 f2)^2 already vanishes: two multiplications suffice even with 8 variables
    e = jet_exp(Jet.monomial(EIGHT, 3.0, f1=1, f2=1))
    assert len(e.coeffs) == 2


def test_monomial_indexing():
    v = JetVars(("a", "b"), (2, 2))
    assert v.index(b=2) == (0, 2)
    assert Jet.monomial(v, 4.0, a=1, b=2).coefficient((1, 2)) == 4.0
    assert np.isclose(derivative_at_zero(Jet.monomial(v, 4.0, a=1, b=2), (1, 2)), 8.0)
