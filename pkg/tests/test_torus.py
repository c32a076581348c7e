import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import frame_product_exponent, ordered_prefactor_oracle
from qcluster.catalog import builtin_seed, projective_seed
from qcluster.qscalar import ONE, Q, QScalar, qpow
from qcluster.torus import (
    DivisionError,
    TorusElement,
    classical_limit,
    exchange_relation,
    exchange_variable,
    frame_monomial,
    mutated_expansion,
    ordered_prefactor,
    quasi_commute_exponent,
    torus_divide_exact,
    torus_mul,
)

FRAMES = {
    "sl2": builtin_seed("sl2").seed.L,
    "gr25": builtin_seed("gr25").seed.L,
    "n2minus": builtin_seed("n2minus").seed.L,
    "uqn12minus": builtin_seed("uqn12minus").seed.L,
    "projective(3)": projective_seed(3).L,
}
SL2 = FRAMES["sl2"]


def exponents(m, lo=-3, hi=3):
    return st.tuples(*[st.integers(lo, hi)] * m)


def coefficients():
    return st.dictionaries(st.integers(-4, 4), st.integers(-3, 3), min_size=1, max_size=3).map(
        QScalar
    ).filter(bool)


def elements(L, max_terms=3):
    return st.dictionaries(exponents(len(L), -2, 2), coefficients(), min_size=1, max_size=max_terms).map(
        lambda d: TorusElement(L, d)
    )


@pytest.mark.parametrize("frame", sorted(FRAMES))
@settings(max_examples=500)
@given(data=st.data())
def test_frame_law_against_letter_sorting(frame, data):
    L = FRAMES[frame]
    a = data.draw(exponents(len(L)))
    b = data.draw(exponents(len(L)))
    got = torus_mul(frame_monomial(a, L), frame_monomial(b, L))
    s = tuple(x + y for x, y in zip(a, b))
    assert got == frame_monomial(s, L, qpow(frame_product_exponent(a, b, L)))


@pytest.mark.parametrize("frame", sorted(FRAMES))
@given(data=st.data())
def test_ordered_prefactor_against_bar_invariance(frame, data):
    L = FRAMES[frame]
    a = data.draw(exponents(len(L)))
    assert ordered_prefactor(a, L) == ordered_prefactor_oracle(a, L)


@pytest.mark.parametrize("frame", ["sl2", "gr25", "uqn12minus"])
@settings(max_examples=500)
@given(data=st.data())
def test_exact_division_round_trip(frame, data):
    L = FRAMES[frame]
    den = data.draw(elements(L))
    quot = data.draw(elements(L))
    assert torus_divide_exact(torus_mul(den, quot), den) == quot


@given(elements(SL2), elements(SL2), elements(SL2))
def test_multiplication_is_associative_and_distributive(x, y, z):
    assert torus_mul(torus_mul(x, y), z) == torus_mul(x, torus_mul(y, z))
    assert torus_mul(x, y + z) == torus_mul(x, y) + torus_mul(x, z)


@given(elements(SL2), elements(SL2))
def test_classical_limit_is_multiplicative(x, y):
    lx, ly = classical_limit(x), classical_limit(y)
    prod = {}
    for a, c in lx.items():
        for b, d in ly.items():
            s = tuple(i + j for i, j in zip(a, b))
            prod[s] = prod.get(s, 0) + c * d
    assert {k: v for k, v in prod.items() if v} == classical_limit(torus_mul(x, y))


def test_sl2_ordered_monomial_renormalization():
    e1, e2 = frame_monomial((1, 0, 0), SL2), frame_monomial((0, 1, 0), SL2)
    assert torus_mul(e1, e2) == frame_monomial((1, 1, 0), SL2, qpow(1))
    # M(1,1,0) = q^(-1/2) X1 X2
    assert ordered_prefactor((1, 1, 0), SL2) == -1


def test_sl2_prefactors_of_exchange_terms():
    assert ordered_prefactor((-1, 0, 0), SL2) == 0
    relation = exchange_relation(builtin_seed("sl2").seed, 0)
    assert relation == [(ONE, (0, 0, 0)), (Q, (0, 1, 1))]


def test_sl2_division_example():
    num = frame_monomial((0, 0, 0), SL2) + frame_monomial((0, 1, 1), SL2, Q)
    got = torus_divide_exact(num, frame_monomial((1, 0, 0), SL2))
    # based form M(-1,0,0) + M(-1,1,1); the second monomial is q*a^-1*b*c
    want = TorusElement(SL2, {(-1, 0, 0): ONE, (-1, 1, 1): ONE})
    assert got == want
    assert mutated_expansion(builtin_seed("sl2").seed, 0) == want


def test_monomials_are_units():
    a, b = frame_monomial((1, 0, 0), SL2), frame_monomial((0, 1, 0), SL2)
    q = torus_divide_exact(a, b)
    assert torus_mul(b, q) == a


def test_non_monomial_divisor_of_a_unit_fails():
    one = frame_monomial((0, 0, 0), SL2)
    with pytest.raises(DivisionError):
        torus_divide_exact(one, one + frame_monomial((1, 0, 0), SL2))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        torus_divide_exact(frame_monomial((1, 0, 0), SL2), TorusElement(SL2))


def test_frame_mismatch_is_rejected():
    with pytest.raises(ValueError):
        frame_monomial((1, 0, 0), SL2) + frame_monomial((1, 0, 0, 0), FRAMES["projective(3)"])


def test_quasi_commutation_exponent_of_generators():
    a, b = frame_monomial((1, 0, 0), SL2), frame_monomial((0, 1, 0), SL2)
    assert quasi_commute_exponent(a, b) == 2
    assert quasi_commute_exponent(a, a + b) is None


def test_format_ordered_and_based():
    x = TorusElement(SL2, {(-1, 0, 0): ONE, (-1, 1, 1): ONE})
    assert x.format(["a", "b", "c"]) == "q*a^-1*b*c + a^-1"
    assert x.format(["a", "b", "c"], ordered=False) == "M(-1,1,1) + M(-1,0,0)"


@pytest.mark.parametrize("name", ["sl2", "gr25", "uqn12minus"])
def test_exchange_variable_in_own_frame(name):
    seed = builtin_seed(name).seed
    for k in range(seed.n):
        x = exchange_variable(seed, k)
        r = seed.mutable_rows[k]
        # the seed's own frame is its initial frame, so both constructions agree
        assert x == mutated_expansion(seed, k)
        assert all(a[r] == -1 for a in x.terms)
