from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from antibrackets.superalgebra import (
    AlgebraElement,
    EndoOp,
    Signature,
    derivation_endo,
    identity_endo,
    koszul_sign,
    multiplication_endo,
    odd_partial_endo,
    random_endo,
    shuffles,
    supercommutator,
)

SIG = Signature(even=2, odd=2, degree_bound=4)
NC = Signature(even=2, odd=1, degree_bound=3, commutative=False)


# -- koszul sign and shuffles ------------------------------------------------


def test_koszul_sign_even_swap_is_plus():
    assert koszul_sign((1, 0), [0, 0]) == 1
    assert koszul_sign((1, 0), [0, 1]) == 1


def test_koszul_sign_odd_swap_is_minus():
    assert koszul_sign((1, 0), [1, 1]) == -1


def test_koszul_sign_composes_over_transpositions():
    # moving an odd element past two odds gives (+1)*(-1)*(-1)
    assert koszul_sign((1, 2, 0), [1, 1, 1]) == 1
    assert koszul_sign((2, 0, 1), [1, 1, 1]) == 1
    assert koszul_sign((2, 1, 0), [1, 1, 1]) == -1


@given(st.integers(0, 4), st.integers(0, 4))
def test_shuffle_count(k, m):
    from math import comb

    perms = shuffles(k, m)
    assert len(perms) == comb(k + m, k)
    for perm in perms:
        assert sorted(perm) == list(range(k + m))
        assert list(perm[:k]) == sorted(perm[:k])
        assert list(perm[k:]) == sorted(perm[k:])


# -- signature / basis -------------------------------------------------------


def test_basis_is_degree_sorted_and_indexed():
    basis = SIG.basis()
    degrees = [SIG.degree(m) for m in basis]
    assert degrees == sorted(degrees)
    assert basis[0] == SIG.unit()
    for i, m in enumerate(basis):
        assert SIG.index_of(m) == i


def test_basis_dimensions_commutative():
    # p=2, q=2: dim of degree d part is sum_j C(j+1,1)*C(2, d-j)
    from math import comb

    basis = SIG.basis()
    for d in range(SIG.degree_bound + 1):
        count = sum(1 for m in basis if SIG.degree(m) == d)
        expected = sum(comb(j + 1, 1) * comb(2, d - j) for j in range(d + 1))
        assert count == expected


def test_noncommutative_basis_is_all_words():
    basis = NC.basis()
    assert len(basis) == sum(3**d for d in range(4))


def test_non_unital_basis_excludes_unit():
    sig = Signature(even=1, odd=0, degree_bound=3, unital=False)
    assert all(sig.degree(m) >= 1 for m in sig.basis())
    with pytest.raises(ValueError):
        sig.unit()


# -- monomial products -------------------------------------------------------


def monomials(sig, max_degree=2):
    return [m for m in sig.basis() if sig.degree(m) <= max_degree]


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_product_supercommutative(data):
    ms = monomials(SIG)
    a = data.draw(st.sampled_from(ms))
    b = data.draw(st.sampled_from(ms))
    sa, pa = SIG.mul_monomials(a, b)
    sb, pb = SIG.mul_monomials(b, a)
    swap = (-1) ** (SIG.parity(a) * SIG.parity(b))
    assert pa == pb
    assert sa == swap * sb


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_product_associative(data):
    ms = monomials(SIG, 1)
    a, b, c = (data.draw(st.sampled_from(ms)) for _ in range(3))
    ea = SIG.monomial_element(a)
    eb = SIG.monomial_element(b)
    ec = SIG.monomial_element(c)
    assert (ea * eb) * ec == ea * (eb * ec)


def test_odd_generator_squares_to_zero():
    th = SIG.odd_generator(0)
    assert SIG.mul_monomials(th, th) == (0, None)


def test_degree_bound_truncates_products():
    x = SIG.even_generator(0)
    high = SIG.monomial_element(x)
    power = high
    for _ in range(SIG.degree_bound - 1):
        power = power * high
    assert not power.is_zero()
    assert (power * high).is_zero()


def test_noncommutative_product_concatenates():
    a, b = NC.even_generator(0), NC.even_generator(1)
    assert NC.mul_monomials(a, b) == (1, a + b)
    assert NC.mul_monomials(b, a) == (1, b + a)
    assert NC.mul_monomials(a, b)[1] != NC.mul_monomials(b, a)[1]


def test_monomial_str():
    exps_mono = ((2, 0), (1,))
    assert SIG.monomial_str(exps_mono) == "x1^2*th2"
    assert SIG.monomial_str(SIG.unit()) == "1"
    assert NC.monomial_str((0, 2, 1)) == "x1*th1*x2"


# -- elements ----------------------------------------------------------------


def test_element_parity_detection():
    x = SIG.monomial_element(SIG.even_generator(0))
    th = SIG.monomial_element(SIG.odd_generator(0))
    assert x.parity() == 0
    assert th.parity() == 1
    assert (x + th).parity() is None
    assert SIG.element().parity() == 0


def test_element_arithmetic_drops_zeros():
    x = SIG.monomial_element(SIG.even_generator(0))
    assert (x - x).is_zero()
    assert (x.scale(0)).is_zero()


# -- operators ---------------------------------------------------------------


def test_random_endo_is_deterministic_and_parity_structured():
    f1 = random_endo(SIG, 7, parity="odd")
    f2 = random_endo(SIG, 7, parity="odd")
    assert f1 == f2
    for m, img in f1.images.items():
        want = (SIG.parity(m) + 1) % 2
        assert all(SIG.parity(t) == want for t in img.terms)


def test_endo_parity_validation():
    x = SIG.even_generator(0)
    th = SIG.odd_generator(0)
    with pytest.raises(ValueError):
        EndoOp(SIG, {x: SIG.monomial_element(th)}, parity=0)


def test_derivation_satisfies_leibniz():
    d = derivation_endo(SIG)
    for a, b in itertools.product(monomials(SIG, 2), repeat=2):
        ea, eb = SIG.monomial_element(a), SIG.monomial_element(b)
        lhs = d(ea * eb)
        rhs = d(ea) * eb + ea * d(eb)
        assert lhs == rhs


def test_odd_partial_is_square_zero_odd_derivation():
    d = odd_partial_endo(SIG)
    assert d.parity == 1
    assert d.compose(d).is_zero()
    th1 = SIG.monomial_element(SIG.odd_generator(0))
    assert d(th1) == SIG.one()
    # graded Leibniz: d(ab) = d(a) b + (-1)^|a| a d(b)
    for a, b in itertools.product(monomials(SIG, 2), repeat=2):
        ea, eb = SIG.monomial_element(a), SIG.monomial_element(b)
        sign = (-1) ** SIG.parity(a)
        assert d(ea * eb) == d(ea) * eb + (ea * d(eb)).scale(sign)


def test_supercommutator_identity_central():
    ident = identity_endo(SIG)
    f = random_endo(SIG, 3, parity="odd")
    assert supercommutator(ident, f).is_zero()


def test_multiplication_endo_left_action():
    th = SIG.monomial_element(SIG.odd_generator(0))
    mult = multiplication_endo(SIG, th)
    assert mult.parity == 1
    x = SIG.monomial_element(SIG.even_generator(0))
    assert mult(x) == th * x
    assert mult.compose(mult).is_zero()
