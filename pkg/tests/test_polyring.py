import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gaugetorsion import (
    MultiPoly,
    Prime,
    UniPoly,
    binom_mod,
    diagonal_eval,
    elementary_sym,
    is_symmetric,
    power_sum,
)
from tests.conftest import PRIMES_235, random_multipoly


def st_poly(n: int, p: Prime, max_exp: int = 3, max_terms: int = 4):
    mono = st.tuples(*[st.integers(min_value=0, max_value=max_exp)] * n)
    coeff = st.integers(min_value=1, max_value=p.value - 1)
    return st.dictionaries(mono, coeff, max_size=max_terms).map(
        lambda terms: MultiPoly(n, p, terms)
    )


# -- canonical form and basic arithmetic ---------------------------------------


def test_zero_coefficients_are_dropped():
    p = Prime(3)
    f = MultiPoly(2, p, {(1, 0): 3, (0, 1): 4})
    assert f.terms == {(0, 1): 1}


def test_wrong_monomial_length_rejected():
    with pytest.raises(ValueError):
        MultiPoly(2, Prime(3), {(1, 0, 0): 1})


def test_ring_mismatch_rejected():
    f = MultiPoly.one(2, Prime(3))
    g = MultiPoly.one(2, Prime(5))
    with pytest.raises(ValueError):
        f + g
    with pytest.raises(ValueError):
        f * MultiPoly.one(3, Prime(3))


def test_additive_examples():
    p = Prime(5)
    f = random_multipoly(random.Random(7), 3, p)
    assert f + MultiPoly.zero(3, p) == f
    assert (f + f.scale(p.value - 1)).is_zero()
    t1 = MultiPoly.variable(2, p, 1)
    t2 = MultiPoly.variable(2, p, 2)
    assert (t1 + t2).terms == {(1, 0): 1, (0, 1): 1}


def test_multiplicative_examples():
    p2 = Prime(2)
    t1 = MultiPoly.variable(2, p2, 1)
    t2 = MultiPoly.variable(2, p2, 2)
    # freshman's dream in characteristic 2
    assert (t1 + t2) ** 2 == t1**2 + t2**2
    assert (t1 * t2).terms == {(1, 1): 1}
    f = random_multipoly(random.Random(11), 2, p2)
    assert f * MultiPoly.one(2, p2) == f


@pytest.mark.parametrize("p", PRIMES_235)
def test_ring_axioms_bulk(p):
    rng = random.Random(p.value)
    for _ in range(350):
        n = rng.randint(1, 4)
        f = random_multipoly(rng, n, p)
        g = random_multipoly(rng, n, p)
        h = random_multipoly(rng, n, p)
        assert f + g == g + f
        assert f * g == g * f
        assert (f + g) + h == f + (g + h)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h


@given(data=st.data())
def test_ring_axioms_hypothesis(data):
    p = data.draw(st.sampled_from(PRIMES_235))
    n = data.draw(st.integers(min_value=1, max_value=3))
    f = data.draw(st_poly(n, p))
    g = data.draw(st_poly(n, p))
    h = data.draw(st_poly(n, p))
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h


# -- symmetric generators -------------------------------------------------------


def test_elementary_sym_examples():
    p = Prime(7)
    e2 = elementary_sym(3, 2, p)
    assert e2.terms == {(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1}
    assert elementary_sym(2, 0, p) == MultiPoly.one(2, p)
    assert elementary_sym(2, 3, p).is_zero()


def test_power_sum_examples():
    p = Prime(7)
    assert power_sum(2, 3, p).terms == {(3, 0): 1, (0, 3): 1}
    assert power_sum(3, 1, p).terms == {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}
    assert power_sum(2, 2, Prime(2)).terms == {(2, 0): 1, (0, 2): 1}


def test_power_sum_index_zero_rejected():
    with pytest.raises(ValueError):
        power_sum(3, 0, Prime(5))


def test_symmetry_of_generators():
    for p in PRIMES_235:
        for n in range(2, 6):
            for i in range(1, n + 1):
                assert is_symmetric(elementary_sym(n, i, p))
                assert is_symmetric(power_sum(n, i, p))


def test_is_symmetric_counterexample():
    p = Prime(5)
    f = MultiPoly(2, p, {(1, 0): 1, (0, 1): 2})  # t1 + 2 t2
    assert not is_symmetric(f)
    assert is_symmetric(MultiPoly.zero(3, p))


# -- diagonal evaluation --------------------------------------------------------


def test_diagonal_examples():
    assert diagonal_eval(elementary_sym(4, 2, Prime(2))).is_zero()  # C(4,2) = 6
    assert diagonal_eval(power_sum(3, 5, Prime(3))).is_zero()  # 3 u^5
    p = Prime(5)
    f = MultiPoly(2, p, {(1, 2): 1})  # t1 t2^2
    assert diagonal_eval(f) == UniPoly.monomial(p, 3)


@given(data=st.data())
def test_diagonal_is_ring_homomorphism(data):
    p = data.draw(st.sampled_from(PRIMES_235))
    n = data.draw(st.integers(min_value=1, max_value=3))
    f = data.draw(st_poly(n, p))
    g = data.draw(st_poly(n, p))
    assert diagonal_eval(f * g) == diagonal_eval(f) * diagonal_eval(g)
    assert diagonal_eval(f + g) == diagonal_eval(f) + diagonal_eval(g)


def test_diagonal_closed_forms():
    for p in PRIMES_235:
        for n in range(2, 9):
            for i in range(1, 13):
                expected_e = UniPoly(p, {i: binom_mod(n, i, p).residue})
                assert diagonal_eval(elementary_sym(n, i, p)) == expected_e
                expected_s = UniPoly(p, {i: n % p.value})
                assert diagonal_eval(power_sum(n, i, p)) == expected_s


# -- rendering -------------------------------------------------------------------


def test_render_graded_lex():
    p = Prime(5)
    f = MultiPoly(2, p, {(2, 1): 1, (1, 2): 1, (0, 0): 3})
    assert f.render() == "3 + t1^2*t2 + t1*t2^2"
    assert MultiPoly.zero(2, p).render() == "0"
    assert str(UniPoly(p, {2: 3, 0: 1})) == "1 + 3*u^2"


def test_render_is_deterministic():
    p = Prime(3)
    rng = random.Random(0)
    f = random_multipoly(rng, 3, p, max_terms=8)
    g = MultiPoly(3, p, dict(reversed(list(f.terms.items()))))
    assert f.render() == g.render()
