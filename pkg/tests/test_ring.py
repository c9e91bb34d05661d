import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zpkcodes.ring import (
    NumericalInstabilityError,
    RingSpec,
    char_value,
    gamma,
    hom_weight,
    hom_weight_via_characters,
    is_prime,
    lemma_unit_sum_formula,
    unit_sum_reps,
    units,
)

SMALL = [RingSpec(p, k) for p in (2, 3, 5, 7) for k in (1, 2, 3) if p**k <= 343]


def test_ringspec_validation():
    assert RingSpec(5, 2).q == 25
    with pytest.raises(ValueError):
        RingSpec(4, 1)
    with pytest.raises(ValueError):
        RingSpec(3, 0)
    assert RingSpec.from_modulus(27) == RingSpec(3, 3)
    with pytest.raises(ValueError):
        RingSpec.from_modulus(12)


def test_is_prime_matches_sieve():
    sieve = [n for n in range(200) if n > 1 and all(n % d for d in range(2, n))]
    assert [n for n in range(200) if is_prime(n)] == sieve


def test_units_examples():
    assert units(RingSpec(3, 2)) == [1, 2, 4, 5, 7, 8]
    assert units(RingSpec(2, 1)) == [1]
    assert len(units(RingSpec(5, 2))) == 20


@pytest.mark.parametrize("spec", SMALL, ids=str)
def test_units_are_coprime_residues(spec):
    expected = [x for x in range(spec.q) if math.gcd(x, spec.q) == 1]
    assert units(spec) == expected
    assert len(expected) == spec.p**spec.k - spec.p ** (spec.k - 1)


def test_hom_weight_examples(Z9):
    assert hom_weight(0, Z9) == 0
    assert hom_weight(3, Z9) == 3
    assert hom_weight(4, Z9) == 2


def test_char_value_examples(Z9):
    assert char_value(0, Z9) == 1
    assert abs(char_value(2, RingSpec(2, 2)) - (-1)) < 1e-12
    z = char_value(3, Z9)
    assert abs(z.real + 0.5) < 1e-12
    assert abs(z**3 - 1) < 1e-12


def test_character_formula_examples(Z9):
    assert hom_weight_via_characters(0, Z9) == pytest.approx(0.0, abs=1e-12)
    # oracle: sum of the six 9th roots of unity at unit exponents, done by hand here
    s = sum(cmath.exp(2j * math.pi * u / 9) for u in (1, 2, 4, 5, 7, 8))
    assert 2 - s.real / 3 == pytest.approx(2.0)
    assert hom_weight_via_characters(1, Z9) == pytest.approx(2.0, abs=1e-12)
    assert hom_weight_via_characters(3, Z9) == pytest.approx(3.0, abs=1e-12)


def test_character_formula_rejects_imaginary(Z9):
    with pytest.raises(NumericalInstabilityError):
        hom_weight_via_characters(1, Z9, tol=-1.0)


@pytest.mark.parametrize("spec", SMALL, ids=str)
def test_character_identity_everywhere(spec):
    for x in range(spec.q):
        assert abs(hom_weight(x, spec) - hom_weight_via_characters(x, spec)) < 1e-9


@pytest.mark.parametrize("spec", SMALL, ids=str)
def test_full_ring_sum(spec):
    assert sum(hom_weight(x, spec) for x in range(spec.q)) == gamma(spec) * spec.q


@pytest.mark.parametrize("spec", SMALL, ids=str)
def test_hom_weight_values_and_unit_invariance(spec):
    allowed = {0, spec.p ** (spec.k - 1), gamma(spec)}
    for x in range(spec.q):
        assert hom_weight(x, spec) in allowed
        assert {hom_weight(u * x, spec) for u in spec.unit_list} == {hom_weight(x, spec)}


def test_gamma_examples():
    assert gamma(RingSpec(3, 2)) == 2
    assert gamma(RingSpec(3, 1)) == Fraction(2, 3)
    assert gamma(RingSpec(5, 3)) == 20


def test_unit_sum_examples(Z9, Z3):
    assert unit_sum_reps(1, Z9) == 2
    assert unit_sum_reps(1, Z9, ordered=True) == 3
    assert unit_sum_reps(1, Z3) == 1
    with pytest.raises(ValueError):
        unit_sum_reps(3, Z9)


def test_lemma_formula_examples():
    assert lemma_unit_sum_formula(RingSpec(3, 2)) == 2
    assert lemma_unit_sum_formula(RingSpec(5, 2)) == 8
    half = lemma_unit_sum_formula(RingSpec(2, 2))
    assert half == Fraction(1, 2) and half.denominator != 1


@pytest.mark.parametrize("spec", SMALL, ids=str)
def test_unit_sum_properties(spec):
    ordered = {unit_sum_reps(t, spec, ordered=True) for t in spec.unit_list}
    assert len(ordered) == 1
    if spec.p != 2:
        for t in spec.unit_list:
            un = unit_sum_reps(t, spec)
            assert un == lemma_unit_sum_formula(spec)
            assert unit_sum_reps(t, spec, ordered=True) == 2 * un - 1
        # ordered count is p^k - 2 p^(k-1)
        assert ordered == {spec.q - 2 * spec.q // spec.p}


@given(st.sampled_from(SMALL), st.integers(min_value=-1000, max_value=1000))
def test_hom_weight_reduces_mod_q(spec, x):
    assert hom_weight(x, spec) == hom_weight(x % spec.q, spec)
