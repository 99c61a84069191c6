"""Field arithmetic: axioms, reduction homomorphism, square roots, Frobenius."""

import random
from fractions import Fraction

import pytest

from superw.errors import NotAdmissibleAtP
from superw.fields import (
    QQ,
    FieldElement,
    PrimeField,
    QuadExtField,
    frobenius,
    reduce_mod_p,
    sqrt_in_field,
)

PRIMES = [3, 5, 7, 11]


def test_reduce_mod_p_examples():
    assert reduce_mod_p(Fraction(1, 2), 3) == 2
    assert reduce_mod_p(Fraction(1, 2), 5) == 3
    with pytest.raises(NotAdmissibleAtP):
        reduce_mod_p(Fraction(3, 5), 5)


def test_reduce_is_ring_homomorphism():
    rng = random.Random(0)
    for p in PRIMES:
        for _ in range(60):
            a = QQ.random(rng)
            b = QQ.random(rng)
            if a.denominator % p == 0 or b.denominator % p == 0:
                continue
            ra, rb = reduce_mod_p(a, p), reduce_mod_p(b, p)
            if (a + b).denominator % p == 0 or (a * b).denominator % p == 0:
                continue
            assert reduce_mod_p(a + b, p) == ra + rb
            assert reduce_mod_p(a * b, p) == ra * rb


@pytest.mark.parametrize("p", PRIMES)
def test_field_axioms_random_triples(p):
    rng = random.Random(p)
    for field in (PrimeField(p), QuadExtField(p)):
        for _ in range(50):
            a, b, c = (field.random(rng) for _ in range(3))
            assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
            assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
            assert field.mul(a, field.add(b, c)) == field.add(
                field.mul(a, b), field.mul(a, c))
            if a != field.zero:
                assert field.mul(a, field.inv(a)) == field.one


def test_sqrt_examples():
    assert sqrt_in_field(FieldElement(PrimeField(5), 4)) == 2
    assert sqrt_in_field(FieldElement(PrimeField(7), 0)) == 0
    # 2 is a non-residue mod 5: the root lives in F_25; verify against an
    # exhaustive squaring of all 25 elements.
    s = sqrt_in_field(FieldElement(PrimeField(5), 2))
    f25 = QuadExtField(5)
    assert s.field == f25
    roots = [x for x in f25.elements() if f25.mul(x, x) == (2, 0)]
    assert s.value in roots and len(roots) == 2


@pytest.mark.parametrize("p", PRIMES)
def test_sqrt_squares_back(p):
    f = PrimeField(p)
    for c in f.elements():
        s = sqrt_in_field(FieldElement(f, c))
        sq = s * s
        assert sq == FieldElement(f, c)


def test_frobenius():
    assert frobenius(FieldElement(PrimeField(5), 3)) == 3
    f9 = QuadExtField(3)
    assert f9.nu == 2  # == -1 mod 3, so x^2 = -1 in F_9
    x = FieldElement(f9, (0, 1))
    assert frobenius(x) == -x
    assert frobenius(FieldElement(PrimeField(7), 0)) == 0
    # frobenius is the identity exactly on the base field
    rng = random.Random(1)
    for _ in range(20):
        a = FieldElement(f9, f9.random(rng))
        assert frobenius(frobenius(a)) == a
