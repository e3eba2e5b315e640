"""Truncated ring arithmetic: construction, lifts, roots of unity, valuation."""

from fractions import Fraction

import pytest

from unitroots.errors import (CompositeP, NonUnitDivision, PrecisionTooLow,
                              ReduciblePolynomial)
from unitroots.padic import (RingElem, make_ring, pi_pow_over_factorials,
                             teichmueller, valuation, zeta_p)


def rand_elem(ring, rng):
    return RingElem(ring, [[rng.randrange(ring.pN) for _ in range(ring.m)]
                           for _ in range(ring.npi)])


def test_make_ring_validation():
    with pytest.raises(CompositeP):
        make_ring(6, 1, None, 2)
    with pytest.raises(ReduciblePolynomial):
        make_ring(3, 2, (0, 0, 1), 2)  # t^2 factors
    ring = make_ring(3, 2, (1, 0, 1), 2)  # t^2 + 1 is irreducible mod 3
    assert ring.g == (1, 0, 1)


def test_default_polynomial_is_deterministic():
    assert make_ring(3, 2, None, 2).g == (1, 0, 1)
    assert make_ring(2, 2, None, 2).g == (1, 1, 1)
    assert make_ring(2, 1, None, 3).g == (0, 1)


def test_p2_pi_is_minus_two(ring2):
    assert ring2.pi() == ring2.from_int(-2)
    assert (ring2.pi() ** 1 + ring2.from_int(2)).is_zero()


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (5, 1), (3, 2), (2, 2)])
def test_pi_relation(p, m):
    ring = make_ring(p, m, None, 4)
    assert (ring.pi() ** (p - 1) + ring.from_int(p)).is_zero()


def test_teichmueller_examples(ring3):
    assert teichmueller(ring3, (1,)) == ring3.one()
    # 2 in F_3 lifts to the order-2 root of unity, i.e. -1
    assert teichmueller(ring3, (2,)) == ring3.from_int(-1)
    r33 = make_ring(3, 1, None, 3)
    assert teichmueller(r33, (2,)).rows[0][0] == 26
    r5 = make_ring(5, 1, None, 2)
    assert teichmueller(r5, (2,)).rows[0][0] == 7
    assert teichmueller(ring3, (0,)).is_zero()


def test_teichmueller_multiplicative(rng):
    for p, m in ((3, 1), (5, 1), (3, 2)):
        ring = make_ring(p, m, None, 4)
        for _ in range(15):
            a = [rng.randrange(p) for _ in range(m)]
            b = [rng.randrange(p) for _ in range(m)]
            ab_bar = ring.from_tpoly(a) * ring.from_tpoly(b)
            ab = tuple(c % p for c in ab_bar.rows[0])
            assert teichmueller(ring, a) * teichmueller(ring, b) == \
                teichmueller(ring, ab)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_zeta_p(p):
    ring = make_ring(p, 1, None, 4)
    z = zeta_p(ring)
    assert (z ** p - ring.one()).is_zero()
    assert not (z - ring.one()).is_zero()
    # zeta == 1 + pi mod pi^2
    assert (z - ring.one() - ring.pi()).val_at_least(Fraction(2, p - 1))
    # cyclotomic polynomial vanishes
    phi = ring.zero()
    for k in range(p):
        phi = phi + z ** k
    assert phi.is_zero()
    # (zeta - 1)/pi is a unit: the orders coincide
    assert valuation(z - ring.one()) == Fraction(1, p - 1)


def test_zeta_p2_is_minus_one(ring2):
    assert zeta_p(ring2) == ring2.from_int(-1)


def test_zeta_precision_too_low():
    with pytest.raises(PrecisionTooLow):
        zeta_p(make_ring(2, 1, None, 1))


def test_valuation_examples(ring3):
    assert valuation(ring3.from_int(3)) == 1
    assert valuation(ring3.pi()) == Fraction(1, 2)
    assert valuation(ring3.zero()) is None
    assert valuation(ring3.from_int(9) * ring3.pi()) == Fraction(5, 2)


def test_valuation_multiplicative(rng, ring5):
    for _ in range(60):
        x, y = rand_elem(ring5, rng), rand_elem(ring5, rng)
        vx, vy = valuation(x), valuation(y)
        if vx is None or vy is None or vx + vy >= ring5.N:
            continue
        assert valuation(x * y) == vx + vy


def test_ring_laws(rng):
    for p, m in ((2, 1), (3, 1), (5, 1), (3, 2)):
        ring = make_ring(p, m, None, 3)
        xs = [rand_elem(ring, rng) for _ in range(8)]
        for _ in range(40):
            x, y, z = rng.choice(xs), rng.choice(xs), rng.choice(xs)
            assert x + y == y + x
            assert x * y == y * x
            assert (x * y) * z == x * (y * z)
            assert (x + y) * z == x * z + y * z


def test_inverse_and_division_contract(ring3):
    x = ring3.from_int(5) + ring3.pi() * ring3.from_int(7)
    assert (x * x.inverse() - ring3.one()).is_zero()
    with pytest.raises(NonUnitDivision):
        ring3.from_int(3).inverse()
    with pytest.raises(NonUnitDivision):
        ring3.from_fraction(Fraction(1, 3))


def test_divide_exact_p(ring3):
    x = ring3.from_int(18)
    assert x.divide_exact_p(1).rows[0][0] == 6
    with pytest.raises(NonUnitDivision):
        ring3.from_int(2).divide_exact_p(1)


def test_pi_pow_over_factorials(ring3):
    # ord(pi^k / k!) = digit_sum_3(k) / 2
    for k, s in ((1, 1), (3, 1), (4, 2), (9, 1), (13, 3)):
        e = pi_pow_over_factorials(ring3, k, (k,))
        assert valuation(e) == Fraction(s, 2)
    # multi-factorial combination from the splitting series
    e = pi_pow_over_factorials(ring3, 5, (1, 4))
    assert valuation(e) == Fraction(1 + 2, 2)


def test_reduce_to(ring3):
    low = make_ring(3, 1, None, 2)
    x = ring3.from_int(77)
    assert x.reduce_to(low).rows[0][0] == 77 % 9


def test_digit_serialization(ring3):
    x = ring3.from_int(5) + ring3.pi() * ring3.from_int(11)
    digs = x.digits()
    assert digs == [[5], [11]]
    assert RingElem(ring3, digs) == x
