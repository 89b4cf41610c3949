import math
from fractions import Fraction

import pytest

from weilk3.errors import BoundaryRoot, NotPrime, OrderTooLarge
from weilk3.ratpoly import (
    RatPoly,
    composed_product,
    cyclotomic,
    euler_phi,
    factor_out_root,
    is_prime,
    next_prime,
    poly_gcd,
    power_roots,
    primitive_positive,
    resultant,
    sturm_roots_in_interval,
    val_p,
)


def test_ring_operations():
    f = RatPoly.of(1, -2, 16)
    assert f.degree == 2 and f.constant == 1 and f.leading == 16
    assert (f * RatPoly.of(0, 1)).coeffs == (0, 1, -2, 16)
    q, r = divmod(RatPoly.of(-1, 0, 0, 1), RatPoly.of(-1, 1))
    assert q == RatPoly.of(1, 1, 1) and r.is_zero
    assert RatPoly.of(1, 1) ** 2 == RatPoly.of(1, 2, 1)
    assert RatPoly.of(1, 2, 1)(Fraction(-1)) == 0
    assert RatPoly.of(2, 0, 4).derivative() == RatPoly.of(0, 8)
    assert RatPoly.of(2, 3, 4).reverse() == RatPoly.of(4, 3, 2)


def test_zero_and_strings():
    assert RatPoly.zero().degree == -1
    assert RatPoly.zero().to_strings() == ["0"]
    assert RatPoly.from_strings(["1", "-1/2", "1"]) == RatPoly.of(1, Fraction(-1, 2), 1)
    assert RatPoly.of(1, Fraction(-1, 2)).to_strings() == ["1", "-1/2"]


def test_resultants():
    # Res(t-2, t-3) = 2-3; Res(t^2+1, t-1) = 1^2+1
    assert resultant(RatPoly.of(-2, 1), RatPoly.of(-3, 1)) == -1
    assert resultant(RatPoly.of(1, 0, 1), RatPoly.of(-1, 1)) == 2
    # lc(f)^deg g * prod g(alpha): f = 2t^2-2, g = t-5 -> 2 * (1-5)(-1-5)
    assert resultant(RatPoly.of(-2, 0, 2), RatPoly.of(-5, 1)) == 48
    assert resultant(RatPoly.of(-5, 1), RatPoly.of(-2, 0, 2)) == 48
    # f = t^2-1 against f' = 2t: prod f'(alpha) = 2 * (-2)
    assert resultant(RatPoly.of(-1, 0, 1), RatPoly.of(0, 2)) == -4
    assert resultant(cyclotomic(12), cyclotomic(12) + RatPoly.one()) != 0


def test_gcd():
    g = poly_gcd(RatPoly.of(-1, 0, 1), RatPoly.of(1, 2, 1))
    assert g == RatPoly.of(1, 1)
    assert poly_gcd(RatPoly.of(2), RatPoly.of(0, 0, 6)).degree == 0


def test_factor_out_root():
    m, quo = factor_out_root(RatPoly.of(1, -1) ** 3 * RatPoly.of(1, 0, 2), 1)
    assert m == 3 and quo == RatPoly.of(1, 0, 2)
    m, quo = factor_out_root(RatPoly.of(1, 1) * RatPoly.of(1, 0, 2), -1)
    assert m == 1 and quo == RatPoly.of(1, 0, 2)
    m, quo = factor_out_root(RatPoly.of(1, 0, 2), 1)
    assert m == 0 and quo == RatPoly.of(1, 0, 2)


def test_composed_product():
    # roots {2,3} x {5,7} -> {10,14,15,21}
    f = RatPoly.of(6, -5, 1)
    g = RatPoly.of(35, -12, 1)
    expect = primitive_positive(
        RatPoly.of(-10, 1) * RatPoly.of(-14, 1) * RatPoly.of(-15, 1) * RatPoly.of(-21, 1)
    )
    assert composed_product(f, g) == expect


def test_power_roots():
    f = RatPoly.of(6, -5, 1)
    assert power_roots(f, 2) == primitive_positive(RatPoly.of(36, -13, 1))
    assert power_roots(f, 1) == primitive_positive(f)
    # unit-circle pair stays balanced: constant equals leading
    pr = power_roots(RatPoly.of(1, Fraction(-1, 2), 1), 2)
    assert pr.degree == 2 and pr.coeffs[0] == pr.coeffs[2]


def test_cyclotomic():
    assert cyclotomic(1) == RatPoly.of(-1, 1)
    assert cyclotomic(2) == RatPoly.of(1, 1)
    assert cyclotomic(4) == RatPoly.of(1, 0, 1)
    assert cyclotomic(12) == RatPoly.of(1, 0, -1, 0, 1)
    assert euler_phi(12) == 4 and euler_phi(1) == 1
    with pytest.raises(OrderTooLarge):
        cyclotomic(131)  # phi = 130 over the detection cap


def test_sturm():
    f = RatPoly.of(-2, 0, 1)
    assert sturm_roots_in_interval(f, 0, 2) == 1
    assert sturm_roots_in_interval(f, -2, 2) == 2
    assert sturm_roots_in_interval(f, 3, 5) == 0
    # u - 1/2 has one root in (-2, 2]
    assert sturm_roots_in_interval(RatPoly.of(Fraction(-1, 2), 1), -2, 2) == 1
    with pytest.raises(BoundaryRoot):
        sturm_roots_in_interval(RatPoly.of(-4, 0, 1), 0, 2)


def test_primes_and_valuations():
    assert val_p(48, 2) == 4
    assert val_p(Fraction(3, 4), 2) == -2
    assert val_p(0, 7) == math.inf
    assert is_prime(2) and is_prime(97)
    assert not is_prime(1) and not is_prime(91)
    assert next_prime(13) == 17 and next_prime(1) == 2
    with pytest.raises(NotPrime):
        val_p(5, 6)
