from fractions import Fraction

import pytest

from triquad import (
    BiquadField,
    NotApplicable,
    UnknownCase,
    eps_decomposition,
    factor_squarefree,
    fundamental_unit,
    hasse_Q_Ld,
    is_square_in_biquad,
    q_index_Ld,
    sqrt_in_biquad,
    unit_index_biquad,
    unit_product,
)


def test_fundamental_unit_known_values():
    for m, xydn in [
        (2, (1, 1, 1, -1)),
        (3, (2, 1, 1, 1)),
        (5, (1, 1, 2, -1)),
        (13, (3, 1, 2, -1)),
        (33, (23, 4, 1, 1)),
        (94, (2143295, 221064, 1, 1)),
        (21, (5, 1, 2, 1)),
    ]:
        u = fundamental_unit(m)
        assert (u.x, u.y, u.denom, u.norm) == xydn, m


def test_fundamental_unit_is_exact():
    for m in range(2, 300):
        if any(m % (p * p) == 0 for p in range(2, 18)):
            continue
        u = fundamental_unit(m)
        assert u.x * u.x - m * u.y * u.y == u.norm * u.denom * u.denom, m
        assert u.x > 0 and u.y > 0
        assert u.denom == 1 or (u.denom == 2 and m % 4 == 1)


def test_fundamental_unit_is_minimal():
    import math

    # brute force over y: the fundamental unit is (x + y*sqrt(m))/denom with
    # the least y > 0 admitting a solution of x^2 - m*y^2 = +-denom^2
    for m in range(2, 40):
        if any(m % (p * p) == 0 for p in (2, 3, 5)):
            continue
        u = fundamental_unit(m)
        for y in range(1, 2 * u.y):
            found = None
            for denom in (1,) if m % 4 != 1 else (2, 1):
                for norm in (-1, 1):
                    t = m * y * y + norm * denom * denom
                    x = math.isqrt(t)
                    if t > 0 and x * x == t and (denom == 1 or (x % 2 and y % 2)):
                        found = (x, y, denom, norm)
                        break
                if found:
                    break
            if found:
                break
        assert found == (u.x, u.y, u.denom, u.norm), m


def test_eps_decomposition():
    dec = eps_decomposition(33)
    assert (dec.sf_plus, dec.cof_plus, dec.sf_minus, dec.cof_minus) == (6, 2, 22, 1)
    with pytest.raises(NotApplicable):
        eps_decomposition(2)  # norm -1


def test_biquad_field_arithmetic():
    K = BiquadField(2, 33)
    r2 = K.from_quadratic(2, 0, 1, 1)  # sqrt(2) as 0 + 1*sqrt(2)
    r33 = K.from_quadratic(33, 0, 1, 1)
    prod = K.mul(r2, r33)
    assert prod == (Fraction(0), Fraction(0), Fraction(0), Fraction(1))  # sqrt(66)
    assert K.mul(r2, r2) == (Fraction(2), Fraction(0), Fraction(0), Fraction(0))
    two = K.mul(prod, prod)
    assert two == (Fraction(66), Fraction(0), Fraction(0), Fraction(0))


def test_sqrt_in_biquad_roundtrip():
    K = BiquadField(2, 33)
    eps66 = K.from_quadratic(66, 65, 8, 1)  # 65 + 8*sqrt(66), norm +1
    root = sqrt_in_biquad(K, eps66)
    assert root is not None
    assert K.mul(root, root) == eps66
    # 1 + sqrt(2) is a unit but not a square
    eps2 = K.from_quadratic(2, 1, 1, 1)
    assert sqrt_in_biquad(K, eps2) is None


def test_is_square_in_biquad():
    assert is_square_in_biquad((0, 0, 1), 2, 33)  # eps_66 is a square
    assert not is_square_in_biquad((0, 1, 0), 2, 33)  # eps_33 is not
    assert is_square_in_biquad((0, 0, 1), 3, 11)  # eps_33 over Q(sqrt3, sqrt11)


def test_unit_product_inverse_exponents():
    K = BiquadField(2, 33)
    e = unit_product(2, 33, (1, 0, 0))
    e_inv = unit_product(2, 33, (-1, 0, 0))
    assert K.mul(e, e_inv) == K.one()


def test_unit_index_biquad():
    assert unit_index_biquad(2, 33).value == 2  # only eps_66 becomes a square
    assert unit_index_biquad(3, 11).value == 4  # eps_33 and eps_3*eps_11 both do


def test_q_index_Ld():
    assert q_index_Ld(factor_squarefree(33)).value == 4  # q1 = q2 = 3 mod 8
    assert q_index_Ld(factor_squarefree(161)).value == 4  # q1 = q2 = 7 mod 8
    assert q_index_Ld(factor_squarefree(51)).value == 8  # d = q*p, (p/q) = -1
    with pytest.raises(UnknownCase):
        q_index_Ld(factor_squarefree(65))  # d = p1*p2, 5,5 mod 8: no closed form


def test_hasse_Q_Ld():
    assert hasse_Q_Ld(factor_squarefree(17)).value == 1  # p = 1 mod 8
    assert hasse_Q_Ld(factor_squarefree(51)).value == 1  # d = q*p, (p/q) = -1
    with pytest.raises(UnknownCase):
        hasse_Q_Ld(factor_squarefree(65))
