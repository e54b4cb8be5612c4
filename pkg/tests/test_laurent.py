from coxkl.laurent import ONE, Q, ZERO, LaurentPoly


def test_normalization():
    assert LaurentPoly([0, 0, 0]).is_zero
    p = LaurentPoly([0, 1, 2, 0], offset=-1)
    assert p.offset == 0
    assert p.coeffs == (1, 2)
    assert p.low == 0 and p.degree == 1


def test_zero_conventions():
    assert ZERO.degree is None
    assert ZERO.low is None
    assert ZERO + ZERO == ZERO
    assert ZERO * Q == ZERO
    assert str(ZERO) == "0"


def test_arithmetic():
    qm1 = Q - ONE
    assert qm1 * qm1 == LaurentPoly([1, -2, 1])
    assert (Q + ONE) * (Q - ONE) == LaurentPoly([-1, 0, 1])
    assert 3 * Q == LaurentPoly([3], 1)
    assert Q.shift(-2) == LaurentPoly.q_power(-1)
    assert -(Q - ONE) == ONE - Q


def test_bar_involution():
    p = LaurentPoly([1, 0, 2], offset=-1)  # q^-1 + 2q
    assert p.bar() == LaurentPoly([2, 0, 1], offset=-1)
    assert p.bar().bar() == p
    assert ONE.bar() == ONE


def test_coeff_and_items():
    p = LaurentPoly([5, 0, -3], offset=2)
    assert p.coeff(2) == 5
    assert p.coeff(3) == 0
    assert p.coeff(4) == -3
    assert p.coeff(0) == 0
    assert list(p.items()) == [(2, 5), (4, -3)]


def test_truncate_above():
    p = LaurentPoly([1, 1, 1, 1])  # 1 + q + q^2 + q^3
    assert p.truncate_above(1) == ONE + Q
    assert p.truncate_above(-1) == ZERO
    assert p.truncate_above(5) == p


def test_display():
    assert str(ONE) == "1"
    assert str(Q) == "q"
    assert str(ONE + Q) == "1 + q"
    assert str(ONE - Q) == "1 - q"
    assert str(LaurentPoly([-1], 1)) == "-q"
    assert str(LaurentPoly([2, 0, -3], -1)) == "2q^-1 - 3q"


def test_hash_and_eq():
    assert LaurentPoly([1], 0) == 1
    assert hash(LaurentPoly([1, 2])) == hash(LaurentPoly((1, 2)))
    assert LaurentPoly([1], 1) != LaurentPoly([1], 2)
