from heckecells.laurent import LaurentPoly


def test_zero_and_normalization():
    assert LaurentPoly({2: 0, 1: 0}).is_zero()
    assert LaurentPoly() == 0
    assert not LaurentPoly({0: 1}).is_zero()
    p = LaurentPoly({3: 1}) - LaurentPoly({3: 1})
    assert p.is_zero() and p == LaurentPoly.zero()


def test_arithmetic():
    v = LaurentPoly.v(1)
    vi = LaurentPoly.v(-1)
    assert v * vi == LaurentPoly.one()
    p = v + vi
    assert p * p == LaurentPoly({2: 1, 0: 2, -2: 1})
    assert (p - p).is_zero()
    assert 3 * v == LaurentPoly({1: 3})
    assert p.shift(2) == LaurentPoly({3: 1, 1: 1})


def test_degree_valuation_bar():
    p = LaurentPoly({3: 2, -1: 5})
    assert p.degree == 3 and p.valuation == -1
    assert p.bar() == LaurentPoly({-3: 2, 1: 5})
    assert p.bar().bar() == p
    sym = LaurentPoly({1: 1, -1: 1})
    assert sym.bar() == sym


def test_evaluate_and_coeff():
    p = LaurentPoly({2: 1, 0: -3, -2: 1})
    assert p(1) == -1
    assert p(-1) == -1
    assert p.coeff(2) == 1 and p.coeff(5) == 0


def test_dict_roundtrip_and_str():
    p = LaurentPoly({2: 1, -1: -4})
    assert LaurentPoly.from_dict(p.to_dict()) == p
    assert str(LaurentPoly({1: 1, -1: 1})) == "v + v^-1"
    assert str(LaurentPoly()) == "0"


def test_nonneg():
    assert LaurentPoly({1: 1, -1: 1}).is_nonneg()
    assert not LaurentPoly({1: -1}).is_nonneg()
