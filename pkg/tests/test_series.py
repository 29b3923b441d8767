import pytest

from dihedral_gravity.arnold import betti_moduli
from dihedral_gravity.polygon import dissections
from dihedral_gravity.series import (
    BivariateSeries,
    IntPolynomial,
    brown_betti_series,
    cayley_count,
    compositional_inverse,
    euler_betti,
    euler_characteristic,
    euler_check,
    moduli_series,
    poincare_moduli,
)


def P(*c):
    return IntPolynomial(c)


def test_int_polynomial_basics():
    assert P(1, 2, 0, 0).coeffs == (1, 2)
    assert (P(1, 1) * P(-1, 1)) == P(-1, 0, 1)
    assert P(2, -1) + P(-2, 1) == IntPolynomial()
    assert str(P(-4, 5, 0, 1)) == "-4 + 5t + t^3"


def test_poincare_examples():
    assert poincare_moduli(3) == P(1)
    assert poincare_moduli(4) == P(1, 2)
    assert poincare_moduli(6) == P(1, 9, 26, 24)


@pytest.mark.parametrize("n", range(3, 9))
def test_poincare_matches_nbc(n):
    assert list(poincare_moduli(n).coeffs) == betti_moduli(n)


def test_moduli_series_coefficients():
    f = moduli_series(5)
    assert f[2] == P(-1)
    assert f[3] == -P(-2, 1)
    assert f[4] == -P(6, -5, 1)


def test_inverse_examples():
    x = BivariateSeries.x(8)
    assert compositional_inverse(x) == x
    catalan = compositional_inverse(BivariateSeries(8, (P(), P(1), P(-1))))
    assert [catalan[m].coeff(0) for m in range(1, 9)] == [1, 1, 2, 5, 14, 42, 132, 429]
    g = compositional_inverse(moduli_series(10))
    assert g[3] == P(0, 1)
    assert g[4] == P(1, 0, 1)
    assert g[5] == P(-4, 5, 0, 1)
    with pytest.raises(ValueError):
        compositional_inverse(BivariateSeries(4, (P(), P(2))))


def test_inverse_both_ways():
    f = moduli_series(10)
    g = compositional_inverse(f)
    assert f.compose(g) == BivariateSeries.x(10) == g.compose(f)


def test_brown_series_examples():
    assert brown_betti_series(3) == [1]
    assert brown_betti_series(4) == [1, 0]
    assert brown_betti_series(5) == [1, 0, 1]
    assert brown_betti_series(6) == [1, 0, 5, 4]


@pytest.mark.parametrize("n", range(4, 11))
def test_brown_series_regression(n):
    b = brown_betti_series(n)
    assert b[0] == 1 and b[1] == 0 and min(b) >= 0


def test_euler_examples():
    assert euler_betti(5)[2] == 1
    assert euler_characteristic(brown_betti_series(6)) == 2
    assert all(euler_betti(n)[0] == 1 for n in range(3, 9))


@pytest.mark.parametrize("n", range(3, 10))
def test_stratified_euler_characteristic(n):
    """chi of Brown's space is the sum over dissections of chi of the open strata."""
    from dihedral_gravity.polygon import _subpolygons, all_dissections

    per_stratum = []
    for d in all_dissections(n):
        chi = 1
        for reg in _subpolygons(n, d.chord_ids):
            chi *= euler_characteristic(poincare_moduli(reg.size).coeffs)
        per_stratum.append(chi)
    assert sum(per_stratum) == euler_characteristic(brown_betti_series(n))
    if n == 6:
        by_k = [sum(c for c, d in zip(per_stratum, all_dissections(6)) if d.k == k) for k in range(4)]
        assert by_k == [-6, 15, -21, 14]


@pytest.mark.parametrize("n", range(3, 11))
def test_euler_check(n):
    assert euler_check(n).ok


def test_cayley_examples():
    assert cayley_count(5, 1) == 5
    assert cayley_count(6, 3) == 14
    assert all(cayley_count(n, 0) == 1 for n in range(3, 12))
    with pytest.raises(ValueError):
        cayley_count(5, 3)


@pytest.mark.parametrize("n", range(3, 10))
def test_cayley_matches_enumeration(n):
    assert [cayley_count(n, k) for k in range(n - 2)] == [len(dissections(n, k)) for k in range(n - 2)]
