from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lame_monodromy.counting import (
    CountRow,
    brute_force_family,
    count_family,
    dahmen_ordinary,
    dahmen_projective,
    dihedral_count,
    epsilon_correction,
    euler_phi,
    lattice_oracle,
    mobius,
    ordinary_divisor_total,
    phi_big,
    projective_divisor_total,
    region_weight,
    total_for_n,
)
from lame_monodromy.geom import InvalidInputError
from lame_monodromy.goldens import count_rows


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def test_arithmetic_helpers():
    assert [euler_phi(k) for k in range(1, 8)] == [1, 1, 2, 2, 4, 2, 6]
    assert [mobius(k) for k in range(1, 9)] == [1, -1, -1, 0, -1, 1, -1, 0]
    assert phi_big(1) == 1
    assert phi_big(6) == 36 * (1 - F(1, 4)) * (1 - F(1, 9))
    assert epsilon_correction(4, 3) == 1
    assert epsilon_correction(4, 5) == 0


@given(st.integers(1, 40), st.integers(1, 40))
def test_phi_big_multiplicative(a, b):
    import math

    if math.gcd(a, b) == 1:
        assert phi_big(a * b) == phi_big(a) * phi_big(b)


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("big_n", range(1, 9))
def test_projective_formula_matches_oracle(n, big_n):
    assert dahmen_projective(n, big_n) == lattice_oracle(n, big_n, projective=True)


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("big_n", range(1, 9))
def test_ordinary_formula_matches_oracle(n, big_n):
    assert dahmen_ordinary(n, big_n) == lattice_oracle(n, big_n, projective=False)


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("big_n", range(2, 11))
def test_projective_divisor_sum_identity(n, big_n):
    total = sum(
        3 * dahmen_projective(n, d) - 2 * epsilon_correction(n, d)
        for d in _divisors(big_n)
    )
    assert total == projective_divisor_total(n, big_n)
    assert projective_divisor_total(n, big_n) == F(n * (n + 1), 4) * (big_n - 1) * (
        big_n - 2
    )


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("big_n", range(2, 11))
def test_ordinary_divisor_sum_identity(n, big_n):
    total = sum(
        3 * dahmen_ordinary(n, d) - 2 * epsilon_correction(n, d)
        for d in _divisors(big_n)
    )
    assert total == ordinary_divisor_total(n, big_n)


def test_region_weight_examples():
    # (s, t) strictly inside the fundamental triangle: one torus for n = 1
    assert region_weight(1, F(1, 3), F(1, 3)) == 1
    # boundary parameters carry no torus
    assert region_weight(1, F(1, 2), F(1, 2)) == 0


@given(st.integers(1, 4), st.fractions(min_value=F(1, 20), max_value=F(19, 20),
                                       max_denominator=20),
       st.fractions(min_value=F(1, 20), max_value=F(19, 20), max_denominator=20))
@settings(max_examples=200)
def test_region_weight_bounds(n, s, t):
    w = region_weight(n, s, t)
    assert 0 <= w <= n * (n + 1) // 2 + 1


def test_counting_rows_formula_equals_brute_force():
    for row in count_rows():
        if row.formula == "dihedral":
            continue
        for m in range(1, 7):
            assert count_family(row, m) == brute_force_family(row, m), (
                row.family, row.bases, m,
            )


def test_dihedral_count_matches_brute_force():
    regular = CountRow(family="dihedral", bases=(F(1),),
                       distances=((1, False), (1, False), (1, False)),
                       formula="ceil6", note="regular")
    generic = CountRow(family="dihedral", bases=(F(1),),
                       distances=((1, False), (2, False), (3, False)),
                       formula="tri", note=None)
    for m in range(1, 7):
        assert dihedral_count((1, 1, 1), m) == brute_force_family(regular, m)
        assert dihedral_count((1, 2, 3), m) == brute_force_family(generic, m)
    with pytest.raises(InvalidInputError):
        dihedral_count((2, 2, 2), 1)


def test_total_for_example_indices():
    assert total_for_n(F(1, 4)).total == 1
    report = total_for_n(F(13, 10))
    assert report.total == 6
    by_key = {
        tuple(d for d, _ in item["distances"]): item for item in report.breakdown
    }
    assert by_key[(1, 2, 2)]["m"] == 2 and by_key[(1, 2, 2)]["count"] == 3
    assert by_key[(1, 2, 3)]["count"] == 1
    assert by_key[(1, 3, 2)]["count"] == 1
    assert by_key[(2, 2, 2)]["count"] == 1


def test_total_rejects_integer_and_half_integer():
    with pytest.raises(InvalidInputError):
        total_for_n(F(3, 1))
    with pytest.raises(InvalidInputError):
        total_for_n(F(3, 2))
