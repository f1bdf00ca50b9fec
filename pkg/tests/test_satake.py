from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from rslv.errors import DegenerateInputError, DomainError
from rslv.satake_whittaker import (
    Q,
    V,
    LFactorRoots,
    SatakeData,
    character_value,
    dominant_vectors,
    hecke_eigenvalue_fundamental,
    modulus_char_sqrt,
    rs_lfactor,
    shifted_shintani_value,
    shintani_value,
    standard_lfactor,
    whittaker_recursion_check,
    whittaker_recursion_sides,
    zeta_local,
    zeta_series_gl_m_m,
    zeta_series_gl_m_m1,
)
from rslv.symfunc import ONE, ZERO, RationalFunction, var

FAST = settings(max_examples=25, deadline=None)
nonzero = st.fractions(min_value=-4, max_value=4, max_denominator=5).filter(lambda f: f != 0)


def _semistandard_character(lam, vals):
    """Independent oracle: sum over semistandard tableaux of shape lam with entries 1..m."""
    m = len(vals)
    cells = [(r, c) for r, row in enumerate(lam) for c in range(row)]
    total = Fraction(0)
    for filling in product(range(m), repeat=len(cells)):
        t = dict(zip(cells, filling))
        if any(c > 0 and t[(r, c - 1)] > t[(r, c)] for r, c in cells):
            continue
        if any(r > 0 and t[(r - 1, c)] >= t[(r, c)] for r, c in cells):
            continue
        term = Fraction(1)
        for v in filling:
            term *= vals[v]
        total += term
    return total


def test_constants():
    assert Q == V * V
    assert zeta_local(1) == ONE / (1 - V ** -2)
    with pytest.raises(DomainError):
        zeta_local(0)


def test_satake_unit_product():
    s = SatakeData.symbolic("a", 3, unit_product=True)
    assert s.product() == ONE
    assert s.values[2] == ONE / (var("a1") * var("a2"))
    assert SatakeData.symbolic("a", 1, True).values == (ONE,)
    with pytest.raises(DomainError):
        SatakeData.numeric([1, 0])


def test_check_regular_rejects_coincident_parameters():
    with pytest.raises(DegenerateInputError):
        SatakeData.numeric([2, 2, 3]).check_regular()


def test_hecke_eigenvalue_is_elementary_symmetric():
    s = SatakeData.symbolic("a", 3)
    a1, a2, a3 = (var(f"a{i}") for i in (1, 2, 3))
    assert hecke_eigenvalue_fundamental(s, 2) == a1 * a2 + a1 * a3 + a2 * a3
    with pytest.raises(DomainError):
        hecke_eigenvalue_fundamental(s, 4)


def test_recursion_needs_unit_product():
    # without the unit product the two sides differ: negative control
    lhs, rhs = whittaker_recursion_sides(SatakeData.numeric([2, 3, 5]), (1, 0))
    assert lhs != rhs


def test_lfactor_value_and_series_agree():
    s = SatakeData.numeric([2, Fraction(1, 3)])
    L = standard_lfactor(s)
    X = var("X")
    assert L.value() == ONE / ((1 - 2 * X) * (1 - X / 3))
    series = L.series(4)
    # coefficient of X^k is h_k(2, 1/3)
    for k in range(5):
        expected = sum(Fraction(2) ** i * Fraction(1, 3) ** (k - i) for i in range(k + 1))
        assert series[(k,)] == RationalFunction(expected)
    assert isinstance(rs_lfactor(s, s), LFactorRoots)
    assert len(rs_lfactor(s, s).inverse_roots) == 4


def test_modulus_character():
    assert modulus_char_sqrt(2, (1, 0)) == V ** -1
    assert modulus_char_sqrt(3, (1, 1, 0)) == V ** -2
    with pytest.raises(DomainError):
        modulus_char_sqrt(2, (1,))


@pytest.mark.parametrize("lam", [(1, 0, 0), (2, 1, 0), (2, 2, 1), (3, 1, 0), (1, 1, 1)])
def test_character_value_against_tableau_oracle(lam):
    vals = [Fraction(2), Fraction(-1, 3), Fraction(5, 7)]
    chi = character_value(SatakeData.numeric(vals), lam)
    assert chi.constant_value() == _semistandard_character(lam, vals)


def test_character_negative_entries_by_central_translation():
    vals = [Fraction(2), Fraction(3)]
    s = SatakeData.numeric(vals)
    assert character_value(s, (0, -1)).constant_value() == Fraction(1, 2) + Fraction(1, 3)
    with pytest.raises(DomainError):
        character_value(s, (0, 1))


def test_shintani_value_vanishes_off_dominant_cone():
    s = SatakeData.symbolic("a", 3, True)
    assert shintani_value(s, (0, 1, 0)) == ZERO
    assert shintani_value(s, (0, 0, 0)) == ONE
    a1 = var("a1")
    s2 = SatakeData.symbolic("a", 2, True)
    assert shintani_value(s2, (1, 0)) == V ** -1 * (a1 + ONE / a1)
    assert shifted_shintani_value(s2, 1, (0, 0)) == shintani_value(s2, (1, 0))
    assert "a2" not in shintani_value(s2, (2, 0)).variable_names()


def test_dominant_vectors():
    assert list(dominant_vectors(2, 2)) == [(0, 0), (1, 0), (2, 0), (1, 1)]


@pytest.mark.parametrize("m", [2, 3, 4])
def test_zeta_gl_m_by_gl_m_minus_1(m):
    big, small = SatakeData.symbolic("x", m), SatakeData.symbolic("y", m - 1)
    assert zeta_series_gl_m_m1(big, small, 6).equals(rs_lfactor(big, small).series(6))


@pytest.mark.parametrize("m", [2, 3])
def test_zeta_gl_m_by_gl_m(m):
    pi, pi2 = SatakeData.symbolic("x", m), SatakeData.symbolic("y", m)
    assert zeta_series_gl_m_m(pi, pi2, 6).equals(rs_lfactor(pi, pi2).series(6))


def test_zeta_order_zero_is_constant_term():
    pi, pi2 = SatakeData.symbolic("x", 2), SatakeData.symbolic("y", 1)
    s = zeta_series_gl_m_m1(pi, pi2, 0)
    assert s[(0,)] == ONE


def test_zeta_detects_wrong_measure():
    # dropping the modulus weight breaks the identity: negative control
    big, small = SatakeData.symbolic("x", 3), SatakeData.symbolic("y", 2)
    coeffs = {}
    for nu in dominant_vectors(2, 2):
        w = sum(nu)
        term = shintani_value(big, nu + (0,)) * shintani_value(small, nu) * V ** w
        coeffs[(w,)] = coeffs.get((w,), ZERO) + term
    L = rs_lfactor(big, small).series(2)
    assert coeffs[(2,)] != L[(2,)]


@pytest.mark.parametrize("m", [2, 3, 4])
def test_whittaker_recursion(m):
    pi = SatakeData.symbolic("u", m, True)
    assert all(whittaker_recursion_check(pi, nu) for nu in dominant_vectors(m - 1, 4))


def test_whittaker_recursion_domain():
    pi = SatakeData.symbolic("u", 3, True)
    with pytest.raises(DomainError):
        whittaker_recursion_sides(pi, (0, 1))
    with pytest.raises(DomainError):
        whittaker_recursion_sides(pi, (1, 0, 0))


@FAST
@given(st.lists(nonzero, min_size=2, max_size=2, unique=True), st.integers(0, 3), st.integers(0, 3))
def test_whittaker_recursion_numeric(vals, n1, n2):
    last = 1 / (vals[0] * vals[1])
    assume(last not in vals)
    pi = SatakeData.numeric(vals + [1], unit_product=True)
    nu = (max(n1, n2), min(n1, n2))
    lhs, rhs = whittaker_recursion_sides(pi, nu)
    assert lhs == rhs


# --- documented examples and invariants ------------------------------------


def test_rs_lfactor_examples():
    a, b = var("a"), var("b")
    roots = rs_lfactor(SatakeData((a,)), SatakeData((b,))).inverse_roots
    assert len(roots) == 1 and roots[0] == a * b
    pi, pi2 = SatakeData((a, ONE / a)), SatakeData((b, ONE / b))
    got = rs_lfactor(pi, pi2).inverse_roots
    want = [a * b, a / b, b / a, ONE / (a * b)]
    assert len(got) == 4 and all(any(g == w for g in got) for w in want)
    assert rs_lfactor(pi, pi2).series(3)[(0,)] == ONE


def test_zeta_local_examples():
    assert zeta_local(2) == ONE / (1 - V ** -4)
    ratio = zeta_local(1) / zeta_local(3)
    # (1 - q^-3)/(1 - q^-1) = 1 + q^-1 + q^-2, which is 7/4 at q = 2
    assert ratio == 1 + V ** -2 + V ** -4
    q = Fraction(2)
    assert 1 + 1 / q + 1 / q ** 2 == Fraction(7, 4)


def test_hecke_eigenvalue_examples():
    s = SatakeData.symbolic("a", 2)
    assert hecke_eigenvalue_fundamental(s, 0) == ONE
    assert hecke_eigenvalue_fundamental(s, 1) == var("a1") + var("a2")
    assert hecke_eigenvalue_fundamental(SatakeData.symbolic("a", 3, True), 3) == ONE


def test_modulus_character_trivial_cases():
    assert modulus_char_sqrt(4, (0, 0, 0, 0)) == ONE
    assert modulus_char_sqrt(3, (1, 1, 1)) == ONE


def test_shifted_shintani_examples():
    s = SatakeData.symbolic("a", 2, True)
    assert shifted_shintani_value(s, 0, (2, 1)) == shintani_value(s, (2, 1))
    assert shifted_shintani_value(s, 1, (0, 1)) == ONE


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_central_character_invariance(m):
    pi = SatakeData.symbolic("u", m, True)
    for nu in dominant_vectors(m, 5):
        base = shintani_value(pi, nu)
        for c in (-2, -1, 1, 2):
            assert shintani_value(pi, tuple(n + c for n in nu)) == base


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=4))
def test_shintani_vanishes_on_non_dominant(nu):
    pi = SatakeData.symbolic("u", len(nu), True)
    value = shintani_value(pi, nu)
    if any(nu[i] < nu[i + 1] for i in range(len(nu) - 1)):
        assert value.is_zero()
    else:
        assert not value.is_zero()


def test_zeta_m2_first_coefficient():
    big, small = SatakeData.symbolic("x", 2), SatakeData.symbolic("y", 1)
    s = zeta_series_gl_m_m1(big, small, 3)
    assert s[(1,)] == (var("x1") + var("x2")) * var("y1")


def test_zeta_gl3_with_inverse_parameters():
    pi = SatakeData.symbolic("x", 3)
    dual = SatakeData(tuple(ONE / v for v in pi.values))
    assert zeta_series_gl_m_m(pi, dual, 3).equals(rs_lfactor(pi, dual).series(3))


@pytest.mark.parametrize("j", range(5))
def test_recursion_rank2_telescoping(j):
    mu = var("mu")
    pi = SatakeData((mu, ONE / mu))
    lhs, rhs = whittaker_recursion_sides(pi, (j,))
    closed = V ** (-j) * (mu ** (j + 1) - mu ** (-(j + 1))) / (mu - ONE / mu)
    assert lhs == rhs == closed


def test_recursion_examples_and_degenerate_parameters():
    pi = SatakeData.symbolic("u", 3, True)
    assert whittaker_recursion_sides(pi, (0, 0)) == (ONE, ONE) or all(
        side == ONE for side in whittaker_recursion_sides(pi, (0, 0))
    )
    assert whittaker_recursion_check(pi, (2, 1))
    with pytest.raises(DegenerateInputError):
        whittaker_recursion_sides(SatakeData.numeric([2, 2, Fraction(1, 4)]), (1, 0))
