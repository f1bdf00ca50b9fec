from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rslv.errors import ConsistencyError, DegenerateInputError, DomainError, NonExpandableError
from rslv.symfunc import (
    ONE,
    ZERO,
    FormalSeries,
    MultiPolynomial,
    Partition,
    RationalFunction,
    complete_homogeneous,
    determinant,
    elementary_symmetric,
    elementary_values,
    geometric_product,
    lagrange_reconstruct,
    partitions,
    rf_prod,
    rf_sum,
    schur,
    schur_jacobi_trudi,
    series_from_rational,
    symbols,
    var,
)

x, y, z = symbols("x y z")
NAMES3 = ("x", "y", "z")

small_fraction = st.fractions(min_value=-5, max_value=5, max_denominator=7)
nonzero_fraction = small_fraction.filter(lambda f: f != 0)
FAST = settings(max_examples=40, deadline=None)


def _eval(r: RationalFunction, vals: dict) -> Fraction:
    return r.evaluate(vals)


# --- MultiPolynomial -------------------------------------------------------


def test_polynomial_ring_basics():
    p = MultiPolynomial.variable("x") + MultiPolynomial.constant(1)
    assert (p * p) == MultiPolynomial.variable("x") ** 2 + MultiPolynomial.variable("x").scale(2) + 1
    assert (p - p).is_zero()
    assert (p ** 3).degree() == 3
    assert MultiPolynomial.constant(5).is_constant()


def test_exact_divide_round_trip_and_failure():
    a = MultiPolynomial.variable("x") - MultiPolynomial.variable("y")
    b = MultiPolynomial.variable("x") ** 2 + MultiPolynomial.variable("y")
    assert (a * b).exact_divide(a) == b
    with pytest.raises(ArithmeticError):
        b.exact_divide(a)


# --- RationalFunction ------------------------------------------------------


def test_rational_function_arithmetic():
    r = (x ** 2 - y ** 2) / (x - y)
    assert r == x + y
    assert r.is_laurent_polynomial()
    assert (ONE / x) * x == ONE
    assert x ** -2 == ONE / (x * x)
    assert (x + y) - (x + y) == ZERO
    assert not (ONE / (1 - x)).is_laurent_polynomial()


def test_rational_function_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_rf_sum_and_prod():
    assert rf_sum([x, y, 1]) == x + y + 1
    assert rf_prod([x, y, 2]) == 2 * x * y
    assert rf_prod([]) == ONE
    assert rf_sum([]) == ZERO


def test_subs_and_evaluate_agree():
    r = (x + 2 * y) / (1 - x * z)
    vals = {"x": Fraction(1, 3), "y": Fraction(-2), "z": Fraction(5, 7)}
    assert r.subs(vals).constant_value() == _eval(r, vals)
    assert r.subs({"x": y}) == (3 * y) / (1 - y * z)


def test_canonical_string_is_representation_independent():
    a = (x ** 2 - 1) / (x - 1)
    b = x + 1
    assert a == b
    assert a.to_laurent_polynomial().canonical_str() == b.canonical_str()


@FAST
@given(nonzero_fraction, nonzero_fraction, small_fraction)
def test_rf_field_axioms_at_points(a, b, c):
    r = (x + a) / (y - b) + c * x * y
    s = (x * y - 1) / (x + 2)
    # evaluation point away from the poles y = b and x = -2
    vals = {"x": Fraction(7, 3), "y": b + 1}
    assert _eval(r * s, vals) == _eval(r, vals) * _eval(s, vals)
    assert _eval(r + s, vals) == _eval(r, vals) + _eval(s, vals)
    assert (r * s) / s == r
    assert r - r == ZERO


@FAST
@given(st.lists(nonzero_fraction, min_size=1, max_size=3))
def test_inverse_is_inverse(cs):
    r = rf_sum(c * v for c, v in zip(cs, (x, y, z))) + 1
    if r.is_zero():
        return
    assert r * r.inverse() == ONE


# --- series ----------------------------------------------------------------


def test_geometric_series_matches_direct():
    s = series_from_rational(ONE / (1 - 2 * x), ("x",), 5)
    assert [s[(k,)] for k in range(6)] == [as_const(2 ** k) for k in range(6)]


def as_const(v) -> RationalFunction:
    return RationalFunction(Fraction(v))


def test_series_non_expandable():
    with pytest.raises(NonExpandableError):
        series_from_rational(ONE / x, ("x",), 3)


@FAST
@given(st.lists(nonzero_fraction, min_size=1, max_size=3), st.integers(0, 5))
def test_geometric_product_equals_rational_expansion(roots, order):
    direct = geometric_product(roots, "X", order)
    X = var("X")
    via = series_from_rational(rf_prod(ONE / (1 - r * X) for r in roots), ("X",), order)
    assert direct.equals(via)


@FAST
@given(st.integers(0, 4), st.integers(0, 4))
def test_bivariate_series_product(i, j):
    order = (4, 4)
    a = series_from_rational(ONE / (1 - x), ("x", "y"), order)
    b = series_from_rational(ONE / (1 - y), ("x", "y"), order)
    ab = a * b
    assert ab[(i, j)] == ONE
    assert ab.equals(series_from_rational(ONE / ((1 - x) * (1 - y)), ("x", "y"), order))


def test_series_mismatch_reports_keys():
    a = FormalSeries(("x",), 3, {(0,): ONE, (2,): ONE})
    b = FormalSeries(("x",), 3, {(0,): ONE})
    assert a.mismatches(b) == [(2,)]
    assert a != b


# --- symmetric functions ---------------------------------------------------


def _brute_e(k, vals):
    return sum((rf_prod(c) for c in combinations(vals, k)), ZERO)


def _brute_h(k, vals):
    return sum((rf_prod(c) for c in combinations_with_replacement(vals, k)), ZERO)


@pytest.mark.parametrize("k", range(4))
def test_elementary_and_complete_against_brute_force(k):
    e = RationalFunction.from_poly(elementary_symmetric(k, NAMES3))
    h = RationalFunction.from_poly(complete_homogeneous(k, NAMES3))
    assert e == _brute_e(k, [x, y, z])
    assert h == _brute_h(k, [x, y, z])
    assert elementary_values([x, y, z])[k] == e


@pytest.mark.parametrize("k", range(1, 5))
def test_newton_type_relation_e_h(k):
    # sum_i (-1)^i e_i h_{k-i} = 0 for k >= 1
    total = ZERO
    for i in range(0, min(k, 3) + 1):
        e = RationalFunction.from_poly(elementary_symmetric(i, NAMES3))
        h = RationalFunction.from_poly(complete_homogeneous(k - i, NAMES3))
        total = total + (-1) ** i * e * h
    assert total == ZERO


def test_partitions_enumeration():
    parts = [p.parts for p in partitions(4, 2)]
    assert parts == [(4, 0), (3, 1), (2, 2)]
    assert sum(1 for _ in partitions(5, 5)) == 7
    with pytest.raises(DomainError):
        Partition((1, 2))
    with pytest.raises(DomainError):
        Partition((2, -1))


@pytest.mark.parametrize("w", range(5))
def test_schur_bialternant_equals_jacobi_trudi(w):
    for p in partitions(w, 3):
        assert schur(p, NAMES3) == schur_jacobi_trudi(p, NAMES3)


def test_schur_special_cases():
    assert schur((2, 0, 0), NAMES3) == complete_homogeneous(2, NAMES3)
    assert schur((1, 1, 0), NAMES3) == elementary_symmetric(2, NAMES3)
    with pytest.raises(DomainError):
        schur((0, 1, 0), NAMES3)


@FAST
@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_pieri_rule(parts):
    # s_lambda * h_1 = sum of s_mu over mu = lambda plus one box
    lam = tuple(sorted((abs(p) for p in parts), reverse=True)) + (0,)
    lhs = schur(lam, NAMES3) * complete_homogeneous(1, NAMES3)
    rhs = MultiPolynomial()
    for i in range(3):
        mu = list(lam)
        mu[i] += 1
        if all(mu[j] >= mu[j + 1] for j in range(2)):
            rhs = rhs + schur(tuple(mu), NAMES3)
    assert lhs == rhs


def test_cauchy_identity_truncated():
    # prod_{i,j}(1 - x_i y_j)^(-1) = sum_lambda s_lambda(x) s_lambda(y), two variables each
    xs, ys = ("p1", "p2"), ("r1", "r2")
    T = var("T")
    px, py = symbols("p1 p2"), symbols("r1 r2")
    lhs = series_from_rational(rf_prod(ONE / (1 - a * b * T) for a in px for b in py), ("T",), 4)
    for w in range(5):
        rhs = ZERO
        for p in partitions(w, 2):
            rhs = rhs + RationalFunction.from_poly(schur(p, xs) * schur(p, ys))
        assert lhs[(w,)] == rhs


def test_determinant_generic():
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[x, y], [y, x]]) == x * x - y * y
    with pytest.raises(DomainError):
        determinant([[1, 2]])


def test_lagrange_reconstruct_exact_for_low_degree():
    pts = [(Fraction(k), Fraction(k) ** 2 - 3) for k in range(3)]
    assert lagrange_reconstruct(pts, 5).constant_value() == 22
    sym = [(v, v ** 2) for v in (x, y, z)]
    assert lagrange_reconstruct(sym, var("w")) == var("w") ** 2
    with pytest.raises(DegenerateInputError):
        lagrange_reconstruct([(1, 1), (1, 2)], 0)


def test_repeated_variables_rejected():
    with pytest.raises(DegenerateInputError):
        elementary_symmetric(1, ("x", "x"))


def test_consistency_error_is_arithmetic():
    assert issubclass(ConsistencyError, ArithmeticError)


def test_grid_evaluation_of_schur_matches_brute_semistandard_count():
    # s_lambda(1,1,1) counts semistandard tableaux: s_(2,1)(1,1,1) = 8
    val = RationalFunction.from_poly(schur((2, 1, 0), NAMES3)).evaluate({n: 1 for n in NAMES3})
    assert val == 8


# --- documented examples and invariants at full size -------------------------


def test_documented_symmetric_examples():
    x1, x2, x3 = symbols("x1 x2 x3")
    e = lambda k, vs: RationalFunction.from_poly(elementary_symmetric(k, vs))  # noqa: E731
    h = lambda k, vs: RationalFunction.from_poly(complete_homogeneous(k, vs))  # noqa: E731
    s = lambda p, vs: RationalFunction.from_poly(schur(p, vs))  # noqa: E731
    assert e(2, ("x1", "x2", "x3")) == x1 * x2 + x1 * x3 + x2 * x3
    assert e(0, ("x1", "x2")) == ONE
    assert e(3, ("x1", "x2", "x3")) == x1 * x2 * x3
    assert h(2, ("x1", "x2")) == x1 ** 2 + x1 * x2 + x2 ** 2
    assert h(0, ("x1",)) == ONE
    assert h(1, ("x1", "x2", "x3")) == x1 + x2 + x3
    assert s((0, 0), ("x1", "x2")) == ONE
    assert s((1, 0), ("x1", "x2")) == x1 + x2
    assert s((2, 0), ("x1", "x2")) == x1 ** 2 + x1 * x2 + x2 ** 2
    with pytest.raises(DomainError):
        elementary_symmetric(4, ("x1", "x2", "x3"))
    with pytest.raises(DomainError):
        complete_homogeneous(-1, ("x1",))


def test_documented_series_examples():
    X, a = var("X"), var("a")
    s = series_from_rational(ONE / (1 - X), ("X",), 3)
    assert [s[(k,)] for k in range(4)] == [ONE] * 4
    s = series_from_rational(ONE / (1 - a * X), ("X",), 2)
    assert [s[(k,)] for k in range(3)] == [ONE, a, a * a]
    s = series_from_rational(ONE / ((1 - X) * (1 - 2 * X)), ("X",), 2)
    assert [s[(k,)] for k in range(3)] == [ONE, as_const(3), as_const(7)]


def test_documented_lagrange_example():
    assert lagrange_reconstruct([(0, 1), (1, 1)], 5) == ONE


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_bialternant_equals_jacobi_trudi_up_to_weight_6(m):
    names = tuple(f"v{i}" for i in range(1, m + 1))
    for w in range(7):
        for p in partitions(w, m):
            assert schur(p, names) == schur_jacobi_trudi(p, names)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_one_row_schur_is_complete_homogeneous(m):
    names = tuple(f"v{i}" for i in range(1, m + 1))
    for k in range(7):
        assert schur((k,) + (0,) * (m - 1), names) == complete_homogeneous(k, names)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_cauchy_identity_order_6(m):
    xs = tuple(f"c{i}" for i in range(1, m + 1))
    ys = tuple(f"d{i}" for i in range(1, m + 1))
    T = var("T")
    lhs = series_from_rational(rf_prod(ONE / (1 - var(a) * var(b) * T) for a in xs for b in ys), ("T",), 6)
    for w in range(7):
        rhs = rf_sum(RationalFunction.from_poly(schur(p, xs) * schur(p, ys)) for p in partitions(w, m))
        assert lhs[(w,)] == rhs


polys = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), small_fraction), min_size=1, max_size=4)


def _poly(terms):
    return rf_sum(c * x ** i * y ** j for i, j, c in terms)


@settings(max_examples=100, deadline=None)
@given(polys, polys)
def test_quotient_times_reciprocal_is_one(p_terms, q_terms):
    p, q = _poly(p_terms), _poly(q_terms)
    if p.is_zero() or q.is_zero():
        return
    assert (p / q) * (q / p) == ONE


@settings(max_examples=50, deadline=None)
@given(polys, st.lists(small_fraction, min_size=1, max_size=3), st.integers(0, 5))
def test_series_round_trip(num_terms, den_coeffs, order):
    num = _poly(num_terms)
    den = 1 + rf_sum(c * x ** (k + 1) for k, c in enumerate(den_coeffs))
    s = series_from_rational(num / den, ("x",), order)
    back = s * series_from_rational(den, ("x",), order)
    assert back.equals(series_from_rational(num, ("x",), order))


@settings(max_examples=30, deadline=None)
@given(polys, polys, polys)
def test_polynomial_ring_laws_and_equality(a_terms, b_terms, c_terms):
    a, b, c = _poly(a_terms), _poly(b_terms), _poly(c_terms)
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    # equality of fractions is reflexive, symmetric and transitive on these triples
    if not b.is_zero():
        r1, r2, r3 = a / b, (a * 2) / (b * 2), (a * (x + 3)) / (b * (x + 3))
        assert r1 == r1 and (r1 == r2) == (r2 == r1)
        assert r1 == r2 and r2 == r3 and r1 == r3


def test_variable_registry_is_a_stable_bijection():
    from rslv.symfunc import REGISTRY

    i = REGISTRY.index("registry_probe")
    assert REGISTRY.index("registry_probe") == i
    assert REGISTRY.name(i) == "registry_probe"
    assert len(set(REGISTRY.names)) == len(REGISTRY)
    assert all(REGISTRY.index(REGISTRY.name(k)) == k for k in range(len(REGISTRY)))
