from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest

from rslv.errors import DegenerateInputError, DomainError
from rslv.spectral_weight import (
    ResidueContext,
    build_F,
    build_Ginv_T,
    closed_form_terms,
    lagrange_step_sides,
    residue_eval_1,
    residue_eval_2,
    residue_points_2,
    residue_target_1,
    residue_target_1_lform,
    residue_target_2,
    spectral_weight_closed,
    spectral_weight_trace,
)
from rslv.symfunc import RationalFunction


def _prod(it):
    out = Fraction(1)
    for v in it:
        out *= v
    return out


def _e(k, vals):
    return sum((_prod(c) for c in combinations(vals, k)), Fraction(0))


class PlainOracle:
    """Spectral-weight formulas in bare Fraction arithmetic, independent of the library."""

    def __init__(self, ctx: ResidueContext):
        c = lambda r: r.constant_value()  # noqa: E731
        self.n = ctx.n
        self.a = [c(v) for v in ctx.a.values]
        self.b = [c(v) for v in ctx.b.values]
        self.x = [c(v) for v in ctx.x.values]
        self.t1, self.t2, self.q = c(ctx.T1), c(ctx.T2), c(ctx.V) ** 2

    def weights(self, xs):
        return [
            1 / (_prod(xk - xa for a, xa in enumerate(xs) if a != k) * _prod(1 - xk / (self.q * xb) for xb in xs))
            for k, xk in enumerate(xs)
        ]

    def trace(self):
        n, q, xs = self.n, self.q, self.x
        w = self.weights(xs)
        zinv = 1 - q ** -(n + 1)
        total = Fraction(0)
        for i in range(n + 1):
            for j in range(n + 1):
                f = self.t1 ** (n - i) * self.t2 ** (n - j) * _e(n - i, self.a) * _e(n - j, self.b)
                g = zinv * q ** (n - j) * sum((-xk) ** (n + j - i) * wk for xk, wk in zip(xs, w))
                total += f * g
        return total

    def closed(self, xs=None):
        n, q = self.n, self.q
        xs = self.x if xs is None else xs
        w = self.weights(xs)
        zinv = 1 - q ** -(n + 1)
        return (-1) ** n * zinv * sum(
            _prod(1 - xk * self.t1 * a for a in self.a) * _prod(xk - q * self.t2 * b for b in self.b) * wk
            for xk, wk in zip(xs, w)
        )

    def residue1(self):
        n, q, t1 = self.n, self.q, self.t1
        xs = [1 / (q * t1 * a) for a in self.a] + [(t1 * q) ** n]
        return self.closed(xs)

    def target1(self):
        n, q, t1, t2 = self.n, self.q, self.t1, self.t2
        top = (t1 * q) ** n
        ratio = (-1) ** n * (1 - q ** -(n + 1)) / (1 - 1 / q)
        num = _prod(1 - t2 * b / top for b in self.b)
        den = _prod(1 - 1 / (q * t1 * a) / (q * top) for a in self.a)
        return ratio * num / den


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("n", [2, 3, 4])
def test_numeric_against_plain_oracle(n, seed):
    ctx = ResidueContext.numeric(n, seed)
    oracle = PlainOracle(ctx)
    assert spectral_weight_trace(ctx).constant_value() == oracle.trace()
    assert spectral_weight_closed(ctx).constant_value() == oracle.closed()
    assert oracle.trace() == oracle.closed()
    assert residue_eval_1(ctx).constant_value() == oracle.residue1() == oracle.target1()
    assert residue_target_1(ctx).constant_value() == oracle.target1()


@pytest.mark.parametrize("n", [2, 3])
def test_symbolic_chain(n):
    ctx = ResidueContext.symbolic(n)
    assert spectral_weight_trace(ctx) == spectral_weight_closed(ctx)
    t1 = residue_target_1(ctx)
    assert residue_eval_1(ctx) == t1
    assert t1 == residue_target_1_lform(ctx)
    assert residue_eval_2(ctx) == residue_target_2(ctx)
    lhs, rhs = lagrange_step_sides(ctx)
    assert lhs == rhs


def test_residue_is_free_of_x():
    ctx = ResidueContext.symbolic(2)
    names = residue_eval_1(ctx).variable_names() | residue_eval_2(ctx).variable_names()
    assert names <= {"T1", "T2", "V", "a1", "a2", "b1", "b2"}
    assert not any(v.startswith("x") for v in names)


def test_matrix_shapes_and_corner_entries():
    ctx = ResidueContext.symbolic(2)
    F, G = build_F(ctx), build_Ginv_T(ctx)
    assert len(F) == len(G) == 3 and all(len(r) == 3 for r in F + G)
    assert F[2][2] == RationalFunction(1)
    assert len(closed_form_terms(ctx)) == 3


def test_residue_substitution_kills_all_but_last_term():
    ctx = ResidueContext.numeric(3, 11)
    terms = closed_form_terms(ctx, residue_points_2(ctx))
    assert all(t.is_zero() for t in terms[:-1])
    assert not terms[-1].is_zero()


def test_wrong_sign_is_detected():
    # negative control: the target with the opposite sign must not match
    ctx = ResidueContext.numeric(2, 3)
    assert residue_eval_1(ctx) != -residue_target_1(ctx)


def test_preconditions():
    with pytest.raises(DomainError):
        ResidueContext.symbolic(0)
    ctx = ResidueContext.symbolic(2)
    with pytest.raises(DomainError):
        closed_form_terms(ctx, [1, 2])
    with pytest.raises(DegenerateInputError):
        closed_form_terms(ctx, [2, 2, 3])


# --- documented entries and special cases ---------------------------------


def test_F_entries_by_hand_n2():
    ctx = ResidueContext.symbolic(2)
    a1, a2 = ctx.a.values
    b1, b2 = ctx.b.values
    T1, T2 = ctx.T1, ctx.T2
    rows = [T1 ** 2 * a1 * a2, T1 * (a1 + a2), RationalFunction(1)]
    cols = [T2 ** 2 * b1 * b2, T2 * (b1 + b2), RationalFunction(1)]
    F = build_F(ctx)
    assert F[0][0] == T1 ** 2 * T2 ** 2 * a1 * a2 * b1 * b2
    for i in range(3):
        for j in range(3):
            assert F[i][j] == rows[i] * cols[j]


def test_Ginv_T_entries_n1():
    ctx = ResidueContext.symbolic(1)
    x1, x2 = ctx.x.values
    q = ctx.Q
    w1 = 1 / ((x1 - x2) * (1 - 1 / q) * (1 - x1 / (q * x2)))
    w2 = 1 / ((x2 - x1) * (1 - x2 / (q * x1)) * (1 - 1 / q))
    zinv = 1 - 1 / q ** 2
    G = build_Ginv_T(ctx)
    for i in range(2):
        for j in range(2):
            p = 1 + j - i
            want = zinv * q ** (1 - j) * ((-x1) ** p * w1 + (-x2) ** p * w2)
            assert G[i][j] == want
    # the (1, 0) entry is a plain weight sum times the normalization
    assert G[1][0] == zinv * q * (w1 + w2)


def test_closed_form_without_twists():
    ctx = ResidueContext.symbolic(2)
    reduced = spectral_weight_closed(ctx).subs({"T1": 0, "T2": 0})
    q = ctx.Q
    xs = ctx.x.values
    want = RationalFunction(0)
    for k, xk in enumerate(xs):
        w = RationalFunction(1)
        for a, xa in enumerate(xs):
            if a != k:
                w = w * (xk - xa)
        for xb in xs:
            w = w * (1 - xk / (q * xb))
        want = want + xk ** 2 / w
    assert reduced == (1 - 1 / q ** 3) * want


@pytest.mark.parametrize("seed", range(3))
def test_first_residue_with_unit_product(seed):
    ctx = ResidueContext.numeric(3, seed, unit_product=True)
    assert residue_eval_1(ctx) == residue_target_1(ctx) == residue_target_1_lform(ctx)
    assert residue_eval_2(ctx) == residue_target_2(ctx)


def test_residue_variable_sets_are_exact():
    ctx = ResidueContext.symbolic(2)
    expected = {"T1", "T2", "V", "a1", "a2", "b1", "b2"}
    assert residue_eval_1(ctx).variable_names() == expected
    assert residue_eval_2(ctx).variable_names() == expected
