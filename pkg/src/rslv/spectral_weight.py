"""Level-prime newvector spectral weight as a trace, its closed form, and two residue evaluations.

Matrices are stored 0-based.  Row/column ``i`` here is index ``i + 1`` of the
1-based convention in which entry (i, j) pairs W^(n+1-i) with W^(n+1-j);
so F[i][j] carries T1^(n-i) T2^(n-j) e_{n-i}(a) e_{n-j}(b).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateInputError, DomainError
from .satake_whittaker import V as V_SYMBOL, SatakeData
from .symfunc import ONE, ZERO, RationalFunction, as_rf, elementary_values, lagrange_reconstruct, rf_prod

WeightMatrix = list  # (n+1) x (n+1) list of lists of RationalFunction


@dataclass(frozen=True, eq=False)
class ResidueContext:
    """Parameters a (rank n), b (rank n), x (rank n+1) and the scalars T1, T2, V with q = V^2."""

    n: int
    a: SatakeData
    b: SatakeData
    x: SatakeData
    T1: RationalFunction
    T2: RationalFunction
    V: RationalFunction

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError("n must be at least 1")
        if self.a.rank != self.n or self.b.rank != self.n or self.x.rank != self.n + 1:
            raise DomainError("ranks must be n, n and n+1")

    @property
    def Q(self) -> RationalFunction:
        return self.V ** 2

    @classmethod
    def symbolic(cls, n: int, unit_product: bool = False) -> "ResidueContext":
        return cls(
            n,
            SatakeData.symbolic("a", n, unit_product),
            SatakeData.symbolic("b", n, unit_product),
            SatakeData.symbolic("x", n + 1),
            RationalFunction.var("T1"),
            RationalFunction.var("T2"),
            V_SYMBOL,
        )

    @classmethod
    def numeric(cls, n: int, seed: int, unit_product: bool = False) -> "ResidueContext":
        """All parameters distinct random rationals drawn from ``random.Random(seed)``."""
        rng = random.Random(seed)
        used: set[Fraction] = set()

        def fresh() -> Fraction:
            while True:
                v = Fraction(rng.randint(1, 97), rng.randint(1, 97)) * rng.choice((1, -1))
                if v not in used and v not in (1, -1):
                    used.add(v)
                    return v

        a = [fresh() for _ in range(n)]
        b = [fresh() for _ in range(n)]
        x = [fresh() for _ in range(n + 1)]
        t1, t2, v = fresh(), fresh(), fresh()
        return cls(
            n,
            SatakeData.numeric(a, unit_product),
            SatakeData.numeric(b, unit_product),
            SatakeData.numeric(x),
            RationalFunction(t1),
            RationalFunction(t2),
            RationalFunction(v),
        )

    def zeta(self, k: int) -> RationalFunction:
        return ONE / (1 - self.V ** (-2 * k))


def _check_distinct(xs: Sequence[RationalFunction]) -> None:
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            if (xs[i] - xs[j]).is_zero():
                raise DegenerateInputError(f"x-parameters {i + 1} and {j + 1} coincide")


def _weights(ctx: ResidueContext, xs: Sequence[RationalFunction]) -> list[RationalFunction]:
    """w_k = 1 / [prod_{alpha != k}(x_k - x_alpha) * prod_beta (1 - x_k / (q x_beta))]."""
    qinv = ONE / ctx.Q
    out = []
    for k, xk in enumerate(xs):
        den = rf_prod(xk - xa for a, xa in enumerate(xs) if a != k)
        den = den * rf_prod(1 - qinv * xk / xb for xb in xs)
        if den.is_zero():
            raise DegenerateInputError(f"weight {k + 1} has a vanishing denominator")
        out.append(ONE / den)
    return out


def build_F(ctx: ResidueContext) -> WeightMatrix:
    n = ctx.n
    ea = elementary_values(ctx.a.values)
    eb = elementary_values(ctx.b.values)
    rows = [ctx.T1 ** (n - i) * ea[n - i] for i in range(n + 1)]
    cols = [ctx.T2 ** (n - j) * eb[n - j] for j in range(n + 1)]
    return [[r * c for c in cols] for r in rows]


def build_Ginv_T(ctx: ResidueContext) -> WeightMatrix:
    """Entry (i, j): zeta(n+1)^(-1) q^(n-j) sum_k (-x_k)^(n+j-i) w_k."""
    n = ctx.n
    xs = ctx.x.values
    _check_distinct(xs)
    w = _weights(ctx, xs)
    scale = ONE / ctx.zeta(n + 1)
    out = []
    for i in range(n + 1):
        row = []
        for j in range(n + 1):
            s = ZERO
            for xk, wk in zip(xs, w):
                s = s + (-xk) ** (n + j - i) * wk
            row.append(scale * ctx.Q ** (n - j) * s)
        out.append(row)
    return out


def spectral_weight_trace(ctx: ResidueContext) -> RationalFunction:
    """tr(F^T G^-T) = sum over (i, j) of F[i][j] * G^-T[i][j]."""
    F = build_F(ctx)
    G = build_Ginv_T(ctx)
    total = ZERO
    for fr, gr in zip(F, G):
        for f, g in zip(fr, gr):
            if f:
                total = total + f * g
    return total


def closed_form_terms(ctx: ResidueContext, xs: Sequence | None = None) -> list[RationalFunction]:
    """The n+1 summands of the closed form, optionally at substituted x-values."""
    n = ctx.n
    xs = ctx.x.values if xs is None else tuple(as_rf(v) for v in xs)
    if len(xs) != n + 1:
        raise DomainError("need n+1 x-values")
    _check_distinct(xs)
    w = _weights(ctx, xs)
    scale = (-1) ** n / ctx.zeta(n + 1)
    qt2 = ctx.Q * ctx.T2
    out = []
    for xk, wk in zip(xs, w):
        num = rf_prod(1 - xk * ctx.T1 * a for a in ctx.a.values)
        num = num * rf_prod(xk - qt2 * b for b in ctx.b.values)
        out.append(scale * num * wk)
    return out


def spectral_weight_closed(ctx: ResidueContext, xs: Sequence | None = None) -> RationalFunction:
    total = ZERO
    for t in closed_form_terms(ctx, xs):
        total = total + t
    return total


def residue_points_1(ctx: ResidueContext) -> list[RationalFunction]:
    """x_beta = 1/(q T1 a_beta) for beta <= n and x_{n+1} = (T1 q)^n."""
    n, Q, T1 = ctx.n, ctx.Q, ctx.T1
    return [ONE / (Q * T1 * a) for a in ctx.a.values] + [(T1 * Q) ** n]


def residue_points_2(ctx: ResidueContext) -> list[RationalFunction]:
    """x_delta = q T2 b_delta for delta <= n and x_{n+1} = (q T2)^(-n)."""
    n, Q, T2 = ctx.n, ctx.Q, ctx.T2
    return [Q * T2 * b for b in ctx.b.values] + [(Q * T2) ** (-n)]


def residue_eval_1(ctx: ResidueContext) -> RationalFunction:
    return spectral_weight_closed(ctx, residue_points_1(ctx))


def residue_eval_2(ctx: ResidueContext) -> RationalFunction:
    return spectral_weight_closed(ctx, residue_points_2(ctx))


def _ratio(ctx: ResidueContext) -> RationalFunction:
    return (-1) ** ctx.n * ctx.zeta(1) / ctx.zeta(ctx.n + 1)


def residue_target_1(ctx: ResidueContext) -> RationalFunction:
    xs = residue_points_1(ctx)
    top = xs[-1]
    num = rf_prod(1 - ctx.T2 * b / top for b in ctx.b.values)
    den = rf_prod(1 - xb / (ctx.Q * top) for xb in xs[:-1])
    return _ratio(ctx) * num / den


def residue_target_1_lform(ctx: ResidueContext) -> RationalFunction:
    """Quotient of two L-type products with inverse roots written in a, b, T1, T2, q."""
    n, Q, T1, T2 = ctx.n, ctx.Q, ctx.T1, ctx.T2
    num_roots = [b * T2 * T1 ** (-n) * Q ** (-n) for b in ctx.b.values]
    den_roots = [T1 ** (-n - 1) * Q ** (-n - 2) / a for a in ctx.a.values]
    return _ratio(ctx) * rf_prod(1 - r for r in num_roots) / rf_prod(1 - r for r in den_roots)


def residue_target_2(ctx: ResidueContext) -> RationalFunction:
    n, Q, T1, T2 = ctx.n, ctx.Q, ctx.T1, ctx.T2
    xs = residue_points_2(ctx)
    num = rf_prod(1 - Q ** (-n) * T2 ** (-n) * T1 * a for a in ctx.a.values)
    den = rf_prod(1 - Q ** (-n - 1) * T2 ** (-n) / xb for xb in xs[:-1])
    return _ratio(ctx) * num / den


def lagrange_step_sides(ctx: ResidueContext) -> tuple[RationalFunction, RationalFunction]:
    """Interpolate f(X) = prod_delta (X - q T2 b_delta) at the x-nodes and evaluate at q x_{n+1}."""
    qt2 = ctx.Q * ctx.T2

    def f(z: RationalFunction) -> RationalFunction:
        return rf_prod(z - qt2 * b for b in ctx.b.values)

    xs = ctx.x.values
    target = ctx.Q * xs[-1]
    return lagrange_reconstruct([(xk, f(xk)) for xk in xs], target), f(target)
