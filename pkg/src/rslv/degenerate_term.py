"""Unramified degenerate-term identity and the level volume identity.

Symbols: ``a`` are the parameters of the first representation (free), ``b``
the conjugated parameters of the second (unit product imposed), and U, W
independent expansion variables standing for the two q-power monomials that
carry the Rankin-Selberg and the standard L-factor.  The parameters of the
second representation itself are then ``1/b``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ConsistencyError, DegenerateInputError, DomainError
from .satake_whittaker import SatakeData, zeta_local
from .symfunc import (
    ONE,
    ZERO,
    FormalSeries,
    RationalFunction,
    elementary_values,
    rf_prod,
    series_from_rational,
)
from .symfunc.symmetric import complete_homogeneous

# Sign relating the inner Vandermonde sum to the complete homogeneous value,
# fixed by ``resolve_hsum_sign`` at n = 2, 3 and frozen here.
HSUM_SIGN = 1


@dataclass(frozen=True, eq=False)
class DegenerateContext:
    n: int
    a: SatakeData
    b: SatakeData
    U: RationalFunction
    W: RationalFunction

    def __post_init__(self) -> None:
        if self.n < 1 or self.a.rank != self.n or self.b.rank != self.n:
            raise DomainError("need two rank-n parameter sets")

    @classmethod
    def symbolic(cls, n: int, unit_product: bool = True) -> "DegenerateContext":
        return cls(
            n,
            SatakeData.symbolic("a", n),
            SatakeData.symbolic("b", n, unit_product),
            RationalFunction.var("U"),
            RationalFunction.var("W"),
        )

    @classmethod
    def numeric(cls, n: int, seed: int, unit_product: bool = True) -> "DegenerateContext":
        """Random distinct rationals for a, b and symbolic U, W."""
        rng = random.Random(seed)
        used: set[Fraction] = set()

        def fresh() -> Fraction:
            while True:
                v = Fraction(rng.randint(1, 97), rng.randint(1, 97)) * rng.choice((1, -1))
                if v not in used:
                    used.add(v)
                    return v

        a = [fresh() for _ in range(n)]
        while True:
            b = [fresh() for _ in range(n)]
            bd = SatakeData.numeric(b, unit_product)
            vals = [v.constant_value() for v in bd.values]
            if len(set(vals)) == n:
                break
        return cls(n, SatakeData.numeric(a), bd, RationalFunction.var("U"), RationalFunction.var("W"))

    def swapped(self) -> "DegenerateContext":
        """Exchange the roles of the two parameter sets (unit product moves to ``a``)."""
        return DegenerateContext(
            self.n,
            SatakeData(self.b.params, False),
            SatakeData(self.a.params, self.b.unit_product),
            self.U,
            self.W,
        )


def _vandermonde_coefficients(vals: Sequence[RationalFunction]) -> list[RationalFunction]:
    """1 / prod_{i != j}(v_i - v_j) for each j; rejects coincident values."""
    out = []
    for j, vj in enumerate(vals):
        den = rf_prod(vi - vj for i, vi in enumerate(vals) if i != j)
        if den.is_zero():
            raise DegenerateInputError(f"parameter {j + 1} coincides with another")
        out.append(ONE / den)
    return out


def hsum_value(b: SatakeData, k: int, m: int) -> RationalFunction:
    """sum_j b_j^(k-1-m) / prod_{i != j}(b_i - b_j), as computed."""
    n = b.rank
    if not 0 <= k <= n or m < 1:
        raise DomainError(f"need 0 <= k <= {n} and m >= 1")
    vals = b.values
    vdm = _vandermonde_coefficients(vals)
    total = ZERO
    for bj, cj in zip(vals, vdm):
        total = total + bj ** (k - 1 - m) * cj
    return total


def hsum_expected(b: SatakeData, k: int, m: int) -> RationalFunction:
    """0 for m < k, else h_{m-k} at the inverted parameters (the second representation's)."""
    if m < k:
        return ZERO
    names = tuple(f"_h{i}" for i in range(1, b.rank + 1))
    h = RationalFunction.from_poly(complete_homogeneous(m - k, names))
    return HSUM_SIGN * h.subs(dict(zip(names, (ONE / v for v in b.values))))


def hsum_identity(b: SatakeData, k: int, m: int) -> RationalFunction:
    """The inner sum, checked to be a Laurent polynomial and returned in that form."""
    s = hsum_value(b, k, m)
    try:
        return s.to_laurent_polynomial()
    except ArithmeticError as exc:
        raise ConsistencyError(f"inner sum for k={k}, m={m} is not a polynomial") from exc


def resolve_hsum_sign(ns: Sequence[int] = (2, 3), max_m: int = 4) -> int:
    """Brute-force the constant c with hsum = c * h_{m-k}(1/b) over a grid; 0 if none exists."""
    signs = set()
    for n in ns:
        b = SatakeData.symbolic("b", n, True)
        names = tuple(f"_h{i}" for i in range(1, n + 1))
        inv = dict(zip(names, (ONE / v for v in b.values)))
        for k in range(n + 1):
            for m in range(k, max_m + 1):
                if m < 1:
                    continue
                s = hsum_value(b, k, m)
                h = RationalFunction.from_poly(complete_homogeneous(m - k, names)).subs(inv)
                if s == h:
                    signs.add(1)
                elif s == -h:
                    signs.add(-1)
                else:
                    return 0
    return signs.pop() if len(signs) == 1 else 0


def rs_product(ctx: DegenerateContext) -> RationalFunction:
    """A = prod_{i,l} (1 - a_i b_l U)^(-1)."""
    return rf_prod(ONE / (1 - ai * bl * ctx.U) for ai in ctx.a.values for bl in ctx.b.values)


def degenerate_B1(ctx: DegenerateContext, j: int) -> RationalFunction:
    """A * prod_i (1 - a_i b_j U), j 1-based; cross-checked against the e_k expansion."""
    if not 1 <= j <= ctx.n:
        raise DomainError(f"index {j} outside 1..{ctx.n}")
    A = rs_product(ctx)
    bj = ctx.b.values[j - 1]
    direct = A * rf_prod(1 - ai * bj * ctx.U for ai in ctx.a.values)
    e = elementary_values(ctx.a.values)
    alt = ZERO
    for k, ek in enumerate(e):
        alt = alt + (-1) ** k * ek * (bj * ctx.U) ** k
    if not direct == A * alt:
        raise ConsistencyError(f"B1 forms disagree at j={j}")
    return direct


def degenerate_B2(ctx: DegenerateContext, j: int) -> RationalFunction:
    """Geometric closed form (W/b_j) / (1 - W/b_j), j 1-based."""
    if not 1 <= j <= ctx.n:
        raise DomainError(f"index {j} outside 1..{ctx.n}")
    r = ctx.W / ctx.b.values[j - 1]
    return r / (1 - r)


def degenerate_closed_form(ctx: DegenerateContext) -> RationalFunction:
    """C = A * prod_j (1 - W/b_j)^(-1) * prod_i (1 - a_i U W)."""
    A = rs_product(ctx)
    num = rf_prod(1 - ai * ctx.U * ctx.W for ai in ctx.a.values)
    den = rf_prod(1 - ctx.W / bj for bj in ctx.b.values)
    return A * num / den


def degenerate_B(ctx: DegenerateContext) -> RationalFunction:
    vals = ctx.b.values
    vdm = _vandermonde_coefficients(vals)
    total = ZERO
    for j, (bj, cj) in enumerate(zip(vals, vdm), start=1):
        total = total + cj / bj * degenerate_B1(ctx, j) * degenerate_B2(ctx, j)
    return total


@dataclass
class DegenerateReport:
    identity_holds: bool
    b_equals_c_minus_a: bool
    counterexample: tuple[int, int] | None = None

    @property
    def ok(self) -> bool:
        return self.identity_holds and self.b_equals_c_minus_a


def degenerate_assemble_and_verify(ctx: DegenerateContext, series_order: int = 2) -> DegenerateReport:
    """Check A + B = C exactly; on failure locate the first differing (U, W) coefficient."""
    A = rs_product(ctx)
    B = degenerate_B(ctx)
    C = degenerate_closed_form(ctx)
    holds = (A + B) == C
    bca = B == (C - A)
    cex = None
    if not holds:
        diff = series_from_rational(A + B - C, ("U", "W"), series_order)
        keys = sorted(diff.coeffs, key=lambda k: (sum(k), k))
        cex = keys[0] if keys else None
    return DegenerateReport(holds, bca, cex)


def _factor_series(r: RationalFunction, order: tuple[int, int]) -> FormalSeries:
    return series_from_rational(r, ("U", "W"), order)


def series_cross_check(ctx: DegenerateContext, order: tuple[int, int] = (4, 4)) -> list[tuple[int, int]]:
    """Compare C's (U, W) expansion with the term-by-term double sum; returns mismatching keys.

    Both sides are built from single-factor expansions so no large
    denominator is ever expanded.
    """
    U, W = ctx.U, ctx.W
    one = FormalSeries(("U", "W"), order, {(0, 0): ONE})
    a_series = one
    for ai in ctx.a.values:
        for bl in ctx.b.values:
            a_series = a_series * _factor_series(ONE / (1 - ai * bl * U), order)
    c_series = a_series
    for bj in ctx.b.values:
        c_series = c_series * _factor_series(ONE / (1 - W / bj), order)
    c_series = c_series * _factor_series(rf_prod(1 - ai * U * W for ai in ctx.a.values), order)

    vals = ctx.b.values
    vdm = _vandermonde_coefficients(vals)
    direct = a_series
    for bj, cj in zip(vals, vdm):
        b1 = a_series * _factor_series(rf_prod(1 - ai * bj * U for ai in ctx.a.values), order)
        b2 = FormalSeries(("U", "W"), order, {(0, m): bj ** (-m) for m in range(1, order[1] + 1)})
        direct = direct + (b1 * b2).scale(cj / bj)
    return direct.mismatches(c_series)


def level_index_formula(n: int, q: int, e: int) -> int:
    """[GL_{n+1}(o) : K_0(p^e)] = q^(n(e-1)) (q^(n+1) - 1) / (q - 1)."""
    if n < 1 or e < 1 or q < 2:
        raise DomainError("need n >= 1, e >= 1, q >= 2")
    return q ** (n * (e - 1)) * (q ** (n + 1) - 1) // (q - 1)


@dataclass
class LevelVolumeReport:
    n: int
    q: int
    e: int
    formula_index: int
    identity_holds: bool
    enumerated_index: int | None

    @property
    def ok(self) -> bool:
        return self.identity_holds and (
            self.enumerated_index is None or self.enumerated_index == self.formula_index
        )


def level_volume_identity(
    n: int, q: int, e: int, enumerate_index: bool = True, budget: int | None = None
) -> LevelVolumeReport:
    """q^(-en) / vol(K_0(p^e)) = zeta(1)/zeta(n+1), with vol = 1/index.

    Checked exactly at the numeric q and, independently of q, as an identity
    of rational functions in V with q = V^2.
    """
    index = level_index_formula(n, q, e)
    qf = Fraction(q)
    lhs = qf ** (-e * n) * index
    rhs = (1 - qf ** (-n - 1)) / (1 - 1 / qf)
    v = RationalFunction.var("V")
    sym_index = v ** (2 * n * (e - 1)) * (v ** (2 * n + 2) - 1) / (v ** 2 - 1)
    sym_ok = v ** (-2 * e * n) * sym_index == zeta_local(1) / zeta_local(n + 1)
    enumerated = None
    if enumerate_index:
        from .cosets.audits import congruence_index

        enumerated = congruence_index(n, q, e, budget)
    return LevelVolumeReport(n, q, e, index, lhs == rhs and sym_ok, enumerated)
