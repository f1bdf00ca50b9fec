"""Satake parameters, local L-factors, spherical Whittaker values and unramified zeta series.

Conventions: ``V`` stands for q^(1/2), so q = V**2 and every half-integral
power of q is an integral power of V.  A torus vector ``nu`` stands for
diag(p^nu_1, ..., p^nu_m).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import DegenerateInputError, DomainError
from .symfunc import (
    ONE,
    ZERO,
    FormalSeries,
    RationalFunction,
    as_rf,
    elementary_values,
    geometric_product,
    is_dominant,
    partitions,
    rf_prod,
    schur,
)

V_NAME = "V"
V = RationalFunction.var(V_NAME)
Q = V ** 2


@dataclass(frozen=True, eq=False)
class SatakeData:
    """Inverse roots of an unramified representation of GL(m).

    With ``unit_product`` set, the last parameter is replaced by the inverse
    of the product of the others wherever values are used.
    """

    params: tuple
    unit_product: bool = False

    def __post_init__(self) -> None:
        ps = tuple(as_rf(p) for p in self.params)
        if not ps:
            raise DomainError("rank must be at least 1")
        if any(p.is_zero() for p in ps):
            raise DomainError("Satake parameters must be nonzero")
        object.__setattr__(self, "params", ps)
        if not self.unit_product:
            vals = ps
        elif len(ps) == 1:
            vals = (ONE,)
        else:
            vals = ps[:-1] + (ONE / rf_prod(ps[:-1]),)
        object.__setattr__(self, "_values", vals)

    @classmethod
    def symbolic(cls, prefix: str, m: int, unit_product: bool = False) -> "SatakeData":
        """Fresh variables ``prefix1 .. prefixm``."""
        if m < 1:
            raise DomainError("rank must be at least 1")
        return cls(tuple(RationalFunction.var(f"{prefix}{i}") for i in range(1, m + 1)), unit_product)

    @classmethod
    def numeric(cls, values: Sequence, unit_product: bool = False) -> "SatakeData":
        return cls(tuple(RationalFunction(Fraction(v)) for v in values), unit_product)

    @property
    def rank(self) -> int:
        return len(self.params)

    @property
    def values(self) -> tuple[RationalFunction, ...]:
        """Parameters actually used, after imposing the unit product if requested."""
        return self._values

    def product(self) -> RationalFunction:
        return rf_prod(self._values)

    def drop(self, j: int) -> "SatakeData":
        """Rank m-1 data with the j-th (0-based) effective parameter removed."""
        vals = self._values
        return SatakeData(vals[:j] + vals[j + 1:], False)

    def check_regular(self) -> None:
        """Reject coincident parameters, where a Vandermonde factor vanishes."""
        vals = self._values
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                if (vals[i] - vals[j]).is_zero():
                    raise DegenerateInputError(f"Satake parameters {i + 1} and {j + 1} coincide")


@dataclass(frozen=True, eq=False)
class LFactorRoots:
    """L(s) = prod_r (1 - r X)^(-1), with ``s_shift`` naming the variable X."""

    inverse_roots: tuple
    s_shift: str = "X"

    def series(self, order: int) -> FormalSeries:
        return geometric_product(self.inverse_roots, self.s_shift, order)

    def value(self) -> RationalFunction:
        x = RationalFunction.var(self.s_shift)
        return rf_prod(ONE / (1 - r * x) for r in self.inverse_roots)


def rs_lfactor(pi1: SatakeData, pi2: SatakeData, s_shift: str = "X") -> LFactorRoots:
    """Rankin-Selberg factor: inverse roots a_i b_j."""
    return LFactorRoots(tuple(a * b for a in pi1.values for b in pi2.values), s_shift)


def standard_lfactor(pi: SatakeData, s_shift: str = "X") -> LFactorRoots:
    return LFactorRoots(tuple(pi.values), s_shift)


def zeta_local(k: int) -> RationalFunction:
    """(1 - q^(-k))^(-1) as a function of V."""
    if k < 1:
        raise DomainError(f"zeta_local needs k >= 1, got {k}")
    return ONE / (1 - V ** (-2 * k))


def hecke_eigenvalue_fundamental(pi: SatakeData, i: int) -> RationalFunction:
    """Eigenvalue of the i-th fundamental Hecke operator: e_i of the parameters."""
    if not 0 <= i <= pi.rank:
        raise DomainError(f"fundamental index {i} outside 0..{pi.rank}")
    return elementary_values(pi.values)[i]


def modulus_char_sqrt(m: int, nu: Sequence[int]) -> RationalFunction:
    """delta^(1/2)(diag(p^nu)) on GL(m): V^(-sum nu_i (m + 1 - 2i))."""
    if len(nu) != m:
        raise DomainError(f"torus vector of length {len(nu)} for GL({m})")
    return V ** (-sum(n * (m + 1 - 2 * i) for i, n in enumerate(nu, start=1)))


def _dummy(m: int) -> tuple[str, ...]:
    return tuple(f"_chi{i}" for i in range(1, m + 1))


@lru_cache(maxsize=None)
def _schur_rf(parts: tuple[int, ...]) -> RationalFunction:
    return RationalFunction.from_poly(schur(parts, _dummy(len(parts))))


def character_value(pi: SatakeData, nu: Sequence[int]) -> RationalFunction:
    """chi_nu at the parameters; negative entries handled by central translation."""
    nu = tuple(int(n) for n in nu)
    if len(nu) != pi.rank:
        raise DomainError(f"torus vector of length {len(nu)} for rank {pi.rank}")
    if not is_dominant(nu):
        raise DomainError(f"{nu} is not dominant")
    c = min(nu) if nu else 0
    base = tuple(n - c for n in nu)
    chi = _schur_rf(base)
    if not chi.is_constant():
        chi = chi.subs(dict(zip(_dummy(len(nu)), pi.values)))
    if c:
        chi = chi * pi.product() ** c
    return chi


def shintani_value(pi: SatakeData, nu: Sequence[int]) -> RationalFunction:
    """Spherical Whittaker value at diag(p^nu): delta^(1/2) chi_nu if dominant, else 0."""
    nu = tuple(int(n) for n in nu)
    if len(nu) != pi.rank:
        raise DomainError(f"torus vector of length {len(nu)} for rank {pi.rank}")
    if not is_dominant(nu):
        return ZERO
    return modulus_char_sqrt(pi.rank, nu) * character_value(pi, nu)


def shifted_shintani_value(pi: SatakeData, lam_valuation: int, nu: Sequence[int]) -> RationalFunction:
    """Value at nu + lam_valuation * (m-1, m-2, ..., 0)."""
    m = pi.rank
    return shintani_value(pi, tuple(n + lam_valuation * (m - 1 - i) for i, n in enumerate(nu)))


def dominant_vectors(length: int, max_weight: int) -> Iterator[tuple[int, ...]]:
    """Weakly decreasing nonnegative vectors of the given length, by weight."""
    for w in range(max_weight + 1):
        for p in partitions(w, length):
            yield p.parts


def zeta_series_gl_m_m1(big: SatakeData, small: SatakeData, order: int, x: str = "X") -> FormalSeries:
    """Torus-sum form of the GL(m) x GL(m-1) unramified zeta integral.

    The integral over the torus of GL(m-1) carries the Iwasawa weight
    delta_{m-1}^(-1) and |det|^s = (V X)^|nu| when X stands for q^(-1/2-s).
    """
    m = big.rank
    if small.rank != m - 1 or m < 2:
        raise DomainError("need ranks m and m-1 with m >= 2")
    if order < 0:
        raise DomainError("order must be nonnegative")
    coeffs: dict[tuple[int], RationalFunction] = {}
    for nu in dominant_vectors(m - 1, order):
        w = sum(nu)
        term = (
            shintani_value(big, nu + (0,))
            * shintani_value(small, nu)
            * modulus_char_sqrt(m - 1, nu) ** -2
            * V ** w
        )
        coeffs[(w,)] = coeffs[(w,)] + term if (w,) in coeffs else term
    return FormalSeries((x,), order, coeffs)


def zeta_series_gl_m_m(pi: SatakeData, pi2: SatakeData, order: int, x: str = "X") -> FormalSeries:
    """Torus-sum form of the GL(m) x GL(m) zeta integral with Phi = 1 on o^m.

    Phi(e_m t) restricts the sum to nu_m >= 0; X stands for q^(-s).
    """
    m = pi.rank
    if pi2.rank != m:
        raise DomainError("ranks must agree")
    if order < 0:
        raise DomainError("order must be nonnegative")
    coeffs: dict[tuple[int], RationalFunction] = {}
    for nu in dominant_vectors(m, order):
        w = sum(nu)
        term = shintani_value(pi, nu) * shintani_value(pi2, nu) * modulus_char_sqrt(m, nu) ** -2
        coeffs[(w,)] = coeffs[(w,)] + term if (w,) in coeffs else term
    return FormalSeries((x,), order, coeffs)


def whittaker_recursion_sides(pi: SatakeData, nu: Sequence[int]) -> tuple[RationalFunction, RationalFunction]:
    """Both sides of the restriction of W_pi to GL(m-1) as a sum over dropped parameters.

    Left: W_pi(diag(p^nu, 1)).  Right: |det p^nu|^(1/2) times
    sum_j mu_j^(-1) / prod_{i != j} (mu_i - mu_j) * W_{pi_j}(p^nu).
    """
    m = pi.rank
    nu = tuple(int(n) for n in nu)
    if m < 2 or len(nu) != m - 1:
        raise DomainError("need m >= 2 and a torus vector of length m - 1")
    if not is_dominant(nu) or nu[-1] < 0:
        raise DomainError(f"{nu} must be dominant with nonnegative last entry")
    pi.check_regular()
    mu = pi.values
    lhs = shintani_value(pi, nu + (0,))
    total = ZERO
    for j in range(m):
        vdm = rf_prod(mu[i] - mu[j] for i in range(m) if i != j)
        total = total + shintani_value(pi.drop(j), nu) / (mu[j] * vdm)
    rhs = V ** (-sum(nu)) * total
    return lhs, rhs


def whittaker_recursion_check(pi: SatakeData, nu: Sequence[int]) -> bool:
    lhs, rhs = whittaker_recursion_sides(pi, nu)
    return lhs == rhs
