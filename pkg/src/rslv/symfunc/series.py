"""Truncated power series in one or two expansion variables."""
from __future__ import annotations

from itertools import product
from typing import Iterable, Mapping, Sequence, Union

from ..errors import NonExpandableError
from .poly import MultiPolynomial, var_index
from .ratfunc import ONE, ZERO, RationalFunction, as_rf


class FormalSeries:
    """Series truncated to the box ``0 <= exponent_i <= order_i``.

    Coefficients are RationalFunctions in the remaining variables; absent
    keys are zero.
    """

    __slots__ = ("variables", "order", "coeffs")

    def __init__(self, variables: Sequence[Union[str, int]], order: Union[int, Sequence[int]],
                 coeffs: Mapping[tuple[int, ...], object] | None = None):
        self.variables = tuple(var_index(v) for v in variables)
        if not 1 <= len(self.variables) <= 2:
            raise ValueError("one or two expansion variables")
        if isinstance(order, int):
            order = (order,) * len(self.variables)
        self.order = tuple(order)
        if len(self.order) != len(self.variables) or min(self.order) < 0:
            raise ValueError("bad truncation order")
        self.coeffs: dict[tuple[int, ...], RationalFunction] = {}
        for k, c in (coeffs or {}).items():
            k = tuple(k)
            if not self._inside(k):
                continue
            c = as_rf(c)
            if not c.is_zero():
                self.coeffs[k] = c

    def _inside(self, k: tuple[int, ...]) -> bool:
        return all(0 <= e <= o for e, o in zip(k, self.order))

    def _check(self, other: "FormalSeries") -> None:
        if self.variables != other.variables or self.order != other.order:
            raise ValueError("series over different variables or orders")

    def indices(self) -> Iterable[tuple[int, ...]]:
        """All exponent vectors of the box, in graded order."""
        idx = list(product(*(range(o + 1) for o in self.order)))
        idx.sort(key=lambda k: (sum(k), k))
        return idx

    def __getitem__(self, k) -> RationalFunction:
        if isinstance(k, int):
            k = (k,)
        return self.coeffs.get(tuple(k), ZERO)

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return FormalSeries(self.variables, self.order, out)

    def __sub__(self, other: "FormalSeries") -> "FormalSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "FormalSeries":
        c = as_rf(c)
        return FormalSeries(self.variables, self.order, {k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, FormalSeries):
            return self.scale(other)
        self._check(other)
        acc: dict[tuple[int, ...], list[RationalFunction]] = {}
        for ka, ca in self.coeffs.items():
            for kb, cb in other.coeffs.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                if self._inside(k):
                    acc.setdefault(k, []).append(ca * cb)
        out = {}
        for k, terms in acc.items():
            s = terms[0]
            for t in terms[1:]:
                s = s + t
            out[k] = s
        return FormalSeries(self.variables, self.order, out)

    __rmul__ = __mul__

    def equals(self, other: "FormalSeries") -> bool:
        return not self.mismatches(other)

    def mismatches(self, other: "FormalSeries") -> list[tuple[int, ...]]:
        """Exponent vectors whose coefficients differ."""
        self._check(other)
        bad = []
        for k in sorted(set(self.coeffs) | set(other.coeffs)):
            if not (self[k] == other[k]):
                bad.append(k)
        return bad

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def __repr__(self) -> str:
        return f"FormalSeries(vars={self.variables}, order={self.order}, terms={len(self.coeffs)})"


def _split(p: MultiPolynomial, idxs: tuple[int, ...]) -> dict[tuple[int, ...], RationalFunction]:
    return {k: RationalFunction.from_poly(v) for k, v in p.split_by(idxs).items()}


def series_from_rational(r, expansion_vars: Sequence[Union[str, int]],
                         order: Union[int, Sequence[int]]) -> FormalSeries:
    """Expand ``r`` as a power series in ``expansion_vars``.

    Writes ``r = N/D`` with polynomial N, D and solves ``S*D = N`` one
    coefficient at a time; ``D`` must have a nonzero constant term in the
    expansion variables.
    """
    r = as_rf(r)
    shell = FormalSeries(expansion_vars, order)
    idxs = shell.variables
    if r.is_zero():
        return shell
    num = _split(r.numerator, idxs)
    den = _split(r.denominator, idxs)
    zero_key = (0,) * len(idxs)
    d0 = den.get(zero_key)
    if d0 is None or d0.is_zero():
        raise NonExpandableError("denominator has zero constant term in the expansion variables")
    d0_inv = d0.inverse()
    den_rest = [(k, c) for k, c in den.items() if k != zero_key]
    out: dict[tuple[int, ...], RationalFunction] = {}
    for k in shell.indices():
        acc = num.get(k, ZERO)
        for kd, cd in den_rest:
            j = tuple(a - b for a, b in zip(k, kd))
            if min(j) < 0:
                continue
            sj = out.get(j)
            if sj is not None:
                acc = acc - cd * sj
        if not acc.is_zero():
            out[k] = acc * d0_inv
    return FormalSeries(idxs, shell.order, out)


def geometric_product(roots: Iterable, expansion_var: Union[str, int], order: int) -> FormalSeries:
    """Series of ``prod_r (1 - r X)^(-1)``, built factor by factor."""
    x = RationalFunction.var(expansion_var)
    out = FormalSeries((expansion_var,), order, {(0,): ONE})
    for r in roots:
        out = out * series_from_rational(ONE / (1 - as_rf(r) * x), (expansion_var,), order)
    return out
