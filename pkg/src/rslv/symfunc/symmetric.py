"""Elementary, complete homogeneous and Schur polynomials; determinants; interpolation."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Sequence, Union

from ..errors import ConsistencyError, DegenerateInputError, DomainError
from .poly import MultiPolynomial, var_index
from .ratfunc import ONE, ZERO, RationalFunction, as_rf

VarLike = Union[str, int]


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of nonnegative integers."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p < 0 for p in parts):
            raise DomainError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise DomainError(f"{parts} is not weakly decreasing")

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def padded(self, m: int) -> "Partition":
        """The same partition with trailing zeros up to length ``m``."""
        if any(self.parts[m:]):
            raise DomainError(f"{self.parts} has more than {m} nonzero parts")
        return Partition(self.parts[:m] + (0,) * (m - len(self.parts)))


def is_dominant(nu: Sequence[int]) -> bool:
    return all(nu[i] >= nu[i + 1] for i in range(len(nu) - 1))


def partitions(weight: int, max_length: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``weight`` with at most ``max_length`` parts, padded to ``max_length``."""
    if max_part is None:
        max_part = weight

    def rec(rest: int, slots: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield (0,) * slots
            return
        if slots == 0:
            return
        for p in range(min(rest, cap), 0, -1):
            for tail in rec(rest - p, slots - 1, p):
                yield (p,) + tail

    for parts in rec(weight, max_length, max_part):
        yield Partition(parts)


def _as_partition(nu, m: int) -> Partition:
    if not isinstance(nu, Partition):
        if not is_dominant(tuple(nu)):
            raise DomainError(f"{tuple(nu)} is not dominant")
        nu = Partition(tuple(nu))
    return nu.padded(m)


def _variables(vars: Sequence[VarLike]) -> list[MultiPolynomial]:
    idx = [var_index(v) for v in vars]
    if len(set(idx)) != len(idx):
        raise DegenerateInputError("repeated variable")
    return [MultiPolynomial.variable(i) for i in idx]


def elementary_symmetric(k: int, vars: Sequence[VarLike]) -> MultiPolynomial:
    """e_k of the given variables."""
    xs = _variables(vars)
    if not 0 <= k <= len(xs):
        raise DomainError(f"e_{k} needs 0 <= k <= {len(xs)}")
    # e[j] holds e_j of the variables seen so far
    e = [MultiPolynomial.constant(1)] + [MultiPolynomial()] * k
    for x in xs:
        for j in range(k, 0, -1):
            e[j] = e[j] + x * e[j - 1]
    return e[k]


def complete_homogeneous(k: int, vars: Sequence[VarLike]) -> MultiPolynomial:
    """h_k of the given variables (sum of all monomials of degree k)."""
    if k < 0:
        raise DomainError(f"h_{k} needs k >= 0")
    xs = _variables(vars)
    h = [MultiPolynomial.constant(1)] + [MultiPolynomial()] * k
    for x in xs:
        # h_j(x_1..x_r) = h_j(x_1..x_{r-1}) + x_r h_{j-1}(x_1..x_r)
        for j in range(1, k + 1):
            h[j] = h[j] + x * h[j - 1]
    return h[k]


def elementary_values(values: Sequence) -> list[RationalFunction]:
    """[e_0, ..., e_m] evaluated at arbitrary rational-function values."""
    e = [ONE] + [ZERO] * len(values)
    for r, x in enumerate(values, start=1):
        x = as_rf(x)
        for j in range(r, 0, -1):
            e[j] = e[j] + x * e[j - 1]
    return e


def _parity(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def determinant(rows):
    """Leibniz expansion; works for any commutative ring elements with + and *."""
    m = len(rows)
    if m == 0:
        return 1
    if any(len(r) != m for r in rows):
        raise DomainError("determinant of a non-square matrix")
    total = rows[0][0] * 0
    for perm in permutations(range(m)):
        entries = [rows[i][j] for i, j in enumerate(perm)]
        if not all(entries):
            continue
        term = entries[0]
        for entry in entries[1:]:
            term = term * entry
        total = total + term if _parity(perm) > 0 else total - term
    return total


def schur(nu, vars: Sequence[VarLike]) -> MultiPolynomial:
    """Schur polynomial as the bialternant quotient, with exact division."""
    xs = _variables(vars)
    m = len(xs)
    lam = _as_partition(nu, m).parts
    if m == 0:
        return MultiPolynomial.constant(1)
    num = determinant([[x ** (m - 1 - i + lam[i]) for x in xs] for i in range(m)])
    den = determinant([[x ** (m - 1 - i) for x in xs] for i in range(m)])
    try:
        return num.exact_divide(den)
    except ArithmeticError as exc:
        raise ConsistencyError(f"bialternant for {lam} does not divide exactly") from exc


def schur_jacobi_trudi(nu, vars: Sequence[VarLike]) -> MultiPolynomial:
    """Schur polynomial as det(h_{nu_i - i + j}); independent of ``schur``."""
    m = len(vars)
    lam = _as_partition(nu, m).parts
    h_cache: dict[int, MultiPolynomial] = {}

    def h(k: int) -> MultiPolynomial:
        if k < 0:
            return MultiPolynomial()
        if k not in h_cache:
            h_cache[k] = complete_homogeneous(k, vars)
        return h_cache[k]

    if m == 0:
        return MultiPolynomial.constant(1)
    return determinant([[h(lam[i] - i + j) for j in range(m)] for i in range(m)])


def lagrange_reconstruct(points: Sequence[tuple], eval_at) -> RationalFunction:
    """Value at ``eval_at`` of the interpolating polynomial of degree < len(points)."""
    nodes = [as_rf(x) for x, _ in points]
    values = [as_rf(v) for _, v in points]
    z = as_rf(eval_at)
    total = ZERO
    for k, (xk, vk) in enumerate(zip(nodes, values)):
        term = vk
        for a, xa in enumerate(nodes):
            if a == k:
                continue
            gap = xk - xa
            if gap.is_zero():
                raise DegenerateInputError(f"interpolation nodes {k} and {a} coincide")
            term = term * (z - xa) / gap
        total = total + term
    return total
