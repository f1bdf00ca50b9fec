"""Canonical (G_n x G_n)-double-coset class of an element of PGL_{n+1}(F_q)."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConsistencyError, DomainError
from .linalg import (
    Matrix,
    block,
    det_mod,
    identity,
    inverse_mod,
    mat_mul,
    rank_mod_p,
    split_blocks,
)

TAGS = ("E", "NPLUS", "NMINUS", "XIPERP", "WPRIME", "NPLUS_WPRIME", "WPRIME_NPLUS", "XI")
TAG_CODE = {t: i for i, t in enumerate(TAGS)}


@dataclass(frozen=True, order=True)
class CosetClass:
    tag: str
    t: int | None = None

    def __post_init__(self) -> None:
        if self.tag not in TAG_CODE:
            raise DomainError(f"unknown tag {self.tag}")
        if self.tag == "XI":
            if self.t is None or self.t in (0, 1):
                raise DomainError("XI(t) needs t different from 0 and 1")
        elif self.t is not None:
            raise DomainError(f"{self.tag} carries no parameter")

    @property
    def code(self) -> int:
        return TAG_CODE[self.tag]

    def __str__(self) -> str:
        return f"XI({self.t})" if self.tag == "XI" else self.tag


def classify(gamma: Matrix, q: int) -> CosetClass:
    """Branch on rank(a), d, b, c and c a^-1 b for the block form (a b; c d)."""
    size = len(gamma)
    n = size - 1
    if n < 2:
        raise DomainError("classification needs n >= 2")
    det = det_mod(gamma, q)
    if det == 0:
        raise DomainError("singular matrix")
    a, b, c, d = split_blocks(gamma)
    r = rank_mod_p(a, q)
    if r < n - 1:
        raise ConsistencyError("rank of the top-left block below n-1 in an invertible matrix")
    if r == n - 1:
        return CosetClass("WPRIME" if d == 0 else "WPRIME_NPLUS")
    if d == 0:
        return CosetClass("NPLUS_WPRIME")
    b_zero = not any(b)
    c_zero = not any(c)
    if b_zero and c_zero:
        return CosetClass("E")
    if c_zero:
        return CosetClass("NPLUS")
    if b_zero:
        return CosetClass("NMINUS")
    ainv = inverse_mod(a, q)
    ainv_b = [sum(ainv[i][j] * b[j] for j in range(n)) % q for i in range(n)]
    s = sum(c[i] * ainv_b[i] for i in range(n)) % q
    if s == 0:
        return CosetClass("XIPERP")
    t = s * pow(d, -1, q) % q
    if det != det_mod(a, q) * d * (1 - t) % q:
        raise ConsistencyError("determinant relation det = det(a) d (1 - t) fails")
    if t == 1:
        raise ConsistencyError("t = 1 with an invertible matrix")
    return CosetClass("XI", t)


def _unit_col(n: int, i: int) -> list[int]:
    return [int(j == i) for j in range(n)]


def representative(cls: CosetClass, n: int, q: int) -> Matrix:
    """The standard representative of a class, as an (n+1) x (n+1) matrix mod q."""
    I = [list(r) for r in identity(n)]
    en = _unit_col(n, n - 1)
    e1 = _unit_col(n, 0)
    zero = [0] * n
    w = wprime(n, q)
    nplus = block(I, en, zero, 1, q)
    if cls.tag == "E":
        return identity(n + 1)
    if cls.tag == "NPLUS":
        return nplus
    if cls.tag == "NMINUS":
        return block(I, zero, en, 1, q)
    if cls.tag == "XI":
        return block(I, [cls.t * x for x in en], en, 1, q)
    if cls.tag == "XIPERP":
        return block(I, e1, en, 1, q)
    if cls.tag == "WPRIME":
        return w
    if cls.tag == "NPLUS_WPRIME":
        return mat_mul(nplus, w, q)
    return mat_mul(w, nplus, q)


def wprime(n: int, q: int = 0) -> Matrix:
    """Identity with the last two coordinates swapped."""
    size = n + 1
    perm = list(range(size))
    perm[n - 1], perm[n] = perm[n], perm[n - 1]
    return tuple(tuple(int(perm[i] == j) for j in range(size)) for i in range(size))


def all_classes(q: int) -> list[CosetClass]:
    fixed = [CosetClass(t) for t in TAGS if t != "XI"]
    return fixed + [CosetClass("XI", t) for t in range(2, q)]
