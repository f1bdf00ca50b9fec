"""Small dense matrices over Z/mZ, stored as tuples of row tuples."""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from ..errors import DomainError

Matrix = tuple  # tuple[tuple[int, ...], ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def require_prime(p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime (only prime fields are supported)")


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    require_prime(p)
    if p == 2:
        return 1
    factors = {f for f in range(2, p) if (p - 1) % f == 0 and is_prime(f)}
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise AssertionError("no primitive root found")


def valuation(x: int, p: int, cap: int) -> int:
    """p-adic valuation of x viewed in Z/p^cap (``cap`` if x = 0)."""
    x %= p ** cap
    if x == 0:
        return cap
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def from_rows(rows: Sequence[Sequence[int]], m: int) -> Matrix:
    return tuple(tuple(int(x) % m for x in r) for r in rows)


def mat_mul(A: Matrix, B: Matrix, m: int) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(sum(x * y for x, y in zip(r, c)) % m for c in cols) for r in A)


def mat_scale(A: Matrix, s: int, m: int) -> Matrix:
    return tuple(tuple(x * s % m for x in r) for r in A)


def det_int(A: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    M = [list(r) for r in A]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def det_mod(A: Matrix, m: int) -> int:
    return det_int(A) % m


def rank_mod_p(A: Sequence[Sequence[int]], p: int) -> int:
    M = [[x % p for x in r] for r in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [x * inv % p for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        r += 1
    return r


def inverse_mod(A: Matrix, p: int, k: int = 1) -> Matrix:
    """Inverse over Z/p^k by Gauss-Jordan with unit pivots; DomainError if singular."""
    m = p ** k
    n = len(A)
    M = [[x % m for x in r] + [int(i == j) for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] % p), None)
        if piv is None:
            raise DomainError("matrix is not invertible")
        M[c], M[piv] = M[piv], M[c]
        inv = pow(M[c][c], -1, m)
        M[c] = [x * inv % m for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % m for x, y in zip(M[i], M[c])]
    return tuple(tuple(r[n:]) for r in M)


def adjugate_int(A: Sequence[Sequence[int]]) -> list[list[int]]:
    """Classical adjoint over the integers via cofactors."""
    n = len(A)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[A[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            adj[j][i] = (-1) ** (i + j) * det_int(minor)
    return adj


def projective_canonical(A: Matrix, q: int) -> Matrix:
    """Scale so that the first nonzero entry in reading order is 1."""
    for r in A:
        for x in r:
            if x:
                return mat_scale(A, pow(x, -1, q), q) if x != 1 else A
    raise DomainError("zero matrix has no projective class")


def encode(A: Matrix, q: int) -> int:
    code = 0
    for r in A:
        for x in r:
            code = code * q + x
    return code


def decode(code: int, size: int, q: int) -> Matrix:
    flat = [0] * (size * size)
    for k in range(size * size - 1, -1, -1):
        code, flat[k] = divmod(code, q)
    return tuple(tuple(flat[i * size:(i + 1) * size]) for i in range(size))


def flatten(A: Matrix) -> list[int]:
    return [x for r in A for x in r]


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


def pgl_order(n: int, q: int) -> int:
    return gl_order(n, q) // (q - 1)


def all_invertible(n: int, q: int) -> Iterator[Matrix]:
    """Every element of GL_n(F_q) (q prime), by brute force."""
    for flat in product(range(q), repeat=n * n):
        A = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if det_mod(A, q):
            yield A


def embed(g: Matrix, size: int) -> Matrix:
    """diag(g, 1, ..., 1) of the given size."""
    n = len(g)
    return tuple(
        tuple(g[i][j] if i < n and j < n else int(i == j) for j in range(size)) for i in range(size)
    )


def block(a: Sequence[Sequence[int]], b: Sequence[int], c: Sequence[int], d: int, m: int) -> Matrix:
    """(a b; c d) with a n x n, b a column, c a row and d a scalar."""
    rows = [list(r) + [b[i]] for i, r in enumerate(a)] + [list(c) + [d]]
    return from_rows(rows, m)


def split_blocks(A: Matrix):
    n = len(A) - 1
    a = tuple(r[:n] for r in A[:n])
    b = tuple(r[n] for r in A[:n])
    c = tuple(A[n][:n])
    return a, b, c, A[n][n]


def gln_generators(n: int, q: int) -> list[Matrix]:
    """Elementary transvections, one scaling and one cyclic permutation: a generating set of GL_n(F_q)."""
    require_prime(q)
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                gens.append(tuple(tuple(int(r == s) + int(r == i and s == j) for s in range(n)) for r in range(n)))
    w = primitive_root(q)
    gens.append(tuple(tuple((w if r == s == 0 else int(r == s)) for s in range(n)) for r in range(n)))
    if n > 1:
        gens.append(tuple(tuple(int(s == (r + 1) % n) for s in range(n)) for r in range(n)))
    return gens


def mirabolic_generators(n: int, q: int) -> list[Matrix]:
    """Generators of P_{n+1}: diag(G_n generators, 1) and the unipotents (I, e_i^T; 0, 1)."""
    size = n + 1
    gens = [embed(g, size) for g in gln_generators(n, q)]
    for i in range(n):
        gens.append(tuple(tuple(int(r == s) + int(r == i and s == n) for s in range(size)) for r in range(size)))
    return gens
