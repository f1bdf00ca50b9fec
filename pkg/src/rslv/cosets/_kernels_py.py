"""Pure-Python enumeration kernels; same interface as the compiled ``_kernels``."""
from __future__ import annotations

import numpy as np

from .classify import TAG_CODE, classify
from .linalg import decode, flatten

IMPLEMENTATION = "python"


def _det_mod_p(flat: list[int], size: int, p: int) -> int:
    M = [flat[i * size:(i + 1) * size] for i in range(size)]
    det = 1
    for c in range(size):
        piv = next((i for i in range(c, size) if M[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c] % p
        inv = pow(M[c][c], -1, p)
        for i in range(c + 1, size):
            f = M[i][c] * inv % p
            if f:
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[c])]
    return det % p


def enumerate_pgl(size: int, q: int) -> np.ndarray:
    """Sorted codes of invertible matrices whose first nonzero entry is 1."""
    out = []
    total = size * size
    for code in range(q ** total):
        flat = [0] * total
        x = code
        for k in range(total - 1, -1, -1):
            x, flat[k] = divmod(x, q)
        first = next((v for v in flat if v), 0)
        if first != 1:
            continue
        if _det_mod_p(flat, size, q):
            out.append(code)
    return np.array(out, dtype=np.int64)


def _canon_code(flat: list[int], q: int) -> int:
    first = next(v for v in flat if v)
    inv = pow(first, -1, q)
    code = 0
    for v in flat:
        code = code * q + v * inv % q
    return code


def _mul_flat(A: list[int], B: list[int], size: int, q: int) -> list[int]:
    out = [0] * (size * size)
    for i in range(size):
        row = A[i * size:(i + 1) * size]
        for j in range(size):
            s = 0
            for k in range(size):
                s += row[k] * B[k * size + j]
            out[i * size + j] = s % q
    return out


def orbit_labels(codes: np.ndarray, size: int, q: int, left_gens: list, right_gens: list) -> np.ndarray:
    """Union-find labels (smallest index in each orbit) under g -> L g and g -> g R."""
    index = {int(c): i for i, c in enumerate(codes)}
    parent = list(range(len(codes)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    lgens = [list(g) for g in left_gens]
    rgens = [list(g) for g in right_gens]
    for i, c in enumerate(codes):
        flat = flatten(decode(int(c), size, q))
        for g in lgens:
            j = index[_canon_code(_mul_flat(g, flat, size, q), q)]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
        for g in rgens:
            j = index[_canon_code(_mul_flat(flat, g, size, q), q)]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    return np.array([find(i) for i in range(len(codes))], dtype=np.int64)


def classify_codes(codes: np.ndarray, size: int, q: int) -> tuple[np.ndarray, np.ndarray]:
    tags = np.empty(len(codes), dtype=np.int64)
    ts = np.zeros(len(codes), dtype=np.int64)
    for i, c in enumerate(codes):
        cls = classify(decode(int(c), size, q), q)
        tags[i] = TAG_CODE[cls.tag]
        ts[i] = cls.t or 0
    return tags, ts


def count_gl_and_k0(size: int, p: int, e: int) -> tuple[int, int]:
    """|GL_size(Z/p^e)| and the order of its subgroup with last row = (0, ..., 0, *) mod p^e."""
    m = p ** e
    total = size * size
    gl = k0 = 0
    for code in range(m ** total):
        flat = [0] * total
        x = code
        for k in range(total - 1, -1, -1):
            x, flat[k] = divmod(x, m)
        if _det_mod_p(flat, size, p):
            gl += 1
            if not any(flat[(size - 1) * size:total - 1]):
                k0 += 1
    return gl, k0
