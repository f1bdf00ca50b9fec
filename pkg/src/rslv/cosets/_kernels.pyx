# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; interface identical to ``_kernels_py``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

IMPLEMENTATION = "cython"

cdef enum:
    MAXN = 8
    MAXE = 64


cdef long _inv(long x, long p):
    # p is prime and x is nonzero mod p
    cdef long r = 1, b = x % p, k = p - 2
    if b < 0:
        b += p
    while k > 0:
        if k & 1:
            r = r * b % p
        b = b * b % p
        k >>= 1
    return r


cdef long _det_mod_p(long* src, int size, long p):
    cdef long M[MAXE]
    cdef int i, j, c, piv
    cdef long det = 1, f, inv, tmp
    for i in range(size * size):
        M[i] = src[i] % p
    for c in range(size):
        piv = -1
        for i in range(c, size):
            if M[i * size + c] != 0:
                piv = i
                break
        if piv < 0:
            return 0
        if piv != c:
            for j in range(size):
                tmp = M[c * size + j]
                M[c * size + j] = M[piv * size + j]
                M[piv * size + j] = tmp
            det = p - det
        det = det * M[c * size + c] % p
        inv = _inv(M[c * size + c], p)
        for i in range(c + 1, size):
            f = M[i * size + c] * inv % p
            if f:
                for j in range(c, size):
                    M[i * size + j] = (M[i * size + j] - f * M[c * size + j]) % p
                    if M[i * size + j] < 0:
                        M[i * size + j] += p
    return det % p


cdef void _decode(long code, int size, long q, long* out):
    cdef int k
    for k in range(size * size - 1, -1, -1):
        out[k] = code % q
        code //= q


cdef long _canon_code(long* flat, int total, long q):
    cdef int k
    cdef long first = 0, inv, code = 0
    for k in range(total):
        if flat[k] != 0:
            first = flat[k]
            break
    inv = _inv(first, q)
    for k in range(total):
        code = code * q + flat[k] * inv % q
    return code


cdef void _mul(long* A, long* B, long* out, int size, long q):
    cdef int i, j, k
    cdef long s
    for i in range(size):
        for j in range(size):
            s = 0
            for k in range(size):
                s += A[i * size + k] * B[k * size + j]
            out[i * size + j] = s % q


cdef long _search(cnp.int64_t[::1] codes, long key):
    cdef long lo = 0, hi = codes.shape[0] - 1, mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if codes[mid] < key:
            lo = mid + 1
        elif codes[mid] > key:
            hi = mid - 1
        else:
            return mid
    return -1


cdef long _find(cnp.int64_t[::1] parent, long i):
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def enumerate_pgl(int size, long q):
    """Sorted codes of invertible matrices whose first nonzero entry is 1."""
    if size > MAXN:
        raise ValueError("matrix size too large for the compiled kernel")
    cdef int total = size * size
    cdef long limit = 1, code, k
    cdef long flat[MAXE]
    for k in range(total):
        limit *= q
    out = []
    cdef long first
    for code in range(limit):
        _decode(code, size, q, flat)
        first = 0
        for k in range(total):
            if flat[k] != 0:
                first = flat[k]
                break
        if first != 1:
            continue
        if _det_mod_p(flat, size, q) != 0:
            out.append(code)
    return np.array(out, dtype=np.int64)


def orbit_labels(codes, int size, long q, left_gens, right_gens):
    """Union-find labels (smallest index in each orbit) under g -> L g and g -> g R."""
    cdef cnp.int64_t[::1] cv = np.ascontiguousarray(codes, dtype=np.int64)
    cdef long n = cv.shape[0]
    parent_arr = np.arange(n, dtype=np.int64)
    cdef cnp.int64_t[::1] parent = parent_arr
    cdef int total = size * size
    cdef cnp.int64_t[:, ::1] L = np.ascontiguousarray(np.array(left_gens, dtype=np.int64).reshape(-1, total))
    cdef cnp.int64_t[:, ::1] R = np.ascontiguousarray(np.array(right_gens, dtype=np.int64).reshape(-1, total))
    cdef long flat[MAXE]
    cdef long prod[MAXE]
    cdef long gen[MAXE]
    cdef long i, j, ri, rj
    cdef int g, k
    for i in range(n):
        _decode(cv[i], size, q, flat)
        for g in range(L.shape[0]):
            for k in range(total):
                gen[k] = L[g, k]
            _mul(gen, flat, prod, size, q)
            j = _search(cv, _canon_code(prod, total, q))
            if j < 0:
                raise RuntimeError("product left the enumerated group")
            ri = _find(parent, i)
            rj = _find(parent, j)
            if ri != rj:
                if ri < rj:
                    parent[rj] = ri
                else:
                    parent[ri] = rj
        for g in range(R.shape[0]):
            for k in range(total):
                gen[k] = R[g, k]
            _mul(flat, gen, prod, size, q)
            j = _search(cv, _canon_code(prod, total, q))
            if j < 0:
                raise RuntimeError("product left the enumerated group")
            ri = _find(parent, i)
            rj = _find(parent, j)
            if ri != rj:
                if ri < rj:
                    parent[rj] = ri
                else:
                    parent[ri] = rj
    for i in range(n):
        parent[i] = _find(parent, i)
    return parent_arr


cdef int _rank_and_solve(long* a, long* b, int n, long p, long* x):
    # Gauss-Jordan on [a | b] mod p; returns rank(a); x = a^-1 b when full rank
    cdef long M[MAXE + MAXN]
    cdef int w = n + 1, i, j, c, r = 0, piv
    cdef long inv, f, tmp
    for i in range(n):
        for j in range(n):
            M[i * w + j] = a[i * n + j] % p
        M[i * w + n] = b[i] % p
    for c in range(n):
        piv = -1
        for i in range(r, n):
            if M[i * w + c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(w):
                tmp = M[r * w + j]
                M[r * w + j] = M[piv * w + j]
                M[piv * w + j] = tmp
        inv = _inv(M[r * w + c], p)
        for j in range(w):
            M[r * w + j] = M[r * w + j] * inv % p
        for i in range(n):
            if i != r and M[i * w + c] != 0:
                f = M[i * w + c]
                for j in range(w):
                    M[i * w + j] = (M[i * w + j] - f * M[r * w + j]) % p
                    if M[i * w + j] < 0:
                        M[i * w + j] += p
        r += 1
    if r == n:
        for i in range(n):
            x[i] = M[i * w + n]
    return r


def classify_codes(codes, int size, long q):
    """Tag codes (E=0 .. XI=7) and t-values; mirrors ``classify.classify``."""
    cdef cnp.int64_t[::1] cv = np.ascontiguousarray(codes, dtype=np.int64)
    cdef long n = cv.shape[0], i
    tags_arr = np.empty(n, dtype=np.int64)
    ts_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] tags = tags_arr
    cdef cnp.int64_t[::1] ts = ts_arr
    cdef int m = size - 1, r, k, j
    cdef long flat[MAXE]
    cdef long a[MAXE]
    cdef long b[MAXN]
    cdef long x[MAXN]
    cdef long d, s, t, det, deta
    cdef bint bz, cz
    for i in range(n):
        _decode(cv[i], size, q, flat)
        for k in range(m):
            for j in range(m):
                a[k * m + j] = flat[k * size + j]
            b[k] = flat[k * size + m]
        d = flat[m * size + m]
        r = _rank_and_solve(a, b, m, q, x)
        if r < m - 1:
            raise RuntimeError("rank of the top-left block below n-1")
        if r == m - 1:
            tags[i] = 4 if d == 0 else 6
            continue
        if d == 0:
            tags[i] = 5
            continue
        bz = True
        cz = True
        for k in range(m):
            if b[k] != 0:
                bz = False
            if flat[m * size + k] != 0:
                cz = False
        if bz and cz:
            tags[i] = 0
        elif cz:
            tags[i] = 1
        elif bz:
            tags[i] = 2
        else:
            s = 0
            for k in range(m):
                s += flat[m * size + k] * x[k]
            s %= q
            if s == 0:
                tags[i] = 3
            else:
                t = s * _inv(d, q) % q
                det = _det_mod_p(flat, size, q)
                deta = _det_mod_p(a, m, q)
                if det != ((deta * d % q) * ((1 - t + q) % q)) % q or t == 1:
                    raise RuntimeError("determinant relation fails")
                tags[i] = 7
                ts[i] = t
    return tags_arr, ts_arr


def count_gl_and_k0(int size, long p, int e):
    """|GL_size(Z/p^e)| and the order of its subgroup with last row = (0, ..., 0, *) mod p^e."""
    cdef long m = 1, limit = 1, code, gl = 0, k0 = 0
    cdef int total = size * size, k
    cdef long flat[MAXE]
    cdef bint low
    for k in range(e):
        m *= p
    for k in range(total):
        limit *= m
    for code in range(limit):
        _decode(code, size, m, flat)
        if _det_mod_p(flat, size, p) != 0:
            gl += 1
            low = True
            for k in range((size - 1) * size, total - 1):
                if flat[k] != 0:
                    low = False
                    break
            if low:
                k0 += 1
    return int(gl), int(k0)
