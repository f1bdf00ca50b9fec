"""Exhaustive and sampled audits of the double-coset geometry over finite rings."""
from __future__ import annotations

import os
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field

import numpy as np

from ..errors import BudgetExceeded, DomainError
from ..symfunc import ONE, RationalFunction
from . import kernels
from .classify import TAGS, CosetClass, all_classes, classify, representative, wprime
from .linalg import (
    Matrix,
    adjugate_int,
    all_invertible,
    block,
    det_int,
    embed,
    encode,
    flatten,
    gl_order,
    gln_generators,
    identity,
    inverse_mod,
    mat_mul,
    mirabolic_generators,
    pgl_order,
    projective_canonical,
    require_prime,
    split_blocks,
    valuation,
)

DEFAULT_BUDGET = 10 ** 6


def element_budget(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("RSLV_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _require_small(what: str, estimate: int, budget: int | None) -> None:
    cap = element_budget(budget)
    if estimate > cap:
        raise BudgetExceeded(what, estimate, cap)


def _class_of(tag: int, t: int) -> CosetClass:
    name = TAGS[tag]
    return CosetClass(name, t if name == "XI" else None)


@dataclass
class OrbitReport:
    n: int
    q: int
    variant: str
    group_order: int
    orbit_sizes: dict[str, int] = field(default_factory=dict)
    stabilizers: dict[str, int] = field(default_factory=dict)
    flags: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.flags.values())


_CACHE: dict[tuple, object] = {}


def _enumerate(n: int, q: int, budget: int | None):
    require_prime(q)
    if n < 2:
        raise DomainError("n must be at least 2")
    _require_small(f"PGL_{n + 1}(F_{q})", pgl_order(n + 1, q), budget)
    key = ("codes", n, q)
    if key not in _CACHE:
        codes = kernels.enumerate_pgl(n + 1, q)
        _CACHE[key] = codes
    return _CACHE[key]


def _orbits(n: int, q: int, variant: str, budget: int | None):
    key = ("orbits", n, q, variant)
    codes = _enumerate(n, q, budget)
    if key not in _CACHE:
        size = n + 1
        g = [flatten(embed(x, size)) for x in gln_generators(n, q)]
        p = [flatten(x) for x in mirabolic_generators(n, q)]
        left, right = {"GxG": (g, g), "PxG": (p, g), "GxP": (g, p), "PxP": (p, p)}[variant]
        _CACHE[key] = kernels.orbit_labels(codes, size, q, left, right)
    return codes, _CACHE[key]


def _classes(n: int, q: int, budget: int | None):
    key = ("classes", n, q)
    codes = _enumerate(n, q, budget)
    if key not in _CACHE:
        _CACHE[key] = kernels.classify_codes(codes, n + 1, q)
    return _CACHE[key]


def _index_of(codes, gamma: Matrix, q: int) -> int:
    code = encode(projective_canonical(gamma, q), q)
    i = int(np.searchsorted(codes, code))
    if i >= len(codes) or int(codes[i]) != code:
        raise DomainError("matrix not found among enumerated elements")
    return i


def exhaustive_partition_audit(n: int, q: int, budget: int | None = None) -> OrbitReport:
    """Classify every element of PGL_{n+1}(F_q) and compare with (G_n x G_n)-orbits."""
    codes, labels = _orbits(n, q, "GxG", budget)
    tags, ts = _classes(n, q, budget)
    orbit_classes: dict[int, set] = defaultdict(set)
    orbit_size: Counter = Counter()
    for root, tag, t in zip(labels.tolist(), tags.tolist(), ts.tolist()):
        orbit_classes[root].add((tag, t))
        orbit_size[root] += 1
    rep = OrbitReport(n, q, "GxG", pgl_order(n + 1, q))
    constant = all(len(s) == 1 for s in orbit_classes.values())
    class_to_orbits: dict[tuple, set] = defaultdict(set)
    for root, s in orbit_classes.items():
        for key in s:
            class_to_orbits[key].add(root)
    observed = {_class_of(*k) for k in class_to_orbits}
    expected = set(all_classes(q))
    rep.flags["classify_constant_on_orbits"] = constant
    rep.flags["each_class_is_one_orbit"] = all(len(v) == 1 for v in class_to_orbits.values())
    rep.flags["class_count"] = len(observed) == 7 + max(0, q - 2) and len(orbit_classes) == len(observed)
    rep.flags["classes_exhaust_expected_set"] = observed == expected
    rep.flags["orbit_sizes_sum_to_group_order"] = (
        sum(orbit_size.values()) == rep.group_order == len(codes)
    )
    rep.flags["xi_parameter_never_0_or_1"] = all(
        t not in (0, 1) for tag, t in zip(tags.tolist(), ts.tolist()) if TAGS[tag] == "XI"
    )
    self_ok = True
    for cls in expected:
        g = representative(cls, n, q)
        i = _index_of(codes, g, q)
        self_ok &= classify(g, q) == cls and (int(tags[i]), int(ts[i])) == (cls.code, cls.t or 0)
    rep.flags["representatives_classify_to_themselves"] = self_ok
    for key, roots in sorted(class_to_orbits.items()):
        rep.orbit_sizes[str(_class_of(*key))] = sum(orbit_size[r] for r in roots)
    if q == 2:
        rep.notes.append("q = 2 has no XI(t) classes; larger q audited separately")
    return rep


def _stabilizer_order(xi: Matrix, n: int, q: int, gn: list[Matrix]) -> int:
    """Number of y in G_n with xi diag(y,1) xi^-1 in F_q^x * diag(G_n, 1)."""
    xinv = inverse_mod(xi, q)
    count = 0
    for y in gn:
        M = mat_mul(mat_mul(xi, embed(y, n + 1), q), xinv, q)
        if M[n][n] and not any(M[n][:n]) and not any(M[i][n] for i in range(n)):
            count += 1
    return count


def stabilizer_audit(n: int, q: int, budget: int | None = None) -> OrbitReport:
    """Stabilizer orders of the representatives, reconciled with the orbit sizes."""
    part = exhaustive_partition_audit(n, q, budget)
    _require_small(f"GL_{n}(F_{q}) per representative", q ** (n * n), budget)
    gn = list(all_invertible(n, q))
    g = gl_order(n, q)
    expected = {
        "E": g,
        "NPLUS": gl_order(n - 1, q) * q ** (n - 1),
        "NMINUS": gl_order(n - 1, q) * q ** (n - 1),
        "XIPERP": gl_order(n - 2, q) * q ** (2 * n - 3),
        "XI": gl_order(n - 1, q),
    }
    rep = OrbitReport(n, q, "GxG-stabilizers", part.group_order, dict(part.orbit_sizes))
    factors = set()
    orbit_stab = True
    for cls in all_classes(q):
        s = _stabilizer_order(representative(cls, n, q), n, q, gn)
        rep.stabilizers[str(cls)] = s
        orbit_stab &= rep.orbit_sizes[str(cls)] * s == g * g
        if cls.tag in expected:
            num, den = s, expected[cls.tag]
            factors.add((num // den) if num % den == 0 else (num, den))
    rep.flags["orbit_times_stabilizer_is_gn_squared"] = orbit_stab
    rep.flags["stabilizers_match_up_to_constant_central_factor"] = len(factors) == 1 and isinstance(
        next(iter(factors)), int
    )
    rep.notes.append(f"central factor {sorted(map(str, factors))}")
    return rep


MIRABOLIC_REPS = {
    "PxG": ("E", "NMINUS", "WPRIME"),
    "GxP": ("E", "NMINUS", "WPRIME"),
    "PxP": ("E", "WPRIME"),
}


def mirabolic_partition_audit(n: int, q: int, variant: str, budget: int | None = None) -> OrbitReport:
    """Orbits when one or both copies of G_n are replaced by the mirabolic subgroup."""
    if variant not in MIRABOLIC_REPS:
        raise DomainError(f"variant must be one of {sorted(MIRABOLIC_REPS)}")
    codes, labels = _orbits(n, q, variant, budget)
    sizes = Counter(labels.tolist())
    rep = OrbitReport(n, q, variant, pgl_order(n + 1, q))
    reps = MIRABOLIC_REPS[variant]
    roots = [int(labels[_index_of(codes, representative(CosetClass(t), n, q), q)]) for t in reps]
    rep.flags["orbit_count"] = len(sizes) == len(reps)
    rep.flags["representatives_in_distinct_orbits"] = len(set(roots)) == len(reps)
    rep.flags["orbit_sizes_sum_to_group_order"] = sum(sizes.values()) == rep.group_order
    for t, r in zip(reps, roots):
        rep.orbit_sizes[t] = sizes[r]
    ids = reduction_identities(n, q)
    for k, v in ids.items():
        if not k.startswith("as_printed"):
            rep.flags[k] = v
    rep.notes.append(
        "n+w' absorption display as printed: "
        + ("holds" if ids["as_printed_nplus_wprime"] else "fails")
        + f" over F_{q}"
    )
    return rep


def _proj_equal(A: Matrix, B: Matrix, q: int) -> bool:
    return projective_canonical(A, q) == projective_canonical(B, q)


def _in_mirabolic_projectively(A: Matrix, q: int) -> bool:
    n = len(A) - 1
    return A[n][n] != 0 and not any(A[n][:n])


def reduction_identities(n: int, q: int) -> dict[str, bool]:
    """Matrix identities absorbing xi(t), xi-perp, w'n+ and n+w' into the n- or e classes."""
    require_prime(q)
    I = [list(r) for r in identity(n)]
    en = [int(j == n - 1) for j in range(n)]
    e1 = [int(j == 0) for j in range(n)]
    zero = [0] * n
    nminus = representative(CosetClass("NMINUS"), n, q)
    nplus = representative(CosetClass("NPLUS"), n, q)
    w = wprime(n)
    out = {}

    ok = True
    for t in range(2, q):
        xi = representative(CosetClass("XI", t), n, q)
        left = block([[I[i][j] - t * (i == j == n - 1) for j in range(n)] for i in range(n)],
                     [t * x for x in en], zero, 1, q)
        s = pow(1 - t, -1, q)
        right = block([[s * I[i][j] for j in range(n)] for i in range(n)], [s * t * x for x in en], zero, 1, q)
        ok &= mat_mul(left, nminus, q) == xi and _proj_equal(mat_mul(nminus, right, q), xi, q)
    out["xi_t_absorbs_into_nminus"] = ok

    xip = representative(CosetClass("XIPERP"), n, q)
    left = block([[I[i][j] - (i == 0 and j == n - 1) for j in range(n)] for i in range(n)], e1, zero, 1, q)
    right = block(I, e1, zero, 1, q)
    out["xi_perp_absorbs_into_nminus"] = (
        mat_mul(left, nminus, q) == xip and mat_mul(nminus, right, q) == xip
    )

    i_minus = [[I[i][j] * (-1 if i == j == n - 1 else 1) for j in range(n)] for i in range(n)]
    out["wprime_nplus_absorbs_into_nminus"] = mat_mul(block(i_minus, en, zero, 1, q), nminus, q) == mat_mul(
        w, nplus, q
    )

    npw = mat_mul(nplus, w, q)
    neg = lambda M: tuple(tuple(-x % q for x in r) for r in M)  # noqa: E731
    printed = neg(mat_mul(nminus, block([[-x for x in r] for r in i_minus], [-x for x in en], zero, 1, q), q))
    corrected = neg(mat_mul(nminus, block([[-x for x in r] for r in I], [-x for x in en], zero, 1, q), q))
    out["as_printed_nplus_wprime"] = printed == npw
    out["nplus_wprime_absorbs_into_nminus"] = corrected == npw and _in_mirabolic_projectively(
        mat_mul(inverse_mod(nminus, q), npw, q), q
    )
    return out


def bilateral_invariance_check(n: int, q: int, trials: int, seed: int) -> tuple[int, int]:
    """classify(x g y) == classify(g) for random x, y in G_n and random g; returns (passed, trials)."""
    rng = random.Random(seed)
    size = n + 1

    def rand_inv(k: int) -> Matrix:
        while True:
            A = tuple(tuple(rng.randrange(q) for _ in range(k)) for _ in range(k))
            if det_int(A) % q:
                return A

    passed = 0
    for _ in range(trials):
        g = rand_inv(size)
        x, y = embed(rand_inv(n), size), embed(rand_inv(n), size)
        passed += classify(mat_mul(mat_mul(x, g, q), y, q), q) == classify(g, q)
    return passed, trials


def congruence_index(n: int, p: int, e: int, budget: int | None = None) -> int:
    """[GL_{n+1}(Z/p^e) : K_0(p^e)] by enumerating all (n+1) x (n+1) matrices mod p^e."""
    require_prime(p)
    if e < 1 or n < 1:
        raise DomainError("need n >= 1 and e >= 1")
    _require_small(f"matrices of size {n + 1} mod {p}^{e}", (p ** e) ** ((n + 1) ** 2), budget)
    gl, k0 = kernels.count_gl_and_k0(n + 1, p, e)
    if gl % k0:
        raise DomainError("subgroup order does not divide group order")
    return gl // k0


@dataclass
class SupportReport:
    n: int
    p: int
    e: int
    samples: int
    valuation_ok: int = 0
    unit_ok: int = 0
    identity_ok: int = 0
    skipped: int = 0
    min_valuation: int | None = None

    @property
    def ok(self) -> bool:
        used = self.samples - self.skipped
        return used > 0 and self.valuation_ok == self.unit_ok == self.identity_ok == used


def xi_t_valuation_check(n: int, p: int, e: int, samples: int, seed: int) -> SupportReport:
    """Sample K_0(p^e) lifts over Z/p^(e+3); t = c a^-1 b d^-1 must have valuation >= e."""
    require_prime(p)
    if e < 1 or n < 1 or samples < 1:
        raise DomainError("need n >= 1, e >= 1 and samples >= 1")
    k = e + 3
    m = p ** k
    rng = random.Random(seed)
    rep = SupportReport(n, p, e, samples)
    for _ in range(samples):
        while True:
            a = [[rng.randrange(m) for _ in range(n)] for _ in range(n)]
            b = [rng.randrange(m) for _ in range(n)]
            c = [p ** e * rng.randrange(p ** 3) for _ in range(n)]
            d = rng.randrange(m)
            gamma = block(a, b, c, d, m)
            if det_int(gamma) % p:
                break
        a_m, _, _, d = split_blocks(gamma)
        if det_int(a_m) % p == 0 or d % p == 0:
            rep.skipped += 1
            continue
        ainv = inverse_mod(a_m, p, k)
        ainv_b = [sum(ainv[i][j] * b[j] for j in range(n)) % m for i in range(n)]
        t = sum(c[i] * ainv_b[i] for i in range(n)) * pow(d, -1, m) % m
        v = valuation(t, p, k)
        rep.min_valuation = v if rep.min_valuation is None else min(rep.min_valuation, v)
        rep.valuation_ok += v >= e
        rep.unit_ok += (1 - t) % p != 0
        adj = adjugate_int(a_m)
        rhs = sum(c[i] * adj[i][j] * b[j] for i in range(n) for j in range(n))
        rep.identity_ok += (det_int(a_m) * d * t - rhs) % m == 0
    return rep


def _symbolic_matrix(prefix: str, rows: int, cols: int):
    return [[RationalFunction.var(f"{prefix}{i}{j}") for j in range(1, cols + 1)] for i in range(1, rows + 1)]


def _rf_mul(A, B):
    out = []
    for row in A:
        out_row = []
        for col in zip(*B):
            s = row[0] * col[0]
            for x, y in zip(row[1:], col[1:]):
                s = s + x * y
            out_row.append(s)
        out.append(out_row)
    return out


def _rf_block(a, b, c, d):
    return [list(r) + [b[i][0]] for i, r in enumerate(a)] + [list(c[0]) + [d]]


def _rf_identity(n: int):
    return [[ONE if i == j else RationalFunction(0) for j in range(n)] for i in range(n)]


@dataclass
class BruhatReport:
    n: int
    identity_holds: bool
    specialization_holds: bool
    scalar: str

    @property
    def ok(self) -> bool:
        return self.identity_holds and self.specialization_holds


def bruhat_product_identity_check(n: int) -> BruhatReport:
    """g k = d * (I, b + ab'/d; 0, 1)(a(dI - b'c)a'/d^2, 0; 0, 1)(I, 0; c' + ca'/d, 1) with d = 1 + c b'."""
    if n < 1:
        raise DomainError("n must be at least 1")
    zero_col = [[RationalFunction(0)] for _ in range(n)]
    zero_row = [[RationalFunction(0)] * n]
    I = _rf_identity(n)

    def bruhat(a, b, c):
        upper = _rf_block(I, b, zero_row, ONE)
        mid = _rf_block(a, zero_col, zero_row, ONE)
        lower = _rf_block(I, zero_col, c, ONE)
        return _rf_mul(_rf_mul(upper, mid), lower)

    def factors(a, b, c, a2, b2, c2):
        d = _rf_mul(c, b2)[0][0] + 1
        ab2 = _rf_mul(a, b2)
        new_b = [[b[i][0] + ab2[i][0] / d] for i in range(n)]
        b2c = _rf_mul(b2, c)
        inner = [[(d if i == j else RationalFunction(0)) - b2c[i][j] for j in range(n)] for i in range(n)]
        new_a = [[x / d ** 2 for x in r] for r in _rf_mul(_rf_mul(a, inner), a2)]
        ca2 = _rf_mul(c, a2)
        new_c = [[c2[0][j] + ca2[0][j] / d for j in range(n)]]
        rhs = bruhat(new_a, new_b, new_c)
        return d, rhs

    a, a2 = _symbolic_matrix("ga", n, n), _symbolic_matrix("ka", n, n)
    b, b2 = _symbolic_matrix("gb", n, 1), _symbolic_matrix("kb", n, 1)
    c, c2 = _symbolic_matrix("gc", 1, n), _symbolic_matrix("kc", 1, n)
    lhs = _rf_mul(bruhat(a, b, c), bruhat(a2, b2, c2))
    d, rhs = factors(a, b, c, a2, b2, c2)
    holds = all(x == d * y for xr, yr in zip(lhs, rhs) for x, y in zip(xr, yr))

    zc = [[RationalFunction(0)] for _ in range(n)]
    zr = [[RationalFunction(0)] * n]
    lhs0 = _rf_mul(bruhat(a, b, c), _rf_block(a2, zero_col, zero_row, ONE))
    d0, rhs0 = factors(a, b, c, a2, zc, zr)
    specialized = d0 == ONE and all(x == y for xr, yr in zip(lhs0, rhs0) for x, y in zip(xr, yr))
    return BruhatReport(n, holds, specialized, "d = 1 + c b'")
