"""One test per acceptance criterion, each with its stated time limit."""
from __future__ import annotations

import json
import subprocess
import sys
import time

from rslv import suites
from rslv.report import PASS


def _all_pass(checks):
    failed = [f"{c.name}: {c.detail}" for c in checks if c.status != PASS]
    assert not failed, failed
    assert checks


class Timer:
    def __init__(self, limit_s: float):
        self.limit = limit_s

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


def test_criterion_1_spectral_weight_chain():
    with Timer(120):
        checks = suites.run_residue(2, "symbolic") + suites.run_residue(3, "symbolic")
    _all_pass(checks)
    with Timer(60):
        numeric = suites.run_residue(4, "numeric", seeds=10, seed=0)
    _all_pass(numeric)
    assert len({c.name.split(".")[3] for c in numeric}) == 10


def test_criterion_2_unramified_zeta_identities():
    with Timer(120):
        checks = [c for m in (2, 3, 4) for c in suites.run_zeta(m, 6, "m1")]
        checks += [c for m in (2, 3) for c in suites.run_zeta(m, 6, "mm")]
    _all_pass(checks)
    assert len(checks) == 5


def test_criterion_3_whittaker_recursion():
    with Timer(120):
        checks = [c for m in (2, 3, 4) for c in suites.run_whittaker(m, 4)]
    _all_pass(checks)
    # dominant nu of length m-1 with |nu| <= 4: 5 + 9 + 11 vectors
    assert sum(".recursion." in c.name for c in checks) == 25


def test_criterion_4_degenerate_term_identity():
    with Timer(180):
        checks = suites.run_degenerate(2) + suites.run_degenerate(3, order=3)
        checks += suites.run_degenerate(4, mode="numeric", seeds=10, seed=0)
        for n in (2, 3, 4):
            checks += suites.hsum_table_checks(n)
    _all_pass(checks)
    table = {c.name for c in checks if c.name.startswith("degenerate.hsum.n")}
    assert len(table) == sum((n + 1) * 6 for n in (2, 3, 4))
    assert sum(c.name.endswith("A_plus_B_equals_C") and ".swapped." not in c.name for c in checks) == 12


def test_criterion_5_coset_geometry():
    expected_counts = {(2, 2): 7, (2, 3): 8, (2, 5): 10, (3, 2): 7}
    with Timer(300):
        per_case = {nq: suites.run_cosets(*nq, "all") for nq in expected_counts}
    for (n, q), checks in per_case.items():
        _all_pass(checks)
        summary = {c.name: c.detail for c in checks if c.name.endswith(".summary")}
        assert summary[f"cosets.n{n}.q{q}.GxG.summary"].startswith(f"{expected_counts[n, q]} classes")
        for variant, count in (("PxG", 3), ("GxP", 3), ("PxP", 2)):
            assert summary[f"cosets.n{n}.q{q}.{variant}.summary"].startswith(f"{count} classes")
        assert any(c.name.endswith("orbit_times_stabilizer_is_gn_squared") for c in checks)


def test_criterion_6_index_volume_identity():
    expected = {(2, 2, 1): 7, (2, 2, 2): 28, (2, 3, 1): 13, (3, 2, 1): 15}
    with Timer(120):
        results = {k: suites.run_index(*k) for k in expected}
    for (n, p, e), checks in results.items():
        _all_pass(checks)
        assert f"index {expected[n, p, e]}," in checks[0].detail


def test_criterion_7_support_shadow():
    with Timer(60):
        checks = suites.run_support(2, 2, 1, 500, 0) + suites.run_support(2, 3, 2, 500, 0)
    _all_pass(checks)
    valuation = [c for c in checks if c.name.endswith("valuation_at_least_e")]
    assert len(valuation) == 2
    assert all(c.detail.startswith("500/500 used samples") for c in valuation)


def test_criterion_8_bruhat_factorization():
    with Timer(60):
        checks = suites.run_bruhat(2) + suites.run_bruhat(3)
    _all_pass(checks)


def test_criterion_9_determinism():
    cmd = [sys.executable, "-m", "rslv", "verify-all", "--profile", "desk", "--seed", "0"]
    runs = [subprocess.run(cmd, capture_output=True, text=True, timeout=900) for _ in range(2)]
    for r in runs:
        assert r.returncode == 0, r.stderr
    first, second = (json.loads(r.stdout) for r in runs)
    assert json.dumps(first["checks"], sort_keys=True) == json.dumps(second["checks"], sort_keys=True)
    assert first["params"] == second["params"]
