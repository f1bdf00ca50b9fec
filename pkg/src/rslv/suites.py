"""Verification suites: each runner returns a list of named checks.

Check details are deterministic functions of the parameters and seed, so
two runs with the same arguments produce identical check arrays.
"""
from __future__ import annotations

from math import comb
from typing import Callable, Iterable

from .cosets.audits import (
    MIRABOLIC_REPS,
    OrbitReport,
    bilateral_invariance_check,
    bruhat_product_identity_check,
    element_budget,
    exhaustive_partition_audit,
    mirabolic_partition_audit,
    stabilizer_audit,
    xi_t_valuation_check,
)
from .degenerate_term import (
    HSUM_SIGN,
    DegenerateContext,
    degenerate_assemble_and_verify,
    degenerate_B1,
    hsum_expected,
    hsum_identity,
    hsum_value,
    level_volume_identity,
    resolve_hsum_sign,
    series_cross_check,
)
from .errors import BudgetExceeded, ConsistencyError, DomainError
from .report import Check, check, skipped
from .satake_whittaker import (
    SatakeData,
    dominant_vectors,
    rs_lfactor,
    whittaker_recursion_sides,
    zeta_series_gl_m_m,
    zeta_series_gl_m_m1,
)
from .spectral_weight import (
    ResidueContext,
    lagrange_step_sides,
    residue_eval_1,
    residue_eval_2,
    residue_target_1,
    residue_target_1_lform,
    residue_target_2,
    spectral_weight_closed,
    spectral_weight_trace,
)
from .symfunc import partitions, schur, schur_jacobi_trudi

MODES = ("symbolic", "numeric")
COSET_VARIANTS = ("GxG", "PxG", "GxP", "PxP", "all")
ZETA_KINDS = ("both", "m1", "mm")
HSUM_MAX_M = 6


def symbolic_residue_estimate(n: int) -> int:
    """Rough term-count bound for the fully symbolic residue chain at rank n."""
    return 2 ** (comb(n + 1, 2) + n * (n + 1) + 1)


def _guarded(name: str, fn: Callable[[], bool], detail: str = "") -> Check:
    """Run a boolean check; an internal consistency failure counts as a failed check."""
    try:
        ok = fn()
    except ConsistencyError as exc:
        return check(name, False, f"consistency error: {exc}")
    return check(name, ok, detail)


# --- spectral weight -------------------------------------------------------


def _residue_checks(prefix: str, ctx: ResidueContext) -> list[Check]:
    out = [check(f"{prefix}.trace_equals_closed_form", spectral_weight_trace(ctx) == spectral_weight_closed(ctx))]
    r1 = residue_eval_1(ctx)
    t1 = residue_target_1(ctx)
    out.append(check(f"{prefix}.residue1_equals_target", r1 == t1))
    out.append(check(f"{prefix}.residue1_target_equals_lfactor_form", t1 == residue_target_1_lform(ctx)))
    out.append(check(f"{prefix}.residue2_equals_target", residue_eval_2(ctx) == residue_target_2(ctx)))
    lhs, rhs = lagrange_step_sides(ctx)
    out.append(check(f"{prefix}.lagrange_step", lhs == rhs))
    return out


def run_residue(n: int, mode: str = "symbolic", seeds: int = 10, seed: int = 0,
                budget: int | None = None) -> list[Check]:
    if n < 2:
        raise DomainError("the residue chain needs n >= 2")
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}")
    if mode == "symbolic":
        estimate = symbolic_residue_estimate(n)
        cap = element_budget(budget)
        if estimate > cap:
            raise BudgetExceeded(f"symbolic residue chain at n={n}", estimate, cap)
        ctx = ResidueContext.symbolic(n)
        prefix = f"residue.n{n}.symbolic"
        out = _residue_checks(prefix, ctx)
        names = sorted(set().union(residue_eval_1(ctx).variable_names(), residue_eval_2(ctx).variable_names()))
        allowed = {"T1", "T2", "V"} | {f"a{i}" for i in range(1, n + 1)} | {f"b{i}" for i in range(1, n + 1)}
        out.append(check(f"{prefix}.residues_free_of_x", set(names) <= allowed, " ".join(names)))
        return out
    if seeds < 1:
        raise DomainError("need at least one seed")
    out = []
    for i in range(seeds):
        ctx = ResidueContext.numeric(n, seed + i)
        out.extend(_residue_checks(f"residue.n{n}.numeric.seed{seed + i}", ctx))
    return out


# --- degenerate term -------------------------------------------------------


def hsum_table_checks(n: int, unit_product: bool = True, max_m: int = HSUM_MAX_M) -> list[Check]:
    b = SatakeData.symbolic("b", n, unit_product)
    out = []
    for k in range(n + 1):
        for m in range(1, max_m + 1):
            name = f"degenerate.hsum.n{n}.k{k}.m{m}"
            if m < k:
                out.append(_guarded(name, lambda: hsum_value(b, k, m).is_zero(), "vanishes (m < k)"))
            else:
                out.append(_guarded(
                    name,
                    lambda: hsum_identity(b, k, m) == hsum_expected(b, k, m),
                    f"h_{m - k} at inverted parameters",
                ))
    return out


def _assembly_checks(prefix: str, ctx: DegenerateContext) -> list[Check]:
    def b1_forms_agree() -> bool:
        for j in range(1, ctx.n + 1):
            degenerate_B1(ctx, j)
        return True

    out = [_guarded(f"{prefix}.B1_forms_agree", b1_forms_agree)]
    rep = degenerate_assemble_and_verify(ctx)
    out.append(check(f"{prefix}.A_plus_B_equals_C", rep.identity_holds))
    out.append(check(f"{prefix}.B_equals_C_minus_A", rep.b_equals_c_minus_a))
    return out


def run_degenerate(n: int, order: int = 4, mode: str | None = None, seeds: int = 10, seed: int = 0,
                   drop_unit_product: bool = False) -> list[Check]:
    if n < 2:
        raise DomainError("the degenerate term needs n >= 2")
    if order < 0:
        raise DomainError("order must be nonnegative")
    mode = mode or ("symbolic" if n <= 3 else "numeric")
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}")
    unit = not drop_unit_product
    out = hsum_table_checks(n, unit)
    sign = resolve_hsum_sign()
    out.append(check("degenerate.hsum_sign_resolved", sign == HSUM_SIGN, f"sign {sign}"))

    if mode == "symbolic":
        contexts = [(f"degenerate.n{n}.symbolic", DegenerateContext.symbolic(n, unit))]
    else:
        if seeds < 1:
            raise DomainError("need at least one seed")
        contexts = [(f"degenerate.n{n}.numeric.seed{seed + i}", DegenerateContext.numeric(n, seed + i, unit))
                    for i in range(seeds)]

    if drop_unit_product:
        for prefix, ctx in contexts:
            rep = degenerate_assemble_and_verify(ctx)
            cex = "none" if rep.counterexample is None else f"(U,W) exponent {rep.counterexample}"
            out.append(check(f"{prefix}.assembly.expected_fail_without_unit_product",
                             not rep.identity_holds, f"first differing coefficient {cex}"))
        out.append(skipped(f"degenerate.n{n}.series_cross_check", "needs the unit product"))
        return out

    for prefix, ctx in contexts:
        out.extend(_assembly_checks(prefix, ctx))
        if mode == "symbolic":
            sw = ctx.swapped()
            out.append(check(f"{prefix}.swapped.A_plus_B_equals_C", degenerate_assemble_and_verify(sw).identity_holds))
    prefix, ctx = contexts[0]
    bad = series_cross_check(ctx, (order, order))
    out.append(check(f"{prefix}.series_cross_check", not bad,
                     f"order {order}" + (f", mismatches {bad[:5]}" if bad else "")))
    return out


# --- Whittaker and zeta ----------------------------------------------------


def run_whittaker(m: int, max_weight: int = 4) -> list[Check]:
    if m < 2:
        raise DomainError("the recursion needs m >= 2")
    if max_weight < 0:
        raise DomainError("max weight must be nonnegative")
    pi = SatakeData.symbolic("u", m, True)
    out = []
    for nu in dominant_vectors(m - 1, max_weight):
        lhs, rhs = whittaker_recursion_sides(pi, nu)
        out.append(check(f"whittaker.m{m}.recursion.nu{','.join(map(str, nu))}", lhs == rhs))
    names = tuple(f"s{i}" for i in range(1, m + 1))
    agree = all(schur(p, names) == schur_jacobi_trudi(p, names)
                for w in range(max_weight + 1) for p in partitions(w, m))
    out.append(check(f"whittaker.m{m}.schur_bialternant_matches_jacobi_trudi", agree,
                     f"all partitions of weight <= {max_weight}"))
    return out


def run_zeta(m: int, order: int = 6, kind: str = "both") -> list[Check]:
    if kind not in ZETA_KINDS:
        raise DomainError(f"kind must be one of {ZETA_KINDS}")
    if m < 1 or order < 0:
        raise DomainError("need m >= 1 and order >= 0")
    out = []
    if kind in ("both", "m1"):
        if m < 2:
            raise DomainError("GL(m) x GL(m-1) needs m >= 2")
        big, small = SatakeData.symbolic("x", m), SatakeData.symbolic("y", m - 1)
        bad = zeta_series_gl_m_m1(big, small, order).mismatches(rs_lfactor(big, small).series(order))
        out.append(check(f"zeta.m{m}.gl_m_x_gl_m-1.order{order}", not bad, f"mismatching orders {bad}"))
    if kind in ("both", "mm"):
        pi, pi2 = SatakeData.symbolic("x", m), SatakeData.symbolic("y", m)
        bad = zeta_series_gl_m_m(pi, pi2, order).mismatches(rs_lfactor(pi, pi2).series(order))
        out.append(check(f"zeta.m{m}.gl_m_x_gl_m.order{order}", not bad, f"mismatching orders {bad}"))
    return out


# --- cosets ----------------------------------------------------------------


def _orbit_checks(prefix: str, rep: OrbitReport) -> list[Check]:
    sizes = ", ".join(f"{k}:{v}" for k, v in sorted(rep.orbit_sizes.items()))
    out = [check(f"{prefix}.{flag}", ok) for flag, ok in sorted(rep.flags.items())]
    out.append(check(f"{prefix}.summary", rep.ok,
                     f"{len(rep.orbit_sizes)} classes, group order {rep.group_order}; {sizes}"
                     + ("; " + "; ".join(rep.notes) if rep.notes else "")))
    return out


def run_cosets(n: int, q: int, variant: str = "all", budget: int | None = None, seed: int = 0,
               trials: int = 10 ** 4) -> list[Check]:
    if variant not in COSET_VARIANTS:
        raise DomainError(f"variant must be one of {COSET_VARIANTS}")
    prefix = f"cosets.n{n}.q{q}"
    out: list[Check] = []
    if variant in ("GxG", "all"):
        out.extend(_orbit_checks(f"{prefix}.GxG", exhaustive_partition_audit(n, q, budget)))
        stab = stabilizer_audit(n, q, budget)
        out.extend(check(f"{prefix}.stabilizers.{k}", v) for k, v in sorted(stab.flags.items()))
        passed, total = bilateral_invariance_check(n, q, trials, seed)
        out.append(check(f"{prefix}.bilateral_invariance", passed == total, f"{passed}/{total} seed {seed}"))
    for v in MIRABOLIC_REPS:
        if variant in (v, "all"):
            out.extend(_orbit_checks(f"{prefix}.{v}", mirabolic_partition_audit(n, q, v, budget)))
    return out


def run_index(n: int, p: int, e: int, budget: int | None = None) -> list[Check]:
    rep = level_volume_identity(n, p, e, True, budget)
    prefix = f"index.n{n}.p{p}.e{e}"
    return [
        check(f"{prefix}.enumerated_matches_formula", rep.enumerated_index == rep.formula_index,
              f"index {rep.enumerated_index}, formula {rep.formula_index}"),
        check(f"{prefix}.volume_identity", rep.identity_holds, "q^(-en)/vol = zeta(1)/zeta(n+1)"),
    ]


def run_support(n: int, p: int, e: int, samples: int = 500, seed: int = 0) -> list[Check]:
    rep = xi_t_valuation_check(n, p, e, samples, seed)
    used = rep.samples - rep.skipped
    prefix = f"support.n{n}.p{p}.e{e}"
    return [
        check(f"{prefix}.valuation_at_least_e", used > 0 and rep.valuation_ok == used,
              f"{rep.valuation_ok}/{used} used samples, min valuation {rep.min_valuation}, seed {seed}"),
        check(f"{prefix}.one_minus_t_is_unit", used > 0 and rep.unit_ok == used, f"{rep.unit_ok}/{used}"),
        check(f"{prefix}.adjugate_identity", used > 0 and rep.identity_ok == used, f"{rep.identity_ok}/{used}"),
        check(f"{prefix}.enough_samples", used >= min(samples, 500), f"{used} used, {rep.skipped} skipped"),
    ]


def run_bruhat(n: int) -> list[Check]:
    rep = bruhat_product_identity_check(n)
    return [
        check(f"bruhat.n{n}.product_identity", rep.identity_holds, rep.scalar),
        check(f"bruhat.n{n}.block_diagonal_specialization", rep.specialization_holds),
    ]


# --- profiles --------------------------------------------------------------

DESK_COSET_CASES = ((2, 2), (2, 3), (2, 5), (3, 2))
DESK_INDEX_CASES = ((2, 2, 1), (2, 2, 2), (2, 3, 1), (3, 2, 1))
DESK_SUPPORT_CASES = ((2, 2, 1), (2, 3, 2))


def desk_profile(seed: int = 0, budget: int | None = None) -> Iterable[tuple[str, list[Check]]]:
    """Sections of the desk-scale acceptance run, in a fixed order."""
    yield "residue", run_residue(2, "symbolic") + run_residue(3, "symbolic", budget=budget) \
        + run_residue(4, "numeric", seeds=10, seed=seed)
    yield "zeta", run_zeta(2) + run_zeta(3) + run_zeta(4, kind="m1")
    yield "whittaker", [c for m in (2, 3, 4) for c in run_whittaker(m, 4)]
    deg = run_degenerate(2) + run_degenerate(3, order=3) + run_degenerate(4, seed=seed)
    yield "degenerate", list({c.name: c for c in deg}.values())
    yield "cosets", [c for n, q in DESK_COSET_CASES for c in run_cosets(n, q, "all", budget, seed)]
    yield "index", [c for n, p, e in DESK_INDEX_CASES for c in run_index(n, p, e, budget)]
    yield "support", [c for n, p, e in DESK_SUPPORT_CASES for c in run_support(n, p, e, 500, seed)]
    yield "bruhat", run_bruhat(2) + run_bruhat(3)


PROFILES = {"desk": desk_profile}
