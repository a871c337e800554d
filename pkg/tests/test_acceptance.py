"""Acceptance gate: one recorded pass/fail line per criterion."""
from __future__ import annotations

import random
import time

import pytest

from leibniz_cohomology.cochain_complexes import (
    HomologyChain,
    TensorCochain,
    WedgeCochain,
    ce_coboundary,
    d_star,
    homology_differential,
    leibniz_coboundary,
    phi_iso,
)
from leibniz_cohomology.cohomology_engine import (
    Budget,
    ChainMap,
    ComplexHandle,
    cohomology_dims,
    induced_map_rank,
    is_coboundary,
    is_cocycle,
    long_exact_sequence,
)
from leibniz_cohomology.connection_calc import bracket_table_mismatches, run_battery, standard_checks
from leibniz_cohomology.exact_linalg import RankConfig, SparseRationalMatrix, rank
from leibniz_cohomology.lie_core import build_h_n, build_sl_2, build_so_n, make_module
from leibniz_cohomology.named_cochains import (
    build_catalog,
    expected_invariant_tables,
    invariant_tables,
    verify_invariance,
    verify_relations,
)

SEED = 20240601
GAMMA = "delta Gamma = (n-1)(-1)^(n-1) mu"


def _dims(h, top, mode="exact", k_min=0, budget=None):
    return cohomology_dims(h, top, mode, budget=budget, k_min=k_min).dims


def test_criterion_1(acceptance_log):
    h = ComplexHandle.leibniz(build_h_n(3))
    t = time.perf_counter()
    dims = _dims(h, 4, "exact")
    elapsed = time.perf_counter() - t
    stretch = _dims(h, 5, "modular", k_min=5)
    ok = dims == [0, 1, 1, 1, 1] and elapsed <= 600 and stretch == [1]
    acceptance_log(1, ok, f"HL(h_3; h_3) degrees 0..4 = {dims} exact in {elapsed:.1f} s; "
                          f"stretch degree 5 (modular) = {stretch[0]}")
    assert ok


def test_criterion_2(acceptance_log):
    h = ComplexHandle.leibniz(build_h_n(4))
    t = time.perf_counter()
    dims = _dims(h, 3, "exact")
    elapsed = time.perf_counter() - t
    stretch = _dims(h, 4, "modular", k_min=4)
    ok = dims == [0, 1, 1, 0] and elapsed <= 900 and stretch == [1]
    acceptance_log(2, ok, f"HL(h_4; h_4) degrees 0..3 = {dims} exact in {elapsed:.1f} s; "
                          f"stretch degree 4 (modular) = {stretch[0]}")
    assert ok


def test_criterion_3(acceptance_log):
    h3 = build_h_n(3)
    t = time.perf_counter()
    got = {
        "h_3; R": _dims(ComplexHandle.ce(h3, "trivial"), 6),
        "h_3; h_3": _dims(ComplexHandle.ce(h3, "adjoint"), 6),
        "h_3; h_3'": _dims(ComplexHandle.ce(h3, "coadjoint"), 6),
        "so(3); R": _dims(ComplexHandle.ce(build_so_n(3), "trivial"), 3),
        "so(4); R": _dims(ComplexHandle.ce(build_so_n(4), "trivial"), 6),
    }
    elapsed = time.perf_counter() - t
    want = {
        "h_3; R": [1, 0, 0, 2, 0, 0, 1],
        "h_3; h_3": [0, 1, 1, 0, 1, 1, 0],
        "h_3; h_3'": [0, 1, 1, 0, 1, 1, 0],
        "so(3); R": [1, 0, 0, 1],
        "so(4); R": [1, 0, 0, 2, 0, 0, 1],
    }
    ok = got == want and elapsed <= 60
    acceptance_log(3, ok, "; ".join(f"H_Lie({k}) = {v}" for k, v in got.items()) + f" ({elapsed:.1f} s)")
    assert ok


def test_criterion_4(acceptance_log):
    h3 = build_h_n(3)
    hr = _dims(ComplexHandle.cr(h3), 3)
    rel = long_exact_sequence("rel", h3, through=4, verify_lifts=True)
    co = long_exact_sequence("coadjoint", h3, through=3, verify_lifts=True)
    ce, cl = ComplexHandle.ce(h3), ComplexHandle.leibniz(h3)
    pi2 = induced_map_rank(ChainMap.skew_inclusion(ce, cl), 2)
    lie2, hl2 = _dims(ce, 2, k_min=2)[0], _dims(cl, 2, k_min=2)[0]
    rel0 = _dims(ComplexHandle.rel(h3), 0)[0]
    ok = (hr == [2, 0, 0, 1] and rel.exact and co.exact and pi2 == lie2 == hl2 == 1 and rel0 == 0)
    acceptance_log(4, ok, f"HR(h_3) = {hr}; Lie-to-Leibniz sequence exact at {len(rel.nodes)} nodes "
                          f"({rel.lifts_checked} lifts checked); coadjoint sequence exact at "
                          f"{len(co.nodes)} nodes; H^2_Lie -> HL^2 rank {pi2} between 1-dim spaces; "
                          f"H^0_rel = {rel0}")
    assert ok


def _criterion_5_parts():
    failures, gamma = [], {}
    for n in (3, 4, 5):
        report = verify_relations(n)
        for check in report.checks:
            if check.name == GAMMA:
                gamma[n] = check
            elif not check.passed:
                failures.append(f"n={n} {check.name}")
    classes = {}
    for n in (3, 4):
        cat = build_catalog(n)
        h = ComplexHandle.leibniz(cat.algebra)
        hl = _dims(h, 2)
        for name, degree in (("I", 1), ("rho", 2)):
            f = cat[name].extended
            ok = is_cocycle(f, h) and is_coboundary(f, h)[0] is False and hl[degree] == 1
            classes[(n, name)] = ok
            if not ok:
                failures.append(f"n={n} [{name}]")
    return failures, gamma, classes


def test_criterion_5(acceptance_log):
    failures, gamma, classes = _criterion_5_parts()
    gamma_ok = {n: c.passed for n, c in gamma.items()}
    observed = {n: c.detail["observed_factor"] for n, c in gamma.items()}
    ok = not failures and all(gamma_ok.values())
    bad = [n for n, good in gamma_ok.items() if not good]
    text = (f"dI = drho = dgamma* = dw* = 0 and dg* = -2s* for n = 3, 4, 5; [I], [rho] span HL^1, HL^2 "
            f"for n = 3, 4: {'yes' if not failures else failures}; "
            f"dGamma factor observed {observed}, stated (n-1)(-1)^(n-1)")
    if bad:
        w = gamma[bad[0]].witness
        text += (f"; stated sign fails at n = {bad} (witness {w['tuple']} -> {w['target']}: "
                 f"lhs {w['lhs']}, rhs {w['rhs']})")
    acceptance_log(5, ok, text)
    # everything except the even-n sign of dGamma must hold; the observed factor is n - 1
    assert not failures
    assert observed == {3: "2", 4: "3", 5: "4"}
    assert gamma_ok[3] and gamma_ok[5]


@pytest.mark.xfail(strict=True, reason="dGamma = (n-1) mu is observed for every n; the stated "
                                        "(n-1)(-1)^(n-1) factor has the opposite sign at n = 4")
def test_criterion_5_gamma_sign_n4():
    assert verify_relations(4).get(GAMMA).passed


def test_criterion_6(acceptance_log):
    parts, ok = [], True
    for n in (3, 4, 5):
        got, want = invariant_tables(n), expected_invariant_tables(n)
        for key in got:
            ok &= all(w is None or g == w for g, w in zip(got[key], want[key]))
        parts.append(f"n={n} {got}")
    baseline = invariant_tables(4)["so (x) wedge J"][2]
    acceptance_log(6, ok, "; ".join(parts) + f"; n=4 k=2 baseline = {baseline}")
    assert ok and baseline == 2


def test_criterion_7(acceptance_log):
    t = time.perf_counter()
    one_dim = run_battery("one_dim", degree=3, cases=20, seed=SEED)
    batteries = [one_dim] + [run_battery(name, dim=dim, degree=2, cases=5, seed=SEED)
                             for name in ("laplacian", "repeated_slot", "trace") for dim in (2, 3)]
    fixed = standard_checks()
    elapsed = time.perf_counter() - t
    failed = [b.identity for b in batteries if not b.ok] + [name for name, holds, _ in fixed if not holds]
    ok = not failed and elapsed <= 30 and one_dim.passed == 20
    acceptance_log(7, ok, f"one-dim formula {one_dim.passed}/20; {len(batteries) - 1} identity batteries "
                          f"on R^2, R^3; {len(fixed)} fixed instances (second derivative, laplacian, "
                          f"hyperbolic and sphere curvature, harmonic/non-harmonic); "
                          f"failures {failed}; {elapsed:.1f} s")
    assert ok


def _random_tensor(rng, alg, mdim, k):
    return TensorCochain(k, alg.dim, mdim, {(tuple(rng.randrange(alg.dim) for _ in range(k)),
                                             rng.randrange(mdim)): rng.randint(-3, 3) for _ in range(4)})


def _random_wedge(rng, alg, mdim, k):
    return WedgeCochain(k, alg.dim, mdim, {(tuple(sorted(rng.sample(range(alg.dim), k))),
                                            rng.randrange(mdim)): rng.randint(-3, 3) for _ in range(4)})


def test_criterion_8(acceptance_log):
    rng = random.Random(SEED)
    algs = [build_h_n(3), build_h_n(4), build_so_n(4), build_sl_2()]
    counts = dict.fromkeys(("delta^2 Leibniz", "delta^2 CE", "d^2", "Jacobi", "module axiom", "Phi",
                            "brackets", "modular = exact"), 0)
    failures = []
    for _ in range(30):
        alg = rng.choice(algs)
        V = make_module(alg, rng.choice(("adjoint", "coadjoint", "trivial")))
        f = _random_tensor(rng, alg, V.dim, rng.randint(0, 2))
        if not leibniz_coboundary(leibniz_coboundary(f, alg, V), alg, V).is_zero():
            failures.append("delta^2 Leibniz")
        counts["delta^2 Leibniz"] += 1
        a = _random_wedge(rng, alg, V.dim, rng.randint(0, 3))
        if not ce_coboundary(ce_coboundary(a, alg, V), alg, V).is_zero():
            failures.append("delta^2 CE")
        counts["delta^2 CE"] += 1
        c = _random_wedge(rng, alg, V.dim, rng.randint(2, 3))
        chain = HomologyChain(c.arity, alg.dim, V.dim, dict(c.items()))
        if not homology_differential(homology_differential(chain, alg, V), alg, V).is_zero():
            failures.append("d^2")
        counts["d^2"] += 1
        co, adj = make_module(alg, "coadjoint"), make_module(alg, "adjoint")
        b = _random_wedge(rng, alg, alg.dim, rng.randint(0, 2))
        if dict(phi_iso(ce_coboundary(b, alg, co)).items()) != dict(d_star(phi_iso(b), alg, adj).items()):
            failures.append("Phi")
        counts["Phi"] += 1
    for alg in algs:
        alg.check_jacobi()
        counts["Jacobi"] += 1
        for kind in ("adjoint", "coadjoint", "trivial"):
            make_module(alg, kind).check_axiom()
            counts["module axiom"] += 1
    for n in (2, 3, 4, 5):
        if bracket_table_mismatches(build_h_n(n), n):
            failures.append(f"brackets n={n}")
        counts["brackets"] += 1
    cfg = RankConfig(min_primes=3, seed=SEED)
    for _ in range(30):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        m = SparseRationalMatrix.from_dense([[rng.randint(-3, 3) for _ in range(c)] for _ in range(r)])
        if rank(m, "modular", cfg).rank != rank(m, "exact").rank:
            failures.append("modular = exact")
        counts["modular = exact"] += 1
    h3 = ComplexHandle.leibniz(build_h_n(3))
    if _dims(h3, 3, "modular") != _dims(h3, 3, "exact"):
        failures.append("modular = exact (complex)")
    ok = not failures
    acceptance_log(8, ok, f"seed {SEED}: " + ", ".join(f"{k} x{v}" for k, v in counts.items())
                          + f"; failures {failures}; hypothesis suites in the module tests")
    assert ok
