"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line."""
import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import cplx, herm, rel
from matnorm.gauge import h_q_two_point, inequality_suite, schur_pair_check
from matnorm.linalg_core import random_unitary, schatten_norm
from matnorm.montecarlo import MCConfig, mc_moment, mc_simplex_power
from matnorm.partitions import dim_sym, partitions_of, z_beta
from matnorm.polarization import mixed_moment_general
from matnorm.sym_trace import normalized_sym_trace, sym_power_matrix, sym_trace_brute
from matnorm.ui_norms import expansion_terms, n_k, n_k_p, n_prime
from matnorm.wui_moments import (
    bound_report,
    combined_closed,
    mixed_moment_closed,
    moment_stats,
    n_psi,
    n_psi0,
    n_psi0_mc,
    n_psi_mc,
    permuted_moments,
    phi2,
    phi4,
    phi_closed,
)

SIGMAS = 4.0
MC_N = 1_000_000


def report(capsys, label, ok, detail):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
    assert ok, f"{label}: {detail}"


def test_criterion_01_triple_agreement(capsys):
    rng = np.random.default_rng(101)
    worst_rel, worst_z = 0.0, 0.0
    for i in range(50):
        n, k = int(rng.integers(1, 5)), int(rng.integers(1, 6))
        A = cplx(rng, n)
        formula = normalized_sym_trace(A, k, method="partition").value
        brute = sym_trace_brute(A, k).value
        worst_rel = max(worst_rel, rel(formula, brute))
        est = mc_moment("numerical-power", (A, k), MCConfig(MC_N, seed=1000 + i))
        worst_z = max(worst_z, est.zscore(formula))
    ok = worst_rel <= 1e-9 and worst_z <= SIGMAS
    report(capsys, "1 normalized trace: partition = brute force = MC", ok, f"max rel {worst_rel:.2e}, max z {worst_z:.2f}")


def test_criterion_02_partition_sanity(capsys):
    worst = max(abs(sum(1.0 / z_beta(b) for b in partitions_of(k)) - 1.0) for k in range(1, 21))
    exact = all(sum(Fraction(1, z_beta(b)) for b in partitions_of(k)) == 1 for k in range(1, 21))
    order3 = [c for c, _ in expansion_terms(3)] == [Fraction(1, 3), Fraction(1, 2), Fraction(1, 6)]

    rng = np.random.default_rng(102)
    worst_ii, wrong_gap = 0.0, math.inf
    for _ in range(20):
        A = cplx(rng, 3)
        s = {p: schatten_norm(A, p) for p in (1, 2, 3, 4)}
        target = dim_sym(3, 4) * n_k(A, 4) ** 4
        corrected = s[4] ** 4 / 4 + s[3] ** 3 * s[1] / 3 + s[2] ** 4 / 8 + s[2] ** 2 * s[1] ** 2 / 4 + s[1] ** 4 / 24
        wrong = s[4] ** 4 / 4 + s[3] ** 3 * s[1] / 3 + s[4] ** 4 / 8 + s[2] ** 2 * s[1] ** 2 / 4 + s[1] ** 4 / 24
        worst_ii = max(worst_ii, rel(corrected, target))
        wrong_gap = min(wrong_gap, rel(wrong, target))
    ok = worst < 1e-12 and exact and order3 and worst_ii < 1e-12 and wrong_gap > 1e-6
    report(
        capsys,
        "2 partition weights and order-3/4 expansions",
        ok,
        f"sum err {worst:.1e}, order-3 coefficients {order3}, corrected (2,2) rel {worst_ii:.1e}, s4 in place of s2 misses by >= {wrong_gap:.1e}",
    )


def test_criterion_03_symmetric_power_schatten(capsys):
    rng = np.random.default_rng(103)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(1, 5))
        A = cplx(rng, n)
        for k in range(1, 5):
            sv = np.linalg.svd(sym_power_matrix(A, k), compute_uv=False)
            for p in (1.0, 1.5, 2.0, 3.0):
                left = dim_sym(n, k) ** (1 / (k * p)) * n_k_p(A, k, p)
                right = np.sum(sv**p) ** (1 / (p * k))
                worst = max(worst, rel(left, right))
    report(capsys, "3 scaled N_k^(p) = Schatten norm of the symmetric power", worst <= 1e-9, f"max rel {worst:.2e}")


def test_criterion_04_norm_axioms(capsys):
    rng = np.random.default_rng(104)
    tri, inv, winv = 0.0, 0.0, 0.0
    for t in range(200):
        n = int(rng.integers(1, 6))
        A, B = cplx(rng, n), cplx(rng, n)
        U, V = random_unitary(n, 2 * t), random_unitary(n, 2 * t + 1)
        k, q = int(rng.integers(1, 6)), int(rng.integers(1, 5))
        p = float(rng.choice([1.0, 1.5, 2.0, 3.0]))
        for f in (lambda M: n_k(M, k), lambda M: n_k_p(M, k, p), lambda M: n_prime(M, q).value):
            fa, fb = f(A), f(B)
            tri = max(tri, f(A + B) - fa - fb)
            inv = max(inv, rel(f(U @ A @ V), fa))
        for f in (phi2, phi4, n_psi, n_psi0):
            fa, fb = f(A), f(B)
            tri = max(tri, f(A + B) - fa - fb)
            winv = max(winv, rel(f(U @ A @ U.conj().T), fa))
    ok = tri <= 1e-9 and inv <= 1e-9 and winv <= 1e-9
    report(capsys, "4 triangle inequality and (weak) unitary invariance", ok, f"triangle excess {tri:.2e}, u.i. {inv:.2e}, w.u.i. {winv:.2e}")


def _naive_pair_moment(A, B):
    # (tr(AB) + tr A tr B) / C(n+1, 2), binomial denominator
    n = A.shape[0]
    return (np.trace(A @ B) + np.trace(A) * np.trace(B)) / math.comb(n + 1, 2)


def test_criterion_05_pair_constant(capsys):
    exact = all(mixed_moment_closed([np.eye(n), np.eye(n)]).value == 1.0 for n in range(1, 9))
    z_identity = mc_moment("mixed", [np.eye(3), np.eye(3)], MCConfig(10_000, seed=5)).zscore(1.0)
    rng = np.random.default_rng(105)
    A, B = cplx(rng, 3), cplx(rng, 3)
    est = mc_moment("mixed", [A, B], MCConfig(MC_N, seed=55))
    z_random = est.zscore(mixed_moment_closed([A, B]).value)
    naive_fails = all(abs(_naive_pair_moment(np.eye(n), np.eye(n)) - 1.0) > 0.5 for n in range(1, 9))
    naive_z = est.zscore(_naive_pair_moment(A, B))
    ok = exact and z_identity <= SIGMAS and z_random <= SIGMAS and naive_fails and naive_z > SIGMAS
    report(
        capsys,
        "5 pair moment constant n(n+1)",
        ok,
        f"I,I exact {exact}; MC z {z_identity:.2f} (I) / {z_random:.2f} (random); binomial constant rejected at z = {naive_z:.0f}",
    )


def test_criterion_05_naive_constant_fails():
    # the binomial denominator must not satisfy the identity check
    for n in range(1, 9):
        assert _naive_pair_moment(np.eye(n), np.eye(n)) == pytest.approx(2.0)
        assert _naive_pair_moment(np.eye(n), np.eye(n)) != 1.0


def test_criterion_06_four_matrix_closed_form(capsys):
    rng = np.random.default_rng(106)
    worst_pol, worst_z, worst_perm = 0.0, 0.0, 0.0
    for i in range(50):
        As = [cplx(rng, 3) for _ in range(4)]
        closed = mixed_moment_closed(As).value
        worst_pol = max(worst_pol, rel(closed, mixed_moment_general(As).value))
        worst_z = max(worst_z, mc_moment("mixed", As, MCConfig(200_000, seed=600 + i)).zscore(closed))
        worst_perm = max(worst_perm, max(abs(v - closed) for v in permuted_moments(As)) / max(1.0, abs(closed)))
    ok = worst_pol <= 1e-8 and worst_z <= SIGMAS and worst_perm <= 1e-10
    report(capsys, "6 four-matrix closed form = polarization = MC", ok, f"rel {worst_pol:.2e}, max z {worst_z:.2f}, permutation {worst_perm:.2e}")


def test_criterion_07_phi4(capsys):
    rng = np.random.default_rng(107)
    worst = 0.0
    for _ in range(50):
        H = herm(rng, int(rng.integers(1, 6)))
        worst = max(worst, rel(phi4(H), phi_closed(H, 4, "hermitian-even")))
    identity = all(phi4(np.eye(n)) == 1.0 for n in range(1, 9))
    report(capsys, "7 phi4 = Hermitian closed form; phi4(I) = 1", worst <= 1e-10 and identity, f"max rel {worst:.2e}, identity exact {identity}")


def test_criterion_08_psi_norms(capsys):
    E11 = np.diag([1.0, 0.0])
    c_psi = abs(n_psi(E11) ** 4 - 15)
    c_psi0 = abs(n_psi0(E11) ** 4 - 16)
    z_psi = n_psi_mc(E11, MCConfig(MC_N, seed=81)).zscore(15.0)
    z_psi0 = n_psi0_mc(E11, MCConfig(MC_N, seed=82)).zscore(16.0)
    comb = max(
        max(abs(moment_stats(E11, a)["combined"] - (15 + a)), abs(combined_closed(E11, a) - (15 + a)))
        for a in (0.0, 1.0, 2.5)
    )
    ok = c_psi <= 1e-10 and c_psi0 <= 1e-10 and z_psi <= SIGMAS and z_psi0 <= SIGMAS and comb <= 1e-10
    report(capsys, "8 N_Psi^4 = 15, N_Psi0^4 = 16, combined = 15 + alpha", ok, f"closed err {c_psi:.1e}/{c_psi0:.1e}, MC z {z_psi:.2f}/{z_psi0:.2f}, combined err {comb:.1e}")


def test_criterion_09_variance_identity(capsys):
    rng = np.random.default_rng(109)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 6))
        A = cplx(rng, n, scale=float(rng.uniform(0.1, 3)))
        st = moment_stats(A)
        worst = max(worst, abs(st["frobenius_sq"] - (n * st["E2"] + n**2 * st["V"])))
    report(capsys, "9 ||A||_F^2 = n E|f|^2 + n^2 V(f)", worst <= 1e-10, f"max abs err {worst:.2e}")


def test_criterion_10_gauge_inequalities(capsys):
    rng = np.random.default_rng(110)
    worst = {name: math.inf for name in ("n1", "n2", "n4", "n5", "mccarthy", "schur")}
    counts = dict.fromkeys(worst, 0)

    def note(name, slack):
        worst[name] = min(worst[name], slack)
        counts[name] += 1

    for i in range(500):
        n = int(rng.integers(1, 6))
        cfg = MCConfig(2000, seed=i)
        q = float(rng.uniform(1, 4))
        p = float(rng.uniform(1, q)) if q > 1 else 1.0
        p_small = float(rng.uniform(0.01, 0.99))
        x = rng.normal(size=n) * rng.exponential()
        y = rng.normal(size=n) * rng.exponential()
        res = inequality_suite(x, y, q, p, cfg)
        note("n1", res["n1"]["slack"])
        note("n2", res["n2"]["slack"])
        note("n4", inequality_suite(x, y, q, p_small, cfg)["n4"]["slack"])
        note("mccarthy", inequality_suite(np.abs(x), y, q, p, cfg)["mccarthy"]["slack"])
        # weakly majorized pair: shrink a doubly stochastic image of y >= 0
        yy = np.abs(y)
        mix = schur_pair_check(yy, 1, seed=i)["x"]
        xx = float(rng.uniform(0.3, 1.0)) * np.asarray(mix)
        e = inequality_suite(xx, yy, q, p, cfg)["n5"]
        assert e["applicable"]
        note("n5", e["slack"])
        note("schur", schur_pair_check(rng.normal(size=n), q, seed=10_000 + i, mc=cfg)["slack"])

    zs = []
    for i in range(20):
        x2, q = rng.uniform(0, 3, size=2), float(rng.uniform(1, 4))
        zs.append(mc_simplex_power(x2, q, MCConfig(MC_N, seed=7000 + i)).zscore(h_q_two_point(x2, q)))
    ok = all(v >= -1e-9 for v in worst.values()) and all(c == 500 for c in counts.values()) and max(zs) <= SIGMAS
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + f"; two-point max z {max(zs):.2f}"
    report(capsys, "10 gauge inequalities (min slack over 500 each)", ok, detail)


def test_criterion_11_bounds(capsys):
    rng = np.random.default_rng(111)
    worst = math.inf  # min of slack / max(stderr-band, 1e-9)
    closed_legs = 0
    for i in range(50):
        H = herm(rng, int(rng.integers(1, 5)))
        p = float(rng.choice([1, 2, 3, 4, 2.5, 3.5]))
        for entry in bound_report(H, p, MCConfig(200_000, seed=1100 + i)).values():
            closed_legs += all(m != "monte-carlo" for m in entry["methods"])
            worst = min(worst, entry["slack"] + max(1e-9, SIGMAS * entry["stderr"]))
    for i in range(50):
        A = cplx(rng, int(rng.integers(1, 5)))
        p = float(rng.uniform(1, 4))
        for entry in bound_report(A, p, MCConfig(200_000, seed=1200 + i)).values():
            worst = min(worst, entry["slack"] + max(1e-9, SIGMAS * entry["stderr"]))
    ok = worst >= 0 and closed_legs > 0
    report(capsys, "11 upper 2p bound and Riesz-Thorin interpolation", ok, f"min guarded slack {worst:.2e}, fully closed-form reports {closed_legs}")


def test_criterion_12_kernel_identity(capsys):
    rng = np.random.default_rng(112)
    worst = 0.0
    for i in range(20):
        n, k = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        z = rng.normal(size=n) + 1j * rng.normal(size=n)
        est = mc_moment("kernel", (z, k), MCConfig(MC_N, seed=1300 + i))
        target = float(np.linalg.norm(z)) ** (2 * k)
        scaled_mean = dim_sym(n, k) * est.mean
        scaled_se = dim_sym(n, k) * est.stderr
        worst = max(worst, abs(scaled_mean - target) / max(scaled_se, 1e-12 * target))
    report(capsys, "12 c_{n,k} E|<z, xi>|^{2k} = ||z||^{2k}", worst <= SIGMAS, f"max z {worst:.2f}")
