from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cplx, herm, psd, rel
from matnorm.errors import DimensionMismatch, DomainError, TooManyMatrices
from matnorm.linalg_core import random_unitary
from matnorm.montecarlo import MCConfig, mc_moment
from matnorm.sym_trace import normalized_sym_trace
from matnorm.wui_moments import (
    bound_report,
    combined_closed,
    mixed_moment_closed,
    moment_stats,
    n_psi,
    n_psi0,
    n_psi0_mc,
    n_psi_definition,
    n_psi_mc,
    pair_denominator,
    permuted_moments,
    phi2,
    phi4,
    phi4_power,
    phi_closed,
    quad_denominator,
    triple_denominator,
    weighted_l2_moment,
)

E11 = np.diag([1.0, 0.0])
E22 = np.diag([0.0, 1.0])
D = np.diag([1.0, -1.0])


def test_denominators():
    assert [pair_denominator(n) for n in (1, 2, 3)] == [2, 6, 12]
    assert triple_denominator(2) == 24
    assert quad_denominator(2) == 120


def test_mixed_closed_examples():
    for n in (1, 2, 5):
        assert mixed_moment_closed([np.eye(n)] * 4).value == pytest.approx(1)
        assert mixed_moment_closed([np.eye(n)] * 2).value == pytest.approx(1)
    assert mixed_moment_closed([E11, E22]).value == pytest.approx(1 / 6)
    assert abs(mixed_moment_closed([D, D, D]).value) < 1e-15
    assert mixed_moment_closed([E11]).value == pytest.approx(0.5)


def test_mixed_closed_errors():
    with pytest.raises(TooManyMatrices):
        mixed_moment_closed([np.eye(2)] * 5)
    with pytest.raises(DimensionMismatch):
        mixed_moment_closed([np.eye(2), np.eye(3)])


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_equal_arguments_reduce_to_sym_trace(rng, k):
    A = cplx(rng, 3)
    assert rel(mixed_moment_closed([A] * k).value, normalized_sym_trace(A, k).value) < 1e-9


def test_four_equal_matches_power_sum_form(rng):
    A = cplx(rng, 4)
    n = 4
    t = [np.trace(np.linalg.matrix_power(A, m)) for m in range(1, 5)]
    expected = (6 * t[3] + 8 * t[2] * t[0] + 3 * t[1] ** 2 + 6 * t[1] * t[0] ** 2 + t[0] ** 4) / quad_denominator(n)
    assert rel(mixed_moment_closed([A] * 4).value, expected) < 1e-9


def test_four_matrix_symmetry(rng):
    As = [cplx(rng, 3) for _ in range(4)]
    base = mixed_moment_closed(As).value
    assert max(abs(v - base) for v in permuted_moments(As)) <= 1e-10 * max(1.0, abs(base))


def test_three_matrix_symmetry(rng):
    As = [cplx(rng, 3) for _ in range(3)]
    base = mixed_moment_closed(As).value
    for perm in permutations(As):
        assert abs(mixed_moment_closed(list(perm)).value - base) <= 1e-12


def test_multilinearity(rng):
    As = [cplx(rng, 3) for _ in range(4)]
    B = cplx(rng, 3)
    a, b = 0.7 - 0.3j, -1.2
    mixed = mixed_moment_closed([a * As[0] + b * B] + As[1:]).value
    split = a * mixed_moment_closed(As).value + b * mixed_moment_closed([B] + As[1:]).value
    assert abs(mixed - split) <= 1e-10 * max(1.0, abs(split))


def test_closed_forms_against_mc():
    rng = np.random.default_rng(3)
    cfg = MCConfig(200_000, seed=12)
    for k in (2, 3, 4):
        As = [cplx(rng, 3) for _ in range(k)]
        est = mc_moment("mixed", As, cfg)
        assert est.zscore(mixed_moment_closed(As).value) < 4


def test_phi2_examples():
    assert phi2(np.eye(5)) == pytest.approx(1)
    assert phi2(np.diag([1.0, 2.0])) == pytest.approx(np.sqrt(7 / 3))
    assert phi2(D) == pytest.approx(1 / np.sqrt(3))


def test_phi_closed_examples():
    assert phi_closed(np.diag([1.0, 2.0]), 3) == pytest.approx((15 / 4) ** (1 / 3))
    assert phi_closed(D, 2, "hermitian-even") == pytest.approx(phi2(D))
    assert phi_closed(D, 4, "hermitian-even") == pytest.approx(0.2**0.25)


def test_phi_closed_domains(rng):
    with pytest.raises(DomainError):
        phi_closed(D, 3, "psd")
    with pytest.raises(DomainError):
        phi_closed(D, 3, "hermitian-even")
    with pytest.raises(DomainError):
        phi_closed(cplx(rng, 3), 2, "hermitian-even")


def test_phi_closed_psd_matches_mc():
    P = psd(np.random.default_rng(1), 3)
    est = mc_moment("abs-power", (P, 3), MCConfig(200_000, seed=4))
    assert est.agrees(phi_closed(P, 3) ** 3)


def test_signed_traces_not_schatten():
    # |A| would give 1 here; the true second moment of diag(1, -1) is 1/3
    assert phi_closed(D, 2, "hermitian-even") ** 2 == pytest.approx(1 / 3)


def test_phi4_examples():
    for n in range(1, 9):
        assert phi4(np.eye(n)) == 1.0
    assert phi4(D) == pytest.approx(0.2**0.25)


def test_phi4_matches_mc():
    A = cplx(np.random.default_rng(2), 3)
    est = mc_moment("abs-power", (A, 4), MCConfig(200_000, seed=6))
    assert est.agrees(phi4_power(A))


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_phi4_hermitian_consistency(rng, n):
    H = herm(rng, n)
    assert rel(phi4(H), phi_closed(H, 4, "hermitian-even")) < 1e-10


def test_weighted_l2_examples():
    for n in (1, 2, 4):
        assert weighted_l2_moment(np.eye(n), np.eye(n)) == pytest.approx(n * (n + 1) * (n + 2))
    assert weighted_l2_moment(D, np.eye(2)) == pytest.approx(8)
    assert weighted_l2_moment(E11, E22) == pytest.approx(2)
    with pytest.raises(DomainError):
        weighted_l2_moment(E11, D)


def test_weighted_l2_matches_triple_moment(rng):
    A, C = cplx(rng, 3), psd(rng, 3)
    triple = mixed_moment_closed([A, A.conj().T, C]).value
    assert rel(weighted_l2_moment(A, C), triple_denominator(3) * triple.real) < 1e-10


def test_n_psi_examples():
    for n in (1, 2, 3):
        assert n_psi(np.eye(n)) == pytest.approx((3 * n * (n + 1) * (n + 2)) ** 0.25)
        assert n_psi0(np.eye(n)) == pytest.approx(n_psi(np.eye(n)))
    assert n_psi(E11) ** 4 == pytest.approx(15)
    assert n_psi(D) ** 4 == pytest.approx(24)
    assert n_psi0(E11) == pytest.approx(2)


def test_n_psi_definitional_oracle(rng):
    A = cplx(rng, 3)
    assert rel(n_psi(A) ** 4, n_psi_definition(A)) < 1e-10
    # 1-D integral: |xi_1|^2 ~ U(0, 1)
    assert n_psi_definition(E11) == pytest.approx(72 / 5 + 48 / 80)


def test_n_psi_mc():
    H = herm(np.random.default_rng(5), 3)
    cfg = MCConfig(200_000, seed=5)
    assert n_psi_mc(H, cfg).agrees(n_psi(H) ** 4)
    assert n_psi0_mc(H, cfg).agrees(n_psi0(H) ** 4)


def test_moment_stats_examples():
    st_ = moment_stats(E11, 1.0)
    assert st_["combined"] == pytest.approx(16)
    st_ = moment_stats(np.diag([1.0, 2.0]))
    assert st_["E2"] == pytest.approx(7 / 3)
    assert st_["V"] == pytest.approx(7 / 3 - 9 / 4)
    assert st_["variance_identity_residual"] == pytest.approx(0, abs=1e-14)
    st_ = moment_stats(np.eye(3))
    assert st_["V"] == pytest.approx(0, abs=1e-15) and st_["mu4"] == pytest.approx(0, abs=1e-7)
    assert st_["E2"] == pytest.approx(1)


@pytest.mark.parametrize("alpha", [0.0, 1.0, 2.5])
def test_combined_closed(rng, alpha):
    assert combined_closed(E11, alpha) == pytest.approx(15 + alpha)
    A = cplx(rng, 4)
    assert rel(combined_closed(A, alpha), moment_stats(A, alpha)["combined"]) < 1e-10


def test_bound_report_examples():
    rep = bound_report(D, 2)
    assert rep["upper-2p"]["lhs"] == pytest.approx(0.2)
    assert rep["upper-2p"]["rhs"] == pytest.approx(1)
    assert "riesz-thorin" not in rep
    rep = bound_report(np.eye(3), 3, MCConfig(5000, seed=1))
    for entry in rep.values():
        assert entry["holds"]
        assert entry["slack"] == pytest.approx(0, abs=1e-9)


def test_bound_report_mc_legs():
    A = cplx(np.random.default_rng(8), 3)
    rep = bound_report(A, 3, MCConfig(200_000, seed=8))
    assert rep["riesz-thorin"]["holds"] and rep["upper-2p"]["holds"]
    assert "monte-carlo" in rep["riesz-thorin"]["methods"]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2**32))
def test_wui_norm_axioms(n, seed):
    rng = np.random.default_rng(seed)
    A, B = cplx(rng, n), cplx(rng, n)
    t = complex(rng.normal(), rng.normal())
    U = random_unitary(n, seed)
    for f in (phi2, phi4, n_psi, n_psi0):
        fa = f(A)
        assert rel(f(t * A), abs(t) * fa) < 1e-10
        assert f(A + B) <= fa + f(B) + 1e-9
        assert rel(f(U @ A @ U.conj().T), fa) < 1e-9


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**32))
def test_variance_identity(n, seed):
    A = cplx(np.random.default_rng(seed), n)
    st_ = moment_stats(A)
    assert abs(st_["variance_identity_residual"]) <= 1e-10 * max(1.0, st_["frobenius_sq"])
