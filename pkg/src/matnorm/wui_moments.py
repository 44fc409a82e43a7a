"""Closed-form sphere moments of numerical values and the weakly unitarily invariant norms built on them.

``f_A(xi) = <A xi, xi>``.  Term lists are written out as printed in the
source formulas so each can be audited one trace product at a time; the
polarization and Monte Carlo routes act as referees.

Two constants differ from the printed source and are fixed here:

- the two-matrix moment divides by ``n(n+1)``, not ``C(n+1, 2)``; the latter
  gives ``int <I xi, xi>^2 = 2``;
- on Hermitian matrices ``Phi'_{2k}`` is evaluated from signed power traces,
  not from Schatten norms, which only agree on the positive cone.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .errors import DimensionMismatch, DomainError, MCConfigRequired, TooManyMatrices, ValidationError
from .linalg_core import as_matrix, hermitian_eigenvalues
from .montecarlo import MCConfig, MCEstimate, mc_moment, sphere_expectation
from .sym_trace import normalized_sym_trace
from .ui_norms import n_prime

__all__ = [
    "MomentValue",
    "pair_denominator",
    "triple_denominator",
    "quad_denominator",
    "mixed_moment_closed",
    "phi2",
    "phi_closed",
    "phi4",
    "phi4_power",
    "weighted_l2_moment",
    "n_psi",
    "n_psi0",
    "n_psi_definition",
    "n_psi_mc",
    "n_psi0_mc",
    "moment_stats",
    "combined_closed",
    "bound_report",
]

PSD_TOL = 1e-10


@dataclass(frozen=True)
class MomentValue:
    value: complex
    order: tuple[int, ...]
    method: str  # closed-form | polarization | monte-carlo
    stderr: float | None = None
    extra: dict = field(default_factory=dict, compare=False)

    def __complex__(self):
        return complex(self.value)


def _tr(M) -> complex:
    return complex(np.trace(M))


def pair_denominator(n: int) -> int:
    return n * (n + 1)


def triple_denominator(n: int) -> int:
    return n * (n + 1) * (n + 2)


def quad_denominator(n: int) -> int:
    return n * (n + 1) * (n + 2) * (n + 3)


def _as_list(As) -> list[np.ndarray]:
    mats = [as_matrix(M) for M in As]
    if not mats:
        raise ValidationError("need at least one matrix")
    if len({M.shape for M in mats}) > 1:
        raise DimensionMismatch(f"matrices have different shapes: {[M.shape for M in mats]}")
    return mats


def _two(A, B) -> complex:
    return _tr(A @ B) + _tr(A) * _tr(B)


def _three(A, B, C) -> complex:
    return (
        _tr(A @ B @ C + A @ C @ B)
        + _tr(A) * _tr(B @ C)
        + _tr(B) * _tr(A @ C)
        + _tr(C) * _tr(A @ B)
        + _tr(A) * _tr(B) * _tr(C)
    )


def _four(A, B, C, D) -> complex:
    tA, tB, tC, tD = _tr(A), _tr(B), _tr(C), _tr(D)
    AB, AC, AD = A @ B, A @ C, A @ D
    return (
        _tr(AB @ C @ D + AB @ D @ C + AC @ B @ D + AC @ D @ B + AD @ B @ C + AD @ C @ B)
        + tA * _tr(B @ C @ D + B @ D @ C)
        + tB * _tr(A @ C @ D + A @ D @ C)
        + tC * _tr(AB @ D + AD @ B)
        + tD * _tr(AB @ C + AC @ B)
        + _tr(AB) * (_tr(C @ D) + tC * tD)
        + _tr(AC) * (_tr(B @ D) + tB * tD)
        + _tr(AD) * (_tr(B @ C) + tB * tC)
        + tA * (tB * _tr(C @ D) + tC * _tr(B @ D) + tD * _tr(B @ C))
        + tA * tB * tC * tD
    )


def mixed_moment_closed(As) -> MomentValue:
    """``int prod_i <A_i xi, xi> dsigma`` for one to four matrices."""
    mats = _as_list(As)
    n = mats[0].shape[0]
    k = len(mats)
    if k > 4:
        raise TooManyMatrices(f"closed forms cover at most 4 matrices, got {k}; use polarization")
    if k == 1:
        v = _tr(mats[0]) / n
    elif k == 2:
        v = _two(*mats) / pair_denominator(n)
    elif k == 3:
        v = _three(*mats) / triple_denominator(n)
    else:
        v = _four(*mats) / quad_denominator(n)
    return MomentValue(v, (1,) * k, "closed-form")


def phi2(A) -> float:
    """``[(||A||_F^2 + |tr A|^2) / (n(n+1))]^(1/2)``."""
    A = as_matrix(A)
    n = A.shape[0]
    return float(np.sqrt((np.linalg.norm(A) ** 2 + abs(_tr(A)) ** 2) / pair_denominator(n)))


def _hermitian_part_check(A: np.ndarray) -> None:
    scale = max(1.0, float(np.max(np.abs(A))))
    asym = float(np.max(np.abs(A - A.conj().T)))
    if asym > PSD_TOL * scale:
        raise DomainError(f"matrix is not Hermitian (asymmetry {asym:.3e})")


def phi_closed(A, k: int, domain: str = "psd") -> float:
    """``Phi'_k(A) = [Tr(vee^k A)]^(1/k)`` where that identity is valid.

    ``domain="psd"``: ``A`` positive semidefinite, any ``k``.
    ``domain="hermitian-even"``: ``A`` Hermitian and ``k`` even.
    """
    A = as_matrix(A)
    if int(k) != k or k < 1:
        raise ValidationError(f"k must be a positive integer, got {k}")
    k = int(k)
    _hermitian_part_check(A)
    if domain == "psd":
        lam = hermitian_eigenvalues(0.5 * (A + A.conj().T))
        if lam[-1] < -PSD_TOL * max(1.0, abs(lam[0])):
            raise DomainError(f"matrix is not positive semidefinite (min eigenvalue {lam[-1]:.3e})")
    elif domain == "hermitian-even":
        if k % 2:
            raise DomainError(f"hermitian-even mode needs even k, got {k}")
    else:
        raise ValidationError(f"unknown domain {domain!r}")
    val = normalized_sym_trace(0.5 * (A + A.conj().T), k).real
    return max(val, 0.0) ** (1.0 / k)


def phi4_power(A) -> float:
    """``int |<A xi, xi>|^4 dsigma`` from the eight-term closed form."""
    A = as_matrix(A)
    n = A.shape[0]
    As = A.conj().T
    A2 = A @ A
    t = _tr(A)
    F2 = float(np.linalg.norm(A) ** 2)
    AsA = As @ A
    total = (
        4 * np.linalg.norm(A2) ** 2
        + 2 * _tr(AsA @ AsA).real
        + 2 * F2**2
        + 8 * (t * _tr(A @ As @ As)).real
        + 2 * (_tr(A2) * np.conj(t) ** 2).real
        + 4 * F2 * abs(t) ** 2
        + abs(_tr(A2)) ** 2
        + abs(t) ** 4
    )
    return float(total) / quad_denominator(n)


def phi4(A) -> float:
    return max(phi4_power(A), 0.0) ** 0.25


def weighted_l2_moment(A, C) -> float:
    """``d_n int |<A xi, xi>|^2 <C xi, xi> dsigma`` for PSD ``C`` (un-normalized, ``d_n = n(n+1)(n+2)``)."""
    A = as_matrix(A)
    C = as_matrix(C)
    if A.shape != C.shape:
        raise DimensionMismatch("A and C must have equal shapes")
    _hermitian_part_check(C)
    lam = hermitian_eigenvalues(0.5 * (C + C.conj().T))
    if lam[-1] < -PSD_TOL * max(1.0, abs(lam[0])):
        raise DomainError("weight matrix C is not positive semidefinite")
    As = A.conj().T
    t = _tr(A)
    F2 = float(np.linalg.norm(A) ** 2)
    val = (
        _tr(A @ As @ C + A @ C @ As)
        + 2 * (t * _tr(As @ C)).real
        + _tr(C) * F2
        + abs(t) ** 2 * _tr(C)
    )
    return float(np.real(val))


def _fro2(A) -> float:
    return float(np.linalg.norm(A) ** 2)


def _schatten4(A) -> float:
    G = A.conj().T @ A
    return _tr(G @ G).real


def n_psi(A) -> float:
    """Fourth root of the seven-term closed form for ``3 d_n E|f|^4 + n d_n E|f - Ef|^4``."""
    A = as_matrix(A)
    n = A.shape[0]
    A2 = A @ A
    t = _tr(A)
    F2 = _fro2(A)
    total = (
        4 * _fro2(A2)
        + 2 * _schatten4(A)
        + 2 * F2**2
        + 4 / n * (_tr(A2) * np.conj(t) ** 2).real
        + 8 / n * F2 * abs(t) ** 2
        + abs(_tr(A2)) ** 2
        + (3 * n - 6) / n**2 * abs(t) ** 4
    )
    return max(float(total), 0.0) ** 0.25


def n_psi0(A) -> float:
    """Fourth root of the six-term closed form that adds ``4 n^2 (n+1)^2 V(f)^2`` to ``N_Psi^4``."""
    A = as_matrix(A)
    n = A.shape[0]
    A2 = A @ A
    t = _tr(A)
    F2 = _fro2(A)
    total = (
        4 * _fro2(A2)
        + 2 * _schatten4(A)
        + 6 * F2**2
        + 4 / n * (_tr(A2) * np.conj(t) ** 2).real
        + abs(_tr(A2)) ** 2
        + (3 * n - 2) / n**2 * abs(t) ** 4
    )
    return max(float(total), 0.0) ** 0.25


def n_psi_definition(A) -> float:
    """``N_Psi^4`` assembled from its definition via :func:`phi4_power` of ``A`` and of ``A - (tr A / n) I``."""
    A = as_matrix(A)
    n = A.shape[0]
    dn = triple_denominator(n)
    centered = A - _tr(A) / n * np.eye(n)
    return 3 * dn * phi4_power(A) + n * dn * phi4_power(centered)


def n_psi_mc(A, cfg: MCConfig) -> MCEstimate:
    """Monte Carlo estimate of ``N_Psi^4`` straight from the sphere integrals."""
    A = as_matrix(A)
    n = A.shape[0]
    dn = triple_denominator(n)
    m = _tr(A) / n
    return sphere_expectation(
        [A], lambda Q: 3 * dn * np.abs(Q[:, 0]) ** 4 + n * dn * np.abs(Q[:, 0] - m) ** 4, cfg
    )


def n_psi0_mc(A, cfg: MCConfig) -> MCEstimate:
    """Monte Carlo estimate of ``N_Psi0^4``; the squared variance term uses the delta method."""
    A = as_matrix(A)
    n = A.shape[0]
    base = n_psi_mc(A, cfg)
    m = _tr(A) / n
    var = sphere_expectation([A], lambda Q: np.abs(Q[:, 0] - m) ** 2, cfg)
    w = 4 * n**2 * (n + 1) ** 2
    v = var.value
    # same samples for both legs; errors are added conservatively
    se = base.stderr + w * 2 * abs(v) * var.stderr
    return MCEstimate(base.mean + w * v * v, se, base.samples, base.seed)


def moment_stats(A, alpha: float = 0.0) -> dict:
    """Closed-form moments of ``f_A`` under the sphere measure.

    Returns ``E2 = E|f|^2``, ``V = E|f - Ef|^2``, ``mu4 = (E|f - Ef|^4)^(1/4)``,
    ``combined = 3 d_n E|f|^4 + n d_n mu4^4 + 4 alpha n^2 (n+1)^2 V^2`` and
    the residual of ``||A||_F^2 = n E2 + n^2 V``.
    """
    if alpha < 0:
        raise ValidationError("alpha must be >= 0")
    A = as_matrix(A)
    n = A.shape[0]
    dn = triple_denominator(n)
    E2 = phi2(A) ** 2
    V = max(E2 - abs(_tr(A) / n) ** 2, 0.0)
    centered = A - _tr(A) / n * np.eye(n)
    mu4_4 = max(phi4_power(centered), 0.0)
    combined = 3 * dn * phi4_power(A) + n * dn * mu4_4 + 4 * alpha * n**2 * (n + 1) ** 2 * V**2
    frob = _fro2(A)
    return {
        "E2": E2,
        "V": V,
        "mu4": mu4_4**0.25,
        "combined": combined,
        "frobenius_sq": frob,
        "variance_identity_residual": frob - (n * E2 + n**2 * V),
    }


def combined_closed(A, alpha: float = 0.0) -> float:
    """The printed trace expression for :func:`moment_stats`' ``combined`` value."""
    A = as_matrix(A)
    n = A.shape[0]
    A2 = A @ A
    t = _tr(A)
    F2 = _fro2(A)
    return float(
        4 * _fro2(A2)
        + 2 * _schatten4(A)
        + (2 + 4 * alpha) * F2**2
        + 4 / n * (_tr(A2) * np.conj(t) ** 2).real
        + 8 / n * (1 - alpha) * F2 * abs(t) ** 2
        + abs(_tr(A2)) ** 2
        + (3 * n - 6 + 4 * alpha) / n**2 * abs(t) ** 4
    )


# ---------------------------------------------------------------- bounds


def _is_hermitian(A: np.ndarray) -> bool:
    return float(np.max(np.abs(A - A.conj().T))) <= PSD_TOL * max(1.0, float(np.max(np.abs(A))))


def _abs_moment(A: np.ndarray, s: float, mc: MCConfig | None, prefer_closed: bool = True):
    """``int |<A xi, xi>|^s`` as ``(value, stderr, method)``."""
    if prefer_closed and float(s).is_integer():
        s_int = int(s)
        if _is_hermitian(A):
            lam = hermitian_eigenvalues(0.5 * (A + A.conj().T))
            if lam[-1] >= -PSD_TOL * max(1.0, abs(lam[0])):
                return phi_closed(A, s_int, "psd") ** s_int, 0.0, "closed-form"
            if s_int % 2 == 0:
                return phi_closed(A, s_int, "hermitian-even") ** s_int, 0.0, "closed-form"
        if s_int == 2:
            return phi2(A) ** 2, 0.0, "closed-form"
        if s_int == 4:
            return phi4_power(A), 0.0, "closed-form"
        if s_int % 2 == 0 and s_int <= 12:
            from .polarization import phi_2k_general

            return phi_2k_general(A, s_int // 2) ** s_int, 0.0, "polarization"
    if mc is None:
        raise MCConfigRequired(f"int |<A xi, xi>|^{s} has no closed form here; supply an MCConfig")
    est = mc_moment("abs-power", (A, s), mc)
    return est.value, est.stderr, "monte-carlo"


def bound_report(A, p: float, mc: MCConfig | None = None, sigmas: float = 4.0) -> dict:
    """Slacks (right side minus left side) of two upper estimates of ``Phi'``.

    ``"upper-2p"``: ``Phi'_{2p}^{2p}(A) <= (Phi'_p^p(A^2) + N'_p^{2p}(A)) / 2`` for ``p >= 1``.
    ``"riesz-thorin"``: ``Phi'_p <= Phi'_2^{4/p - 1} Phi'_4^{2 - 4/p}`` for ``2 < p < 4``.

    Quantities without a closed form are estimated with ``mc``; a bound
    holds when ``slack >= -sigmas * stderr`` (and ``-1e-9`` for exact legs).
    """
    A = as_matrix(A)
    if not p >= 1:
        raise ValidationError(f"p must be >= 1, got {p}")
    out: dict = {}

    lhs, lhs_se, lhs_m = _abs_moment(A, 2 * p, mc)
    a2, a2_se, a2_m = _abs_moment(A @ A, p, mc)
    np_val = n_prime(A, p, mc)
    npp = float(np_val) ** (2 * p)
    np_se = 0.0 if np_val.stderr is None else 2 * p * float(np_val) ** (2 * p - 1) * np_val.stderr
    rhs = 0.5 * (a2 + npp)
    se = lhs_se + 0.5 * (a2_se + np_se)
    slack = rhs - lhs
    out["upper-2p"] = {
        "lhs": lhs,
        "rhs": rhs,
        "slack": slack,
        "stderr": se,
        "methods": [lhs_m, a2_m, np_val.method],
        "holds": slack >= -max(1e-9, sigmas * se),
    }

    if 2 < p < 4:
        m, m_se, m_m = _abs_moment(A, p, mc)
        left = max(m, 0.0) ** (1.0 / p)
        left_se = left / (p * m) * m_se if m > 0 else 0.0
        right = phi2(A) ** (4.0 / p - 1.0) * phi4(A) ** (2.0 - 4.0 / p)
        slack = right - left
        out["riesz-thorin"] = {
            "lhs": left,
            "rhs": right,
            "slack": slack,
            "stderr": left_se,
            "methods": [m_m, "closed-form"],
            "holds": slack >= -max(1e-9, sigmas * left_se),
        }
    return out


def permuted_moments(As) -> list[complex]:
    """:func:`mixed_moment_closed` over every ordering of ``As`` (symmetry diagnostics)."""
    return [mixed_moment_closed(list(perm)).value for perm in permutations(As)]
