"""Normalized trace of symmetric tensor powers, three independent ways.

``normalized_sym_trace`` evaluates the partition expansion over power traces
(through the Newton recurrence, or literally for small ``k``);
``sym_trace_eigen`` evaluates the complete homogeneous polynomial directly at
Hermitian eigenvalues; ``sym_power_matrix`` builds the symmetric power itself.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from .errors import DimensionTooLarge, ValidationError
from .linalg_core import as_matrix, hermitian_eigenvalues, power_traces
from .partitions import MAX_K, dim_sym, partitions_of, z_beta

__all__ = [
    "SymTraceResult",
    "h_from_power_sums",
    "h_partition_sum",
    "complete_homogeneous",
    "normalized_sym_trace",
    "sym_trace_eigen",
    "sym_power_basis",
    "sym_power_matrix",
    "sym_trace_brute",
]

PARTITION_SUM_MAX_K = 12
BRUTE_FORCE_MAX_DIM = 4096


@dataclass(frozen=True)
class SymTraceResult:
    value: complex
    k: int
    method: str  # partition-formula | eigenvalue-oracle | brute-force

    def __complex__(self):
        return complex(self.value)

    @property
    def real(self) -> float:
        return float(np.real(self.value))


def h_from_power_sums(p, k: int) -> complex:
    """Complete homogeneous ``h_k`` from power sums ``p[0] = p_1, ..., p[k-1] = p_k``.

    Uses ``h_m = (1/m) sum_{i=1}^m p_i h_{m-i}`` with ``h_0 = 1``.
    """
    if k < 0:
        raise ValidationError("k must be >= 0")
    if len(p) < k:
        raise ValidationError(f"need {k} power sums, got {len(p)}")
    h = [1.0 + 0j]
    for m in range(1, k + 1):
        acc = 0j
        for i in range(1, m + 1):
            acc += p[i - 1] * h[m - i]
        h.append(acc / m)
    return h[k]


def h_partition_sum(p, k: int) -> complex:
    """Literal ``sum_beta (1/z_beta) prod_t p_{beta_t}`` over partitions of ``k``."""
    if k > PARTITION_SUM_MAX_K:
        raise ValidationError(f"literal partition sum limited to k <= {PARTITION_SUM_MAX_K}")
    total = 0j
    for beta in partitions_of(k):
        term = 1.0 + 0j
        for part in beta.parts:
            term *= p[part - 1]
        total += term / z_beta(beta)
    return total


def complete_homogeneous(values, k: int):
    """``h_k(x_1, ..., x_n)`` by the variable-by-variable recurrence.

    ``h_m(x_1..x_j) = h_m(x_1..x_{j-1}) + x_j h_{m-1}(x_1..x_j)``; no power
    sums are involved, so this is independent of the Newton route.
    """
    x = np.asarray(values)
    dtype = np.result_type(x.dtype, np.float64)
    h = np.zeros(k + 1, dtype=dtype)
    h[0] = 1.0
    for xj in x:
        for m in range(1, k + 1):
            h[m] = h[m] + xj * h[m - 1]
    return h[k]


def normalized_sym_trace(A, k: int, method: str = "newton") -> SymTraceResult:
    """``tr(vee^k A) / C(n+k-1, k)`` for arbitrary complex ``A``.

    ``method="newton"`` (default) runs the O(k^2) recurrence on power traces;
    ``method="partition"`` sums over partitions literally (``k <= 12``).
    """
    A = as_matrix(A)
    if not 1 <= k <= MAX_K:
        raise ValidationError(f"k must be in [1, {MAX_K}], got {k}")
    c = dim_sym(A.shape[0], k)
    p = power_traces(A, k)
    if method == "newton":
        h = h_from_power_sums(p, k)
    elif method == "partition":
        h = h_partition_sum(p, k)
    else:
        raise ValidationError(f"unknown method {method!r}")
    return SymTraceResult(complex(h) / c, k, "partition-formula")


def sym_trace_eigen(H, k: int) -> SymTraceResult:
    """Normalized ``h_k`` evaluated at the Jacobi eigenvalues of Hermitian ``H``."""
    lam = hermitian_eigenvalues(H)
    c = dim_sym(lam.size, k)
    return SymTraceResult(complex(complete_homogeneous(lam, k)) / c, k, "eigenvalue-oracle")


def sym_power_basis(n: int, k: int) -> list[tuple[int, ...]]:
    """Degree-k monomials in ``n`` variables as sorted index tuples, colex order."""
    basis = list(combinations_with_replacement(range(n), k))
    basis.sort(key=lambda t: t[::-1])
    return basis


def _multiplicity_factorial(mono: tuple[int, ...]) -> int:
    out = 1
    for i in set(mono):
        out *= math.factorial(mono.count(i))
    return out


def sym_power_matrix(A, k: int, orthonormal: bool = True) -> np.ndarray:
    """Matrix of ``vee^k A`` on degree-k polynomials, ``x -> A x`` substituted.

    Column ``alpha`` holds the coefficients of ``prod_t (A e_{alpha_t})`` in the
    monomial basis.  With ``orthonormal=True`` the monomials are rescaled by
    ``1/sqrt(alpha!)`` (the Fock-space normalization), which makes the map
    unitarily equivalent to the restriction of ``A^{(x)k}`` to symmetric
    tensors, so singular values are meaningful as well as the trace.
    """
    A = as_matrix(A)
    n = A.shape[0]
    dim = dim_sym(n, k)
    if dim > BRUTE_FORCE_MAX_DIM:
        raise DimensionTooLarge(f"C({n + k - 1},{k}) = {dim} exceeds {BRUTE_FORCE_MAX_DIM}")
    basis = sym_power_basis(n, k)
    index = {m: i for i, m in enumerate(basis)}
    M = np.zeros((dim, dim), dtype=np.complex128)
    for col, alpha in enumerate(basis):
        poly: dict[tuple[int, ...], complex] = {(): 1.0 + 0j}
        for i in alpha:
            column = A[:, i]
            nxt: dict[tuple[int, ...], complex] = {}
            for mono, coef in poly.items():
                for j in range(n):
                    a = column[j]
                    if a == 0:
                        continue
                    key = tuple(sorted(mono + (j,)))
                    nxt[key] = nxt.get(key, 0j) + coef * a
            poly = nxt
        for mono, coef in poly.items():
            M[index[mono], col] = coef
    if orthonormal:
        w = np.sqrt(np.array([_multiplicity_factorial(m) for m in basis], dtype=float))
        M = M * w[:, None] / w[None, :]
    return M


def sym_trace_brute(A, k: int) -> SymTraceResult:
    A = as_matrix(A)
    M = sym_power_matrix(A, k, orthonormal=False)
    return SymTraceResult(complex(np.trace(M)) / M.shape[0], k, "brute-force")
