"""Mixed sphere moments of any number of matrices by polarization.

``F(B) = Tr(vee^k B)`` is a homogeneous polynomial of degree ``k`` in the
entries of ``B``, and ``int prod_i <A_i xi, xi> dsigma`` is the coefficient of
``x_1 ... x_k`` in ``F(sum_i x_i A_i)`` divided by ``k!``.  The alternating sum
over subsets isolates that coefficient exactly:

    k! M(A_1, ..., A_k) = sum_{S subset [k]} (-1)^{k - |S|} F(sum_{i in S} A_i).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, KTooLarge, ValidationError
from .linalg_core import as_matrix
from .sym_trace import normalized_sym_trace
from .wui_moments import MomentValue

__all__ = ["PolarizationJob", "MAX_POLARIZATION_K", "mixed_moment_general", "phi_2k_general"]

MAX_POLARIZATION_K = 12


@dataclass(frozen=True)
class PolarizationJob:
    matrices: tuple

    def __post_init__(self):
        mats = tuple(as_matrix(M) for M in self.matrices)
        if not mats:
            raise ValidationError("need at least one matrix")
        if len(mats) > MAX_POLARIZATION_K:
            raise KTooLarge(f"k = {len(mats)} exceeds the polarization cap {MAX_POLARIZATION_K}")
        if len({M.shape for M in mats}) > 1:
            raise DimensionMismatch(f"matrices have different shapes: {[M.shape for M in mats]}")
        object.__setattr__(self, "matrices", mats)

    @property
    def k(self) -> int:
        return len(self.matrices)


def mixed_moment_general(job) -> MomentValue:
    """``int prod_i <A_i xi, xi> dsigma`` for ``1 <= k <= 12`` matrices.

    Each matrix is scaled to unit Frobenius norm before the subset sum and the
    product of norms is restored afterwards.  Subsets are visited in
    ascending bitmask order.
    """
    if not isinstance(job, PolarizationJob):
        job = PolarizationJob(tuple(job))
    k = job.k
    norms = [float(np.linalg.norm(M)) for M in job.matrices]
    if any(s == 0.0 for s in norms):
        return MomentValue(0j, (1,) * k, "polarization")
    mats = [M / s for M, s in zip(job.matrices, norms)]
    n = mats[0].shape[0]
    total = 0j
    for mask in range(1, 1 << k):
        B = np.zeros((n, n), dtype=np.complex128)
        size = 0
        for i in range(k):
            if mask >> i & 1:
                B = B + mats[i]
                size += 1
        sign = -1.0 if (k - size) % 2 else 1.0
        total += sign * normalized_sym_trace(B, k).value
    value = total / math.factorial(k) * math.prod(norms)
    return MomentValue(value, (1,) * k, "polarization")


def phi_2k_general(A, k: int) -> float:
    """``Phi'_{2k}(A) = (int |<A xi, xi>|^{2k} dsigma)^(1/(2k))`` for any complex ``A``, ``2k <= 12``."""
    if int(k) != k or k < 1:
        raise ValidationError(f"k must be a positive integer, got {k}")
    k = int(k)
    if 2 * k > MAX_POLARIZATION_K:
        raise KTooLarge(f"2k = {2 * k} exceeds the polarization cap {MAX_POLARIZATION_K}")
    A = as_matrix(A)
    m = mixed_moment_general([A] * k + [A.conj().T] * k).value
    return max(float(np.real(m)), 0.0) ** (1.0 / (2 * k))
