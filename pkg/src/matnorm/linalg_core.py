"""Dense complex matrix substrate: power traces, Hermitian spectra, Schatten norms.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; :func:`as_matrix`
is the single validation gate used by every public function in the package.
"""
from __future__ import annotations

import numpy as np

from .errors import InvalidOrder, NoConvergence, NotHermitian, ValidationError

__all__ = [
    "as_matrix",
    "power_traces",
    "hermitian_eigenvalues",
    "singular_values",
    "schatten_norm",
    "random_unitary",
    "random_matrix",
    "random_hermitian",
]

JACOBI_MAX_SWEEPS = 100
JACOBI_REL_TOL = 1e-14
HERMITIAN_TOL = 1e-12
CLAMP_TOL = 1e-10


def as_matrix(A) -> np.ndarray:
    """Return ``A`` as a square, finite ``complex128`` array (a copy is not forced)."""
    M = np.asarray(A, dtype=np.complex128)
    if M.ndim == 0:
        M = M.reshape(1, 1)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise ValidationError(f"expected a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValidationError("matrix has non-finite entries")
    return M


def power_traces(A, kmax: int) -> list[complex]:
    """Traces ``[tr(A), tr(A^2), ..., tr(A^kmax)]`` by repeated multiplication.

    No diagonalization is involved, so the result is valid for non-normal
    matrices.
    """
    A = as_matrix(A)
    if kmax < 1:
        raise ValidationError("kmax must be >= 1")
    out = [complex(np.trace(A))]
    P = A
    for _ in range(kmax - 1):
        P = P @ A
        out.append(complex(np.trace(P)))
    return out


def _off_norm(H: np.ndarray) -> float:
    # sum the off-diagonal entries directly; total minus diagonal cancels
    off = H[~np.eye(H.shape[0], dtype=bool)]
    return float(np.sqrt(np.sum(off.real**2 + off.imag**2)))


def hermitian_eigenvalues(H) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted descending.

    Cyclic complex Jacobi: each rotation first removes the phase of the pivot
    ``H[p, q]`` and then applies the real symmetric Jacobi rotation.  Sweeps
    stop once the off-diagonal Frobenius mass falls below ``1e-14`` times its
    initial value.

    Raises
    ------
    NotHermitian
        If ``max|H - H*|`` exceeds ``1e-12 * max|H_ij|``.
    NoConvergence
        If 100 sweeps do not reach the tolerance.
    """
    H = as_matrix(H)
    scale = float(np.max(np.abs(H)))
    asym = float(np.max(np.abs(H - H.conj().T)))
    if asym > HERMITIAN_TOL * scale:
        raise NotHermitian(f"asymmetry {asym:.3e} exceeds tolerance {HERMITIAN_TOL * scale:.3e}")
    a = 0.5 * (H + H.conj().T)
    n = a.shape[0]
    off0 = _off_norm(a)
    if n == 1 or off0 == 0.0:
        return np.sort(a.diagonal().real)[::-1].copy()
    target = JACOBI_REL_TOL * off0
    for _ in range(JACOBI_MAX_SWEEPS):
        if _off_norm(a) <= target:
            return np.sort(a.diagonal().real)[::-1].copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                h = a[p, q]
                mag = abs(h)
                if mag == 0.0:
                    continue
                phase = h / mag
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                if abs(tau) > 1e150:
                    t = 0.5 / tau  # tau * tau would overflow
                else:
                    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # 2x2 block of diag(1, conj(phase)) @ [[c, s], [-s, c]]
                w = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ w
                a[idx, :] = w.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    if _off_norm(a) <= target:
        return np.sort(a.diagonal().real)[::-1].copy()
    raise NoConvergence(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")


def singular_values(A) -> np.ndarray:
    """Singular values (descending) as square roots of the eigenvalues of ``A*A``.

    Eigenvalues in ``[-1e-10 * ||A*A||_F, 0)`` are clamped to zero; anything
    more negative is treated as numerical corruption.
    """
    A = as_matrix(A)
    G = A.conj().T @ A
    G = 0.5 * (G + G.conj().T)
    ev = hermitian_eigenvalues(G)
    floor = -CLAMP_TOL * float(np.linalg.norm(G))
    if ev.size and ev[-1] < floor:
        raise NoConvergence(f"Gram matrix eigenvalue {ev[-1]:.3e} below clamp floor {floor:.3e}")
    return np.sqrt(np.clip(ev, 0.0, None))


def schatten_norm(A, p: float) -> float:
    """Schatten p-norm ``(sum_i sigma_i^p)^(1/p)`` for ``p >= 1``."""
    if not p >= 1:
        raise InvalidOrder(f"Schatten order must be >= 1, got {p}")
    s = singular_values(A)
    if np.isinf(p):
        return float(s[0])
    return float(np.sum(s**p) ** (1.0 / p))


def random_unitary(n: int, seed: int) -> np.ndarray:
    """Haar-distributed unitary from the QR factorization of a complex Ginibre matrix.

    The phases of ``R``'s diagonal are folded back into ``Q`` so the law is
    exactly Haar; output is a deterministic function of ``(n, seed)``.
    """
    if n < 1:
        raise ValidationError("n must be >= 1")
    rng = np.random.default_rng(int(seed))
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    ph = np.where(np.abs(d) > 0, d / np.abs(d), 1.0)
    return Q * ph[None, :]


def random_matrix(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """Complex Ginibre matrix with entries of variance ``scale**2``; test/verify helper."""
    return scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    G = random_matrix(n, rng)
    return 0.5 * (G + G.conj().T)
