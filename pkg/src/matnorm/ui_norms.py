"""Unitarily invariant norms built from sphere integrals of ``<|A|^p xi, xi>^q``.

Closed forms are evaluated spectrally: singular values, then the complete
homogeneous polynomial.  The literal Schatten-norm expansion over partitions
is kept as a cross-check (:func:`schatten_expansion`).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidOrder, MCConfigRequired, ValidationError
from .linalg_core import as_matrix, schatten_norm, singular_values
from .montecarlo import MCConfig, mc_moment
from .partitions import dim_sym, partitions_of, z_beta
from .sym_trace import complete_homogeneous

__all__ = [
    "NormOrder",
    "NormValue",
    "n_k",
    "n_k_p",
    "sym_power_schatten",
    "n_prime",
    "schatten_expansion",
    "expansion_terms",
]


@dataclass(frozen=True)
class NormOrder:
    q: float
    p: float = 1.0

    def __post_init__(self):
        if not (self.q >= 1 and self.p >= 1):
            raise InvalidOrder(f"orders must be >= 1, got q={self.q}, p={self.p}")


@dataclass(frozen=True)
class NormValue:
    value: float
    method: str  # closed-form | monte-carlo
    stderr: float | None = None
    samples: int | None = None
    seed: int | None = None

    def __float__(self):
        return float(self.value)


def _check_k(k) -> int:
    if int(k) != k or k < 1:
        raise ValidationError(f"k must be a positive integer, got {k}")
    return int(k)


def n_k(A, k: int) -> float:
    """``[h_k(sigma(A)) / C(n+k-1, k)]^(1/k)``."""
    return n_k_p(A, k, 1.0)


def n_k_p(A, k: int, p: float) -> float:
    """``[h_k(sigma(A)^p) / C(n+k-1, k)]^(1/(p k))``."""
    k = _check_k(k)
    NormOrder(k, p)
    s = singular_values(A)
    h = float(complete_homogeneous(s**p, k))
    return (h / dim_sym(s.size, k)) ** (1.0 / (p * k))


def sym_power_schatten(A, k: int, p: float) -> float:
    """Schatten p-norm of the k-th symmetric power, without forming it.

    The singular values of ``vee^k A`` are the degree-k monomials in
    ``sigma(A)``, so ``||vee^k A||_p^p = h_k(sigma(A)^p)``.
    """
    k = _check_k(k)
    NormOrder(k, p)
    s = singular_values(A)
    return float(complete_homogeneous(s**p, k)) ** (1.0 / p)


def n_prime(A, q: float, mc: MCConfig | None = None) -> NormValue:
    """``(int ||A xi||^{2q} dsigma)^(1/(2q))``.

    Integer ``q`` has the closed form ``[h_q(sigma^2) / C(n+q-1, q)]^(1/(2q))``;
    other orders need a Monte Carlo configuration.
    """
    if not q >= 1:
        raise InvalidOrder(f"q must be >= 1, got {q}")
    if float(q).is_integer():
        return NormValue(n_k_p(A, int(q), 2.0), "closed-form")
    if mc is None:
        raise MCConfigRequired(f"non-integer q = {q} has no closed form; supply an MCConfig")
    est = mc_moment("bochner", (as_matrix(A), q), mc)
    m = max(est.value, 0.0)
    val = m ** (1.0 / (2 * q))
    # delta method for the (1/2q)-th root
    se = val / (2 * q * m) * est.stderr if m > 0 else 0.0
    return NormValue(val, "monte-carlo", se, est.samples, est.seed)


def expansion_terms(k: int) -> list[tuple[Fraction, tuple[int, ...]]]:
    """Coefficients ``1/z_beta`` and partitions of the Schatten-norm expansion of order ``k``."""
    return [(Fraction(1, z_beta(b)), b.parts) for b in partitions_of(k)]


def schatten_expansion(A, k: int, p: float = 1.0) -> float:
    """``sum_beta (1/z_beta) prod_t ||A||_{(p beta_t)}^{p beta_t}``, equal to ``C(n+k-1,k) N_k^{(p)}(A)^{pk}``."""
    k = _check_k(k)
    A = as_matrix(A)
    norms: dict[int, float] = {}
    total = 0.0
    for coef, parts in expansion_terms(k):
        term = float(coef)
        for b in parts:
            if b not in norms:
                norms[b] = schatten_norm(A, p * b) ** (p * b)
            term *= norms[b]
        total += term
    return total
