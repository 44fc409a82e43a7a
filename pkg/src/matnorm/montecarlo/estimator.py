"""Seeded Monte Carlo estimation of sphere and simplex integrals.

Every sphere integrand in the package is a function of quadratic forms
``<A_j xi, xi>``: ``||A xi||^2 = <A*A xi, xi>`` and ``|<z, xi>|^2 = <z z* xi, xi>``.
The kernels therefore only need to produce quadratic forms; integrands are
applied chunk by chunk in numpy.

Samples are generated in fixed chunks of ``cfg.chunk`` indices.  Chunks may be
evaluated on several threads; their statistics are merged in ascending chunk
order, so the estimate does not depend on the thread count.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Iterator, Sequence

import numpy as np

from ..errors import ConfigTooSmall, DimensionMismatch, InvalidKind, ValidationError
from ..linalg_core import as_matrix
from ._rng import SIMPLEX_STREAM, SPHERE_STREAM, stream_key
from .backend import get_backend

__all__ = [
    "MCConfig",
    "MCEstimate",
    "MIN_SAMPLES",
    "sample_sphere",
    "sphere_samples",
    "simplex_samples",
    "sphere_expectation",
    "simplex_expectation",
    "mc_moment",
    "mc_simplex_power",
    "thread_count",
]

MIN_SAMPLES = 1000
MAX_SYMMETRIZE_N = 6
KINDS = ("numerical-power", "abs-power", "bochner", "kernel", "mixed")


@dataclass(frozen=True)
class MCConfig:
    samples: int
    seed: int = 0
    chunk: int = 4096
    threads: int | None = None
    backend: str | None = None

    def __post_init__(self):
        if self.samples < 1:
            raise ValidationError("samples must be >= 1")
        if self.chunk < 1:
            raise ValidationError("chunk must be >= 1")
        if not 0 <= int(self.seed) < 2**64:
            raise ValidationError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class MCEstimate:
    mean: complex
    stderr: float
    samples: int
    seed: int

    @property
    def value(self) -> float:
        return float(np.real(self.mean))

    def zscore(self, exact: complex, floor: float = 1e-12) -> float:
        """``|mean - exact|`` in units of the standard error (floored for zero-variance integrands)."""
        scale = max(self.stderr, floor * max(1.0, abs(exact)))
        return abs(self.mean - exact) / scale

    def agrees(self, exact: complex, sigmas: float = 4.0) -> bool:
        return self.zscore(exact) <= sigmas


def thread_count(cfg: MCConfig | None = None) -> int:
    if cfg is not None and cfg.threads:
        return max(1, int(cfg.threads))
    env = os.environ.get("MATNORM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _chunks(cfg: MCConfig) -> list[tuple[int, int]]:
    return [(s, min(cfg.chunk, cfg.samples - s)) for s in range(0, cfg.samples, cfg.chunk)]


def _chunk_stats(v: np.ndarray) -> tuple[int, complex, float]:
    mean = v.mean()
    d = v - mean
    return v.size, mean, float(np.sum(d.real**2 + d.imag**2)) if np.iscomplexobj(v) else float(d @ d)


def _merge(stats: Sequence[tuple[int, complex, float]]) -> tuple[int, complex, float]:
    # Chan et al. pairwise update, applied left to right in chunk order
    n, mean, m2 = stats[0]
    for nb, mb, m2b in stats[1:]:
        tot = n + nb
        delta = mb - mean
        mean = mean + delta * (nb / tot)
        m2 = m2 + m2b + abs(delta) ** 2 * n * nb / tot
        n = tot
    return n, mean, m2


def _run(cfg: MCConfig, values: Callable[[int, int], np.ndarray]) -> MCEstimate:
    chunks = _chunks(cfg)

    def work(c):
        return _chunk_stats(values(*c))

    threads = min(thread_count(cfg), len(chunks))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            stats = list(ex.map(work, chunks))
    else:
        stats = [work(c) for c in chunks]
    n, mean, m2 = _merge(stats)
    stderr = float(np.sqrt(m2 / (n - 1) / n)) if n > 1 else 0.0
    return MCEstimate(complex(mean), stderr, n, int(cfg.seed))


def sphere_samples(n: int, start: int, count: int, seed: int, backend: str | None = None) -> np.ndarray:
    """Samples ``start .. start+count-1`` of the seeded uniform stream on the unit sphere of C^n."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    kern = get_backend(backend)
    return kern.sphere_block(int(n), stream_key(int(seed), SPHERE_STREAM), int(start), int(count))


def sample_sphere(n: int, count: int, cfg: MCConfig) -> Iterator[np.ndarray]:
    """Stream ``count`` sphere samples as chunk arrays of shape ``(<= cfg.chunk, n)``."""
    for start in range(0, count, cfg.chunk):
        yield sphere_samples(n, start, min(cfg.chunk, count - start), cfg.seed, cfg.backend)


def simplex_samples(n: int, start: int, count: int, seed: int, backend: str | None = None) -> np.ndarray:
    """Flat-Dirichlet samples: the law of ``(|xi_1|^2, ..., |xi_n|^2)`` under the sphere measure."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    kern = get_backend(backend)
    return kern.simplex_block(int(n), stream_key(int(seed), SIMPLEX_STREAM), int(start), int(count))


def sphere_expectation(mats, integrand: Callable[[np.ndarray], np.ndarray], cfg: MCConfig) -> MCEstimate:
    """Estimate ``E[integrand(Q)]`` where ``Q[:, j] = <A_j xi, xi>`` for uniform ``xi``."""
    mats = np.ascontiguousarray(np.stack([as_matrix(M) for M in mats]))
    kern = get_backend(cfg.backend)
    key = stream_key(int(cfg.seed), SPHERE_STREAM)
    return _run(cfg, lambda s, c: integrand(kern.quad_forms_block(mats, key, s, c)))


def simplex_expectation(
    n: int, integrand: Callable[[np.ndarray], np.ndarray], cfg: MCConfig
) -> MCEstimate:
    """Estimate ``E[integrand(W)]`` for flat-Dirichlet ``W`` of shape ``(count, n)``."""
    kern = get_backend(cfg.backend)
    key = stream_key(int(cfg.seed), SIMPLEX_STREAM)
    return _run(cfg, lambda s, c: integrand(kern.simplex_block(int(n), key, s, c)))


def mc_simplex_power(x, q: float, cfg: MCConfig, symmetrize: bool = False, absolute: bool = False) -> MCEstimate:
    """Estimate ``E[<x, W>^q]`` (or ``E|<x, W>|^q`` with ``absolute``).

    With ``symmetrize`` each sample is averaged over all coordinate
    permutations of ``x``; the empirical measure is then permutation
    invariant, which Schur-type comparisons need to hold exactly.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    if symmetrize and n > MAX_SYMMETRIZE_N:
        raise ValidationError(f"symmetrization limited to n <= {MAX_SYMMETRIZE_N}")
    xs = np.array(list(permutations(x))) if symmetrize else x[None, :]

    def integrand(W):
        s = W @ xs.T
        s = np.abs(s) if absolute else np.clip(s, 0.0, None)
        return np.mean(s**q, axis=1)

    return simplex_expectation(n, integrand, cfg)


def mc_moment(kind: str, operands, cfg: MCConfig) -> MCEstimate:
    """Monte Carlo estimate of one of the sphere integrals.

    ``kind`` / ``operands``:

    - ``numerical-power``: ``(A, k)``, integrand ``<A xi, xi>^k``
    - ``abs-power``: ``(A, p)``, integrand ``|<A xi, xi>|^p``
    - ``bochner``: ``(A, q)``, integrand ``||A xi||_2^{2q}``
    - ``kernel``: ``(z, k)``, integrand ``|<z, xi>|^{2k}``
    - ``mixed``: ``[A_1, ..., A_k]``, integrand ``prod_i <A_i xi, xi>``
    """
    if kind not in KINDS:
        raise InvalidKind(f"unknown moment kind {kind!r}; expected one of {KINDS}")
    if cfg.samples < MIN_SAMPLES:
        raise ConfigTooSmall(f"need at least {MIN_SAMPLES} samples, got {cfg.samples}")
    if kind == "mixed":
        mats = [as_matrix(M) for M in operands]
        if len({M.shape for M in mats}) > 1:
            raise DimensionMismatch("matrices must share one dimension")
        return sphere_expectation(mats, lambda Q: np.prod(Q, axis=1), cfg)
    obj, power = operands
    if kind == "numerical-power":
        k = int(power)
        return sphere_expectation([obj], lambda Q: Q[:, 0] ** k, cfg)
    if kind == "abs-power":
        return sphere_expectation([obj], lambda Q: np.abs(Q[:, 0]) ** power, cfg)
    if kind == "bochner":
        A = as_matrix(obj)
        G = A.conj().T @ A
        return sphere_expectation([G], lambda Q: np.clip(Q[:, 0].real, 0.0, None) ** power, cfg)
    z = np.asarray(obj, dtype=np.complex128).ravel()
    k = int(power)
    return sphere_expectation([np.outer(z, z.conj())], lambda Q: np.clip(Q[:, 0].real, 0.0, None) ** k, cfg)
