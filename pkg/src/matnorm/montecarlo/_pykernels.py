"""Pure numpy kernels; the reference that the compiled kernels must reproduce."""
import numpy as np

from ._rng import GOLDEN, MIX1, MIX2

NAME = "python"

_G = np.uint64(GOLDEN)
_M1 = np.uint64(MIX1)
_M2 = np.uint64(MIX2)
_S30, _S27, _S31, _S11 = (np.uint64(s) for s in (30, 27, 31, 11))
_ONE = np.uint64(1)
_TWO = np.uint64(2)


def _uniforms(key: int, counters: np.ndarray) -> np.ndarray:
    z = np.uint64(key) + (counters + _ONE) * _G
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    z = z ^ (z >> _S31)
    return ((z >> _S11) + _ONE).astype(np.float64) * 2.0**-53


def sphere_block(n: int, key: int, start: int, count: int) -> np.ndarray:
    """Samples ``start .. start+count-1`` of the uniform sphere stream, shape (count, n)."""
    idx = np.arange(start, start + count, dtype=np.uint64)[:, None]
    base = _TWO * (idx * np.uint64(n) + np.arange(n, dtype=np.uint64)[None, :])
    u1 = _uniforms(key, base)
    u2 = _uniforms(key, base + _ONE)
    r = np.sqrt(-np.log(u1))
    theta = (2.0 * np.pi) * u2
    z = r * np.cos(theta) + 1j * (r * np.sin(theta))
    norm = np.sqrt(np.sum(z.real**2 + z.imag**2, axis=1))
    return z / norm[:, None]


def quad_forms_block(mats: np.ndarray, key: int, start: int, count: int) -> np.ndarray:
    """``<A_j xi, xi> = xi^* A_j xi`` for each sample and matrix, shape (count, m)."""
    xi = sphere_block(mats.shape[1], key, start, count)
    y = np.einsum("mrc,sc->smr", mats, xi)
    return np.einsum("sr,smr->sm", xi.conj(), y)


def simplex_block(n: int, key: int, start: int, count: int) -> np.ndarray:
    """Flat-Dirichlet samples by normalized exponential spacings, shape (count, n)."""
    idx = np.arange(start, start + count, dtype=np.uint64)[:, None]
    e = -np.log(_uniforms(key, idx * np.uint64(n) + np.arange(n, dtype=np.uint64)[None, :]))
    return e / np.sum(e, axis=1)[:, None]
