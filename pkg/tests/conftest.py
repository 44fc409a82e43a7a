import numpy as np
import pytest

from matnorm.linalg_core import random_hermitian, random_matrix


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def cplx(rng, n, scale=1.0):
    return random_matrix(n, rng, scale)


def herm(rng, n):
    return random_hermitian(n, rng)


def psd(rng, n):
    M = random_matrix(n, rng)
    return M @ M.conj().T


def rel(a, b):
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale
