"""Normalized complete homogeneous functions ``H_q`` on the nonnegative orthant and their gauge-function inequalities.

``H_q(x) = int <X xi, xi>^q dsigma`` with ``X = diag(x)``.  Under the sphere
measure ``(|xi_1|^2, ..., |xi_n|^2)`` is flat-Dirichlet, so for real ``q`` this
is ``E[<x, W>^q]`` over the simplex.  Integer orders have the closed form
``h_q(x) / C(n+q-1, q)``.

When an inequality needs a non-integer order, every quantity in it is
evaluated against one shared, permutation-symmetrized simplex sample.  Each
inequality holds for every permutation-invariant probability measure on the
simplex, so it must then hold for the empirical measure up to roundoff, and
the Monte Carlo noise cannot produce false violations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import DomainError, InvalidOrder, LengthMismatch, MCConfigRequired, NegativeEntry, ValidationError
from .montecarlo import MCConfig, mc_simplex_power, simplex_samples
from .montecarlo.estimator import MAX_SYMMETRIZE_N
from .partitions import dim_sym
from .sym_trace import complete_homogeneous

__all__ = [
    "GaugeValue",
    "h_q",
    "h_q_two_point",
    "phi_gauge",
    "weak_majorizes",
    "majorizes",
    "inequality_suite",
    "schur_pair_check",
    "doubly_stochastic",
    "SLACK_TOL",
]

SLACK_TOL = 1e-9


@dataclass(frozen=True)
class GaugeValue:
    value: float
    q: float
    method: str  # closed-form | simplex-mc
    stderr: float | None = None

    def __float__(self):
        return float(self.value)


def _vec(x) -> np.ndarray:
    v = np.asarray(x, dtype=float).ravel()
    if v.size == 0 or not np.all(np.isfinite(v)):
        raise ValidationError("expected a non-empty finite real tuple")
    return v


def _is_int(q: float) -> bool:
    return float(q).is_integer()


def h_q(x, q: float, mc: MCConfig | None = None, symmetrize: bool = False) -> GaugeValue:
    """``H_q(x)`` for ``x >= 0`` and real ``q >= 1``.

    Integer ``q`` (or ``n = 1``) uses the closed form; otherwise a simplex
    Monte Carlo estimate with configuration ``mc`` is returned.
    """
    x = _vec(x)
    if np.any(x < 0):
        raise NegativeEntry(f"H_q needs a nonnegative tuple, got {x}")
    if not q >= 1:
        raise InvalidOrder(f"q must be >= 1, got {q}")
    if _is_int(q):
        k = int(q)
        return GaugeValue(float(complete_homogeneous(x, k)) / dim_sym(x.size, k), q, "closed-form")
    if x.size == 1:
        return GaugeValue(float(x[0] ** q), q, "closed-form")
    if mc is None:
        raise MCConfigRequired(f"non-integer q = {q} needs an MCConfig")
    est = mc_simplex_power(x, q, mc, symmetrize=symmetrize)
    return GaugeValue(est.value, q, "simplex-mc", est.stderr)


def h_q_two_point(x, q: float) -> float:
    """Exact ``H_q`` for ``n = 2``: ``|xi_1|^2`` is uniform on ``[0, 1]``."""
    x1, x2 = _vec(x)
    if min(x1, x2) < 0:
        raise NegativeEntry("H_q needs a nonnegative tuple")
    if math.isclose(x1, x2, rel_tol=1e-12, abs_tol=0.0):
        return float(x1**q)
    return float((x2 ** (q + 1) - x1 ** (q + 1)) / ((q + 1) * (x2 - x1)))


def phi_gauge(x, q: float, mc: MCConfig | None = None, symmetrize: bool = False) -> GaugeValue:
    """Symmetric gauge function ``Phi_q(x) = H_q(|x|)^(1/q)``."""
    h = h_q(np.abs(_vec(x)), q, mc, symmetrize)
    val = max(h.value, 0.0) ** (1.0 / q)
    se = None
    if h.stderr is not None:
        se = val / (q * h.value) * h.stderr if h.value > 0 else 0.0
    return GaugeValue(val, q, h.method, se)


def _pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    x, y = _vec(x), _vec(y)
    if x.size != y.size:
        raise LengthMismatch(f"lengths differ: {x.size} vs {y.size}")
    return x, y


def weak_majorizes(x, y, tol: float = 1e-12) -> bool:
    """True iff ``x <_w y``: every descending prefix sum of ``x`` is at most that of ``y``."""
    x, y = _pair(x, y)
    px = np.cumsum(np.sort(x)[::-1])
    py = np.cumsum(np.sort(y)[::-1])
    scale = max(1.0, float(np.max(np.abs(px))), float(np.max(np.abs(py))))
    return bool(np.all(px <= py + tol * scale))


def majorizes(x, y, tol: float = 1e-12) -> bool:
    """True iff ``x < y``: weak majorization plus equal totals."""
    x, y = _pair(x, y)
    scale = max(1.0, float(np.sum(np.abs(x))), float(np.sum(np.abs(y))))
    return weak_majorizes(x, y, tol) and abs(float(np.sum(x) - np.sum(y))) <= tol * scale


class _Empirical:
    """Shared simplex sample; symmetrized over coordinate permutations when affordable."""

    def __init__(self, n: int, cfg: MCConfig):
        self.W = simplex_samples(n, 0, cfg.samples, cfg.seed, cfg.backend)
        self.symmetric = n <= MAX_SYMMETRIZE_N
        self.perms = np.array(list(permutations(range(n)))) if self.symmetric else np.arange(n)[None, :]

    def moment(self, v: np.ndarray, q: float, absolute: bool = False) -> tuple[float, float]:
        s = self.W @ v[self.perms].T
        s = np.abs(s) if absolute else np.clip(s, 0.0, None)
        per_sample = np.mean(s**q, axis=1)
        m = float(per_sample.mean())
        se = float(per_sample.std(ddof=1) / np.sqrt(per_sample.size)) if per_sample.size > 1 else 0.0
        return m, se


class _Evaluator:
    def __init__(self, n: int, mc: MCConfig | None):
        self.n = n
        self.mc = mc
        self._emp: _Empirical | None = None

    def mode(self, *orders: float) -> str:
        if all(_is_int(q) for q in orders) or self.n == 1:
            return "closed-form"
        if self.mc is None:
            raise MCConfigRequired(f"orders {orders} include a non-integer; supply an MCConfig")
        return "simplex-mc"

    def H(self, v: np.ndarray, q: float, mode: str) -> tuple[float, float]:
        if mode == "closed-form":
            return h_q(v, q).value, 0.0
        if self._emp is None:
            self._emp = _Empirical(self.n, self.mc)
        return self._emp.moment(v, q)

    @property
    def exact_symmetry(self) -> bool:
        return self._emp is None or self._emp.symmetric


def _entry(slack: float, stderr: float, mode: str, exact: bool = True) -> dict:
    band = SLACK_TOL if exact else max(SLACK_TOL, 4.0 * stderr)
    return {
        "applicable": True,
        "slack": float(slack),
        "stderr": float(stderr),
        "method": mode,
        "band": float(band),
        "violated": bool(slack < -band),
    }


def _skip(reason: str) -> dict:
    return {"applicable": False, "reason": reason}


def inequality_suite(x, y, q: float, p: float, mc: MCConfig | None = None) -> dict[str, dict]:
    """Slacks (right minus left) of the gauge-function inequalities for ``H_q``.

    ``n1``        ``H_q(|xy|) <= H_q(x^2)^(1/2) H_q(y^2)^(1/2)``
    ``n2``        ``p >= 1``: Minkowski for ``H_q(|.|^p)^(1/(qp))``
    ``n4``        ``0 < p < 1``: same with the constant ``2^(1/p - 1)``
    ``n5``        ``x, y >= 0`` and ``x <_w y`` implies ``H_q(x) <= H_q(y)``
    ``mccarthy``  ``q >= p >= 1``, ``x >= 0``: ``H_q(x^p) <= H_p(x^q)``

    Inapplicable entries are reported with a reason instead of a slack.
    """
    x, y = _pair(x, y)
    if not q >= 1:
        raise DomainError(f"q must be >= 1, got {q}")
    if not p > 0:
        raise DomainError(f"p must be > 0, got {p}")
    ev = _Evaluator(x.size, mc)
    out: dict[str, dict] = {}

    mode = ev.mode(q)
    lhs, lse = ev.H(np.abs(x * y), q, mode)
    hx, sx = ev.H(x**2, q, mode)
    hy, sy = ev.H(y**2, q, mode)
    out["n1"] = _entry(np.sqrt(hx * hy) - lhs, lse + sx + sy, mode)

    root = 1.0 / (q * p)
    l2, l2se = ev.H(np.abs(x + y) ** p, q, mode)
    a2, a2se = ev.H(np.abs(x) ** p, q, mode)
    b2, b2se = ev.H(np.abs(y) ** p, q, mode)
    minkowski = (max(a2, 0.0) ** root + max(b2, 0.0) ** root, max(l2, 0.0) ** root)
    se = l2se + a2se + b2se
    if p >= 1:
        out["n2"] = _entry(minkowski[0] - minkowski[1], se, mode)
        out["n4"] = _skip("needs 0 < p < 1")
    else:
        out["n2"] = _skip("needs p >= 1")
        out["n4"] = _entry(2 ** (1.0 / p - 1.0) * minkowski[0] - minkowski[1], se, mode)

    if np.any(x < 0) or np.any(y < 0):
        out["n5"] = _skip("needs x, y >= 0")
    elif not weak_majorizes(x, y):
        out["n5"] = _skip("x is not weakly majorized by y")
    else:
        hx5, s5x = ev.H(x, q, mode)
        hy5, s5y = ev.H(y, q, mode)
        out["n5"] = _entry(hy5 - hx5, s5x + s5y, mode, exact=ev.exact_symmetry)

    if np.any(x < 0):
        out["mccarthy"] = _skip("needs x >= 0")
    elif not q >= p >= 1:
        out["mccarthy"] = _skip("needs q >= p >= 1")
    else:
        mmode = ev.mode(q, p)
        left, lse = ev.H(x**p, q, mmode)
        right, rse = ev.H(x**q, p, mmode)
        out["mccarthy"] = _entry(right - left, lse + rse, mmode)
    return out


def doubly_stochastic(n: int, rng: np.random.Generator, terms: int | None = None) -> np.ndarray:
    """Random convex combination of at most ``n^2`` permutation matrices (Dirichlet weights)."""
    terms = terms or n * n
    w = rng.dirichlet(np.ones(terms))
    D = np.zeros((n, n))
    eye = np.eye(n)
    for wi in w:
        D += wi * eye[rng.permutation(n)]
    return D


def _schur_value(v: np.ndarray, q: float, mc: MCConfig | None, emp: list) -> tuple[float, float, str]:
    # int <X xi, xi>^{2q} dsigma
    if _is_int(q):
        from .wui_moments import phi_closed

        k = 2 * int(q)
        return phi_closed(np.diag(v), k, "hermitian-even") ** k, 0.0, "closed-form"
    if v.size == 1:
        return float(abs(v[0]) ** (2 * q)), 0.0, "closed-form"
    if mc is None:
        raise MCConfigRequired(f"non-integer q = {q} needs an MCConfig")
    if not emp:
        emp.append(_Empirical(v.size, mc))
    m, se = emp[0].moment(v, 2 * q, absolute=True)
    return m, se, "simplex-mc"


def schur_pair_check(y, q: float, seed: int, mc: MCConfig | None = None, x=None) -> dict:
    """Compare ``int <X xi, xi>^{2q}`` at ``x = D y`` and at ``y`` for a random doubly stochastic ``D``.

    Passing ``x`` explicitly skips the random draw (it must satisfy ``x < y``).
    """
    y = _vec(y)
    if not q >= 1:
        raise InvalidOrder(f"q must be >= 1, got {q}")
    if x is None:
        D = doubly_stochastic(y.size, np.random.default_rng(seed))
        x = D @ y
    else:
        x, y = _pair(x, y)
        if not majorizes(x, y):
            raise DomainError("supplied x is not majorized by y")
    emp: list = []
    hx, sx, method = _schur_value(x, q, mc, emp)
    hy, sy, _ = _schur_value(y, q, mc, emp)
    exact = method == "closed-form" or emp[0].symmetric
    entry = _entry(hy - hx, sx + sy, method, exact=exact)
    entry.update({"x": x.tolist(), "y": y.tolist(), "hx": hx, "hy": hy, "majorized": majorizes(x, y)})
    return entry
