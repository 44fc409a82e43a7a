"""Randomized verification suites behind ``matnorm verify``.

Every check reports the largest violation over its trials.  Exact identities
use relative errors against ``tol``; Monte Carlo checks report z-scores and
pass at 4 standard errors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .gauge import SLACK_TOL, h_q_two_point, inequality_suite, schur_pair_check
from .linalg_core import random_hermitian, random_matrix, random_unitary
from .montecarlo import MCConfig, mc_moment, mc_simplex_power
from .montecarlo.estimator import MAX_SYMMETRIZE_N
from .partitions import dim_sym, partitions_of, z_beta
from .polarization import mixed_moment_general
from .sym_trace import normalized_sym_trace, sym_trace_brute
from .ui_norms import n_k, n_k_p, n_prime, schatten_expansion, sym_power_schatten
from .wui_moments import (
    combined_closed,
    mixed_moment_closed,
    moment_stats,
    n_psi,
    n_psi0,
    n_psi0_mc,
    n_psi_definition,
    n_psi_mc,
    permuted_moments,
    phi2,
    phi4,
    phi_closed,
)

__all__ = ["CheckResult", "SUITES", "run_suite", "MC_SIGMAS"]

MC_SIGMAS = 4.0
BRUTE_MAX_DIM = 400


@dataclass
class CheckResult:
    check: str
    threshold: float
    max_violation: float = 0.0
    count: int = 0
    notes: list = field(default_factory=list)

    def add(self, violation: float) -> None:
        v = float(violation)
        if math.isnan(v):
            v = math.inf
        self.max_violation = max(self.max_violation, v)
        self.count += 1

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.threshold

    def record(self) -> dict:
        return {"check": self.check, "max_violation": self.max_violation, "pass": self.passed}


def rel_err(a, b) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def _ks(n: int, kmax: int):
    # orders whose symmetric power stays small enough to build
    return [k for k in range(1, kmax + 1) if dim_sym(n, k) <= BRUTE_MAX_DIM]


def identities(n: int, trials: int, seed: int, tol: float, mc_samples: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    c_trace = CheckResult("eq-1.1-partition-vs-newton", tol)
    c_brute = CheckResult("eq-1.1-brute-force", tol)
    c_zsum = CheckResult("partition-weights", tol)
    c_exp = CheckResult("cor-2.4-expansion", tol)
    c_26 = CheckResult("prop-2.6", tol)
    c_qnorm = CheckResult("q-norm-relation", tol)
    c_43 = CheckResult("thm-4.3-vs-polarization", tol)
    c_perm = CheckResult("thm-4.3-permutation", tol)
    c_45 = CheckResult("cor-4.5", tol)
    c_46 = CheckResult("thm-4.6", tol)
    c_47 = CheckResult("thm-4.7", tol)
    c_48 = CheckResult("cor-4.8", tol)
    c_var = CheckResult("aa2-variance", tol)
    c_27 = CheckResult("lemma-2.7", tol)

    for k in range(1, 21):
        c_zsum.add(abs(float(sum(Fraction(1, z_beta(b)) for b in partitions_of(k)) - 1)))

    for _ in range(trials):
        A = random_matrix(n, rng)
        ks = _ks(n, 5)
        k = int(rng.choice(ks))
        newton = normalized_sym_trace(A, k).value
        c_trace.add(rel_err(normalized_sym_trace(A, k, method="partition").value, newton))
        c_brute.add(rel_err(sym_trace_brute(A, k).value, newton))

        p = float(rng.choice([1.0, 1.5, 2.0, 3.0]))
        k4 = int(rng.choice([k for k in ks if k <= 4]))
        c_exp.add(rel_err(schatten_expansion(A, k4, p), dim_sym(n, k4) * n_k_p(A, k4, p) ** (p * k4)))
        left = dim_sym(n, k4) ** (1.0 / (k4 * p)) * n_k_p(A, k4, p)
        c_26.add(rel_err(left, sym_power_schatten(A, k4, p) ** (1.0 / k4)))

        q = int(rng.integers(1, 5))
        G = A.conj().T @ A
        c_qnorm.add(rel_err(n_prime(A, q).value, n_k(G, q) ** 0.5))

        quad = [random_matrix(n, rng) for _ in range(4)]
        closed = mixed_moment_closed(quad).value
        c_43.add(rel_err(closed, mixed_moment_general(quad).value))
        c_perm.add(max(rel_err(v, closed) for v in permuted_moments(quad)))

        H = random_hermitian(n, rng)
        c_45.add(rel_err(phi4(H), phi_closed(H, 4, "hermitian-even")))

        c_46.add(rel_err(n_psi(A) ** 4, n_psi_definition(A)))
        st = moment_stats(A, 1.0)
        c_47.add(rel_err(n_psi0(A) ** 4, st["combined"]))
        alpha = float(rng.uniform(0, 3))
        c_48.add(rel_err(combined_closed(A, alpha), moment_stats(A, alpha)["combined"]))
        c_var.add(abs(st["variance_identity_residual"]) / max(1.0, st["frobenius_sq"]))

        z = rng.normal(size=n) + 1j * rng.normal(size=n)
        kz = int(rng.integers(1, 5))
        lhs = dim_sym(n, kz) * normalized_sym_trace(np.outer(z, z.conj()), kz).real
        c_27.add(rel_err(lhs, float(np.linalg.norm(z)) ** (2 * kz)))

    return [c_trace, c_brute, c_zsum, c_exp, c_26, c_qnorm, c_43, c_perm, c_45, c_46, c_47, c_48, c_var, c_27]


def norm_axioms(n: int, trials: int, seed: int, tol: float, mc_samples: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    ui = {
        "n_k": lambda A, k, p: n_k(A, k),
        "n_k_p": lambda A, k, p: n_k_p(A, k, p),
        "n_prime": lambda A, k, p: n_prime(A, k).value,
    }
    wui = {
        "phi2": phi2,
        "phi4": phi4,
        "n_psi": n_psi,
        "n_psi0": n_psi0,
    }
    checks = {}
    for name in list(ui) + list(wui):
        for prop in ("triangle", "homogeneity", "invariance"):
            checks[(name, prop)] = CheckResult(f"{prop}-{name}", tol)

    for t in range(trials):
        A, B = random_matrix(n, rng), random_matrix(n, rng)
        c = complex(rng.normal(), rng.normal())
        U = random_unitary(n, int(rng.integers(2**63)))
        V = random_unitary(n, int(rng.integers(2**63)))
        k = int(rng.integers(1, 6))
        p = float(rng.choice([1.0, 1.5, 2.0, 3.0]))
        fns = {name: (lambda M, f=f: f(M, k, p)) for name, f in ui.items()}
        fns.update(wui)
        for name, f in fns.items():
            fa, fb, fab = f(A), f(B), f(A + B)
            checks[(name, "triangle")].add(max(0.0, fab - fa - fb) / max(1.0, fa + fb))
            checks[(name, "homogeneity")].add(rel_err(f(c * A), abs(c) * fa))
            moved = U @ A @ V if name in ui else U @ A @ U.conj().T
            checks[(name, "invariance")].add(rel_err(f(moved), fa))
    return list(checks.values())


def gauge_suite(n: int, trials: int, seed: int, tol: float, mc_samples: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    names = ("n1", "n2", "n4", "n5", "mccarthy")
    checks = {name: CheckResult(name, tol) for name in names}
    schur = CheckResult("schur-2q", tol)

    # the symmetrized measure already averages over n! permutations per draw
    base = max(1000, mc_samples // math.factorial(n)) if n <= MAX_SYMMETRIZE_N else mc_samples
    for t in range(trials):
        cfg = MCConfig(base, seed=int(rng.integers(2**63)))
        x = rng.normal(size=n) * rng.exponential()
        y = rng.normal(size=n) * rng.exponential()
        q = float(rng.uniform(1, 4))
        p = 1 + float(rng.uniform(0, 1)) * (q - 1)
        p_small = float(rng.uniform(0.05, 1))
        big = inequality_suite(np.abs(x), np.abs(y), q, p, cfg)
        signed = inequality_suite(x, y, q, p, cfg)
        small = inequality_suite(x, y, q, p_small, cfg)

        yy = np.abs(y)
        D = np.abs(rng.dirichlet(np.ones(n), size=n))
        D = _sinkhorn(D)
        xx = float(rng.uniform(0.2, 1.0)) * (D @ yy)
        major = inequality_suite(xx, yy, q, p, cfg)

        for res in (big, signed, small, major):
            for name in names:
                e = res[name]
                if e["applicable"]:
                    checks[name].add(_violation(e, tol))
        schur_res = schur_pair_check(rng.normal(size=n), float(rng.choice([1, 2, 3, q])), int(rng.integers(2**63)), cfg)
        schur.add(_violation(schur_res, tol))

    for c in checks.values():
        if c.count == 0:
            c.notes.append("no applicable instance")
    return [checks[name] for name in names] + [schur]


def _violation(entry: dict, tol: float) -> float:
    # amount by which the slack falls below its noise band (zero band for exact evaluations)
    band = entry["band"] if entry["band"] > SLACK_TOL else 0.0
    return max(0.0, -entry["slack"] - band)


def _sinkhorn(M: np.ndarray, sweeps: int = 200) -> np.ndarray:
    for _ in range(sweeps):
        M = M / M.sum(axis=1, keepdims=True)
        M = M / M.sum(axis=0, keepdims=True)
    return M


def mc_oracle(n: int, trials: int, seed: int, tol: float, mc_samples: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    c_11 = CheckResult("mc-eq-1.1", MC_SIGMAS)
    c_43 = CheckResult("mc-thm-4.3", MC_SIGMAS)
    c_27 = CheckResult("mc-lemma-2.7", MC_SIGMAS)
    c_np = CheckResult("mc-n-prime", MC_SIGMAS)
    c_46 = CheckResult("mc-thm-4.6", MC_SIGMAS)
    c_47 = CheckResult("mc-thm-4.7", MC_SIGMAS)
    c_hq = CheckResult("mc-hq-two-point", MC_SIGMAS)

    for _ in range(trials):
        cfg = MCConfig(mc_samples, seed=int(rng.integers(2**63)))
        A = random_matrix(n, rng)
        k = int(rng.integers(1, 5))
        est = mc_moment("numerical-power", (A, k), cfg)
        c_11.add(est.zscore(normalized_sym_trace(A, k).value))

        quad = [random_matrix(n, rng) for _ in range(4)]
        c_43.add(mc_moment("mixed", quad, cfg).zscore(mixed_moment_closed(quad).value))

        z = rng.normal(size=n) + 1j * rng.normal(size=n)
        kz = int(rng.integers(1, 5))
        est = mc_moment("kernel", (z, kz), cfg)
        c_27.add(est.zscore(float(np.linalg.norm(z)) ** (2 * kz) / dim_sym(n, kz)))

        q = int(rng.integers(1, 4))
        est = mc_moment("bochner", (A, q), cfg)
        c_np.add(est.zscore(n_prime(A, q).value ** (2 * q)))

        c_46.add(n_psi_mc(A, cfg).zscore(n_psi(A) ** 4))
        c_47.add(n_psi0_mc(A, cfg).zscore(n_psi0(A) ** 4))

        x2 = rng.uniform(0, 3, size=2)
        qr = float(rng.uniform(1, 4))
        c_hq.add(mc_simplex_power(x2, qr, cfg).zscore(h_q_two_point(x2, qr)))
    return [c_11, c_43, c_27, c_np, c_46, c_47, c_hq]


SUITES = {
    "identities": identities,
    "norm-axioms": norm_axioms,
    "gauge": gauge_suite,
    "mc-oracle": mc_oracle,
}


def run_suite(name: str, n: int, trials: int, seed: int, tol: float = 1e-9, mc_samples: int = 20000) -> list[CheckResult]:
    names = list(SUITES) if name == "all" else [name]
    out: list[CheckResult] = []
    for i, s in enumerate(names):
        out.extend(SUITES[s](n, trials, seed + i, tol, mc_samples))
    return out
