"""Norms and sphere moments built from normalized traces of symmetric tensor powers."""
from .errors import *  # noqa: F401,F403
from .gauge import GaugeValue, h_q, h_q_two_point, inequality_suite, majorizes, phi_gauge, schur_pair_check, weak_majorizes
from .linalg_core import as_matrix, hermitian_eigenvalues, power_traces, random_unitary, schatten_norm, singular_values
from .montecarlo import MCConfig, MCEstimate, mc_moment, mc_simplex_power, sample_sphere
from .partitions import Partition, dim_sym, partitions_by_length, partitions_of, z_beta
from .polarization import PolarizationJob, mixed_moment_general, phi_2k_general
from .sym_trace import SymTraceResult, normalized_sym_trace, sym_power_matrix, sym_trace_brute, sym_trace_eigen
from .ui_norms import NormOrder, NormValue, n_k, n_k_p, n_prime, schatten_expansion, sym_power_schatten
from .wui_moments import (
    MomentValue,
    bound_report,
    combined_closed,
    mixed_moment_closed,
    moment_stats,
    n_psi,
    n_psi0,
    phi2,
    phi4,
    phi_closed,
    weighted_l2_moment,
)

__version__ = "0.1.0"
