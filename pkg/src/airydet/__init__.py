"""Fredholm determinants of the Airy kernel with a scaled symbol, their
large-alpha asymptotics, and the matching GUE edge linear statistics."""

from ._backend import NAME as BACKEND
from .cli_io import ExperimentConfig, ResultRecord, emit, load_record, run_command
from .detasym import (
    AsymptoticConstants,
    SingularOperatorError,
    airy_log_det,
    asymptotic_constants,
    compute_c1,
    compute_c2,
    edge_mean,
    edge_variance,
    log_det,
    wiener_hopf_c2_check,
)
from .kernels import airy_kernel, airy_kernel_matrix, hermite_kernel, hermite_kernel_matrix
from .operator_disc import QuadratureGrid, build_grid, discretize_airy_operator, discretize_wiener_hopf
from .rmt_mc import EdgeSample, McSummary, char_function_det, edge_rescale, linear_statistic, run_mc, sample_gue_spectrum
from .special_fn import airy_ai, airy_ai_prime, airy_pair, hermite_wavefunctions
from .symbols import SymbolFunction, canonical_symbols, make_symbol, parse_symbol

__version__ = "0.1.0"
