"""Quadratic-ring probable-prime testing with deterministic parameters.

Library surface:

  * arith: Jacobi symbol, integer sqrt, modular power, sieve, strong-PRP oracle
  * ring: arithmetic in Z_n[x]/(x**2 - a*x + 1)
  * frobenius: the ring tests, minimal-a search, full pipeline
  * equivalence: matrix / Euler / z-chain reformulations for cross-checking
  * scan: oracle-checked range scans and the free-ranging-a search
  * bench: selfridge cost accounting
"""

from .arith import (
    integer_sqrt,
    is_perfect_square,
    jacobi,
    mod_inverse,
    mod_pow,
    oracle_is_prime,
    sieve_bitmap,
    sieve_primes,
)
from .counters import OpCounters
from .equivalence import (
    CrossCheckReport,
    EquivParams,
    Matrix2,
    compute_pq,
    cross_validate,
    euler_qprp,
    mat_pow,
    matrix_pow_test,
    z_lucas_test,
)
from .errors import FactorFound, ParameterError, SearchExhausted
from .frobenius import (
    ParamSearchResult,
    PipelineConfig,
    TestReport,
    Verdict,
    candidate_a_sequence,
    candidate_prefix,
    fermat_prp,
    find_min_a,
    general_frobenius,
    is_probable_prime,
    lucas_chain,
    selfridge2,
    squarefree_kernel,
)
from .ring import (
    RingElement,
    TestParams,
    ring_mul_base,
    ring_pow,
    ring_pow_linear_oracle,
    ring_square,
)
from .scan import FreeASummary, ScanRecord, ScanSummary, free_a_scan, scan_range

__all__ = [
    "CrossCheckReport",
    "EquivParams",
    "FactorFound",
    "FreeASummary",
    "Matrix2",
    "OpCounters",
    "ParamSearchResult",
    "ParameterError",
    "PipelineConfig",
    "RingElement",
    "ScanRecord",
    "ScanSummary",
    "SearchExhausted",
    "TestParams",
    "TestReport",
    "Verdict",
    "candidate_a_sequence",
    "candidate_prefix",
    "compute_pq",
    "cross_validate",
    "euler_qprp",
    "fermat_prp",
    "find_min_a",
    "free_a_scan",
    "general_frobenius",
    "integer_sqrt",
    "is_perfect_square",
    "is_probable_prime",
    "jacobi",
    "lucas_chain",
    "mat_pow",
    "matrix_pow_test",
    "mod_inverse",
    "mod_pow",
    "oracle_is_prime",
    "ring_mul_base",
    "ring_pow",
    "ring_pow_linear_oracle",
    "ring_square",
    "scan_range",
    "selfridge2",
    "sieve_bitmap",
    "sieve_primes",
    "squarefree_kernel",
    "z_lucas_test",
]
