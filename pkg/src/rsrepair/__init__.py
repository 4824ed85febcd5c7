"""Repair bandwidth and disk-read I/O of linear repair schemes for full-length Reed-Solomon codes."""

from .codes import ErasedCodeword, LinearCode, RsCode, dual_code, erase, is_mds, min_distance, rs_encode
from .constructions import (
    SchemeCollection, average_io, build_collection_iii, build_construction_iii, build_naive, is_symmetric,
    optimal_local_basis,
)
from .gf import (
    Field, SubfieldBasis, build_field, default_basis, dual_basis, subspace_polynomial, trace, trace_recover,
    vector_rep, w_vector,
)
from .repair import (
    CostReport, RepairScheme, bandwidth, column_space, execute_repair, io_cost, is_rotational, scheme_from_words,
    scheme_new, translate_scheme,
)
from .subspaces import Subspace, basis_shift, enumerate_subspaces, intersect, kernel_quotient, scale, span

__version__ = "0.1.0"
