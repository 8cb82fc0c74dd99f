"""Idempotent operators on finite-dimensional complex inner-product spaces."""

from .errors import IdemlabError, IllConditionedWarning
from .essential import converse_checks, example54, nearest_exact_idempotent, pair_case_analysis
from .idempotent import (
    Idempotent,
    ando_form,
    composition_operator,
    invariance_equiv,
    lat_transport,
    nullstar_invariant_check,
    random_idempotent,
    reducing_check,
    validate,
    witness_operator,
)
from .numkernel import eig, hausdorff, solve, svd_rank
from .pairs import common_invariant_qnil, extract_invariant_for_A, make_pair, nrr_pair, split_common_subspace
from .spectral import (
    Contour,
    cluster_contour,
    commutator_identity,
    is_quasinilpotent_desk,
    product_difference_identity,
    riesz_projection,
)
from .subspace import Subspace, gap, intersect, is_invariant, leq, oblique_decompose, projector

__version__ = "0.1.0"
